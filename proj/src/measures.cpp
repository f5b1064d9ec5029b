#include "gqm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gqm {

namespace {

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Reduce onto whichever side of the bipartition is smaller; the nonzero
// spectrum (hence every measure below) is the same on both sides.
DensityMatrix smaller_side_reduction(const PureState& psi, const Bipartition& split) {
  check(!split.side_a.empty(), "Bipartition: side A is empty");
  std::vector<bool> in_a(static_cast<size_t>(psi.dims.size()), false);
  for (size_t j = 0; j < split.side_a.size(); ++j) {
    const int s = split.side_a[j];
    check(s >= 0 && s < psi.dims.size(), "Bipartition: index out of range");
    if (j > 0) check(s > split.side_a[j - 1], "Bipartition: indices must be strictly increasing");
    in_a[static_cast<size_t>(s)] = true;
  }
  std::vector<int> side_b;
  long da = 1, db = 1;
  for (int i = 0; i < psi.dims.size(); ++i) {
    if (in_a[static_cast<size_t>(i)]) {
      da *= psi.dims[i];
    } else {
      side_b.push_back(i);
      db *= psi.dims[i];
    }
  }
  check(!side_b.empty(), "Bipartition: side B is empty");
  return reduced_state(psi, da <= db ? split.side_a : side_b);
}

}  // namespace

void validate_q(double q) {
  if (!(q > 1.0 && q <= 2.0)) throw std::invalid_argument("q must lie in (1, 2]");
}

double gq_max(double q) {
  validate_q(q);
  return std::pow(1.0 - std::pow(2.0, 1.0 - q), 1.0 / q);
}

double h_q(double t, double q) {
  validate_q(q);
  check(t >= -1e-12 && t <= 1.0 + 1e-12, "h_q: argument outside [0, 1]");
  t = std::min(std::max(t, 0.0), 1.0);
  if (t == 0.0) return 0.0;
  const double s = std::sqrt(1.0 - t);
  const double bracket =
      std::max(0.0, 1.0 - std::pow((1.0 + s) / 2.0, q) - std::pow((1.0 - s) / 2.0, q));
  return std::pow(bracket, 1.0 / q);
}

double concurrence_pure(const PureState& psi, const Bipartition& split) {
  const double p = purity(smaller_side_reduction(psi, split));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

double gq_concurrence_pure(const PureState& psi, const Bipartition& split, double q) {
  validate_q(q);
  const Spectrum sp = hermitian_spectrum(smaller_side_reduction(psi, split));
  double traceq = 0;
  for (double lam : sp.values)
    if (lam > 0) traceq += std::pow(lam, q);
  return std::pow(std::max(0.0, 1.0 - traceq), 1.0 / q);
}

double wootters_concurrence(const DensityMatrix& rho) {
  check(rho.dims.size() == 2 && rho.dims[0] == 2 && rho.dims[1] == 2,
        "wootters_concurrence: state must be two qubits");

  // Spin-flipped state: rho~ = (sy(x)sy) rho* (sy(x)sy); sy(x)sy is the
  // antidiagonal (-1, 1, 1, -1), so entries permute with signs.
  const double y[4] = {-1.0, 1.0, 1.0, -1.0};
  CMat flip(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) flip(i, j) = y[i] * y[j] * std::conj(rho.m(3 - i, 3 - j));

  // sqrt(rho) from the eigensystem, then the Hermitian product
  // R = sqrt(rho) rho~ sqrt(rho), which shares its spectrum with rho rho~.
  EigenSystem es = hermitian_eigensystem(rho.m);
  CMat root(4, 4);
  for (int k = 0; k < 4; ++k) {
    double lam = es.values[static_cast<size_t>(k)];
    if (lam < -1e-10) throw std::runtime_error("wootters_concurrence: state not PSD");
    lam = std::sqrt(std::max(lam, 0.0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        root(i, j) += lam * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }

  const auto mul = [](const CMat& a, const CMat& b) {
    CMat c(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const cplx aik = a(i, k);
        for (int j = 0; j < 4; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  };
  CMat r = mul(mul(root, flip), root);
  for (int i = 0; i < 4; ++i)  // symmetrize away rounding
    for (int j = i; j < 4; ++j) {
      const cplx avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }

  EigenSystem rs = hermitian_eigensystem(r);
  double lam[4];
  for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, rs.values[static_cast<size_t>(k)]));
  std::sort(lam, lam + 4, std::greater<double>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double gq_concurrence_2xd_mixed(const DensityMatrix& rho, double q, double concurrence_value) {
  validate_q(q);
  check(rho.dims.size() == 2 && rho.dims[0] == 2, "gq_concurrence_2xd_mixed: state must be 2(x)d");
  check(concurrence_value >= -1e-12 && concurrence_value <= 1.0 + 1e-12,
        "gq_concurrence_2xd_mixed: concurrence outside [0, 1]");
  const double c = std::min(std::max(concurrence_value, 0.0), 1.0);
  return h_q(c * c, q);
}

}  // namespace gqm
