#include "gqm/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gqm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Strides of each subsystem in the flattened index (subsystem 0 slowest).
std::vector<long> strides_of(const DimVector& dims) {
  std::vector<long> s(static_cast<size_t>(dims.size()));
  long acc = 1;
  for (int i = dims.size() - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = acc;
    acc *= dims[i];
  }
  return s;
}

void validate_keep(const DimVector& dims, const std::vector<int>& keep) {
  check(!keep.empty(), "keep list is empty");
  for (size_t j = 0; j < keep.size(); ++j) {
    check(keep[j] >= 0 && keep[j] < dims.size(), "keep index out of range");
    if (j > 0) check(keep[j] > keep[j - 1], "keep indices must be strictly increasing");
  }
}

}  // namespace

std::vector<long> subsystem_offsets(const DimVector& dims, const std::vector<int>& subs) {
  const auto strides = strides_of(dims);
  long n = 1;
  for (int s : subs) n *= dims[s];
  std::vector<long> out(static_cast<size_t>(n), 0);
  long block = n;
  for (int sub : subs) {
    const int d = dims[sub];
    block /= d;
    for (long idx = 0; idx < n; ++idx) {
      const long digit = (idx / block) % d;
      out[static_cast<size_t>(idx)] += digit * strides[static_cast<size_t>(sub)];
    }
  }
  return out;
}

std::vector<int> complement_subsystems(const DimVector& dims, const std::vector<int>& subs) {
  std::vector<bool> kept(static_cast<size_t>(dims.size()), false);
  for (int s : subs) kept[static_cast<size_t>(s)] = true;
  std::vector<int> rest;
  for (int i = 0; i < dims.size(); ++i)
    if (!kept[static_cast<size_t>(i)]) rest.push_back(i);
  return rest;
}

DimVector::DimVector(std::vector<int> d) : dims_(std::move(d)) {
  check(!dims_.empty(), "DimVector: no subsystems");
  total_ = 1;
  for (int x : dims_) {
    check(x >= 2, "DimVector: every local dimension must be >= 2");
    total_ *= x;
  }
}

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

PureState::PureState(DimVector d, std::vector<cplx> a) : dims(std::move(d)), amp(std::move(a)) {
  check(static_cast<long>(amp.size()) == dims.total(), "PureState: amplitude length mismatch");
  double n2 = 0;
  for (const cplx& c : amp) n2 += std::norm(c);
  check(std::abs(n2 - 1.0) <= 1e-12, "PureState: not normalized");
}

DensityMatrix::DensityMatrix(DimVector d, CMat mat) : dims(std::move(d)), m(std::move(mat)) {
  check(m.rows == m.cols, "DensityMatrix: not square");
  check(m.rows == dims.total(), "DensityMatrix: size does not match dims");
  double tr = 0;
  for (int i = 0; i < m.rows; ++i) {
    tr += m(i, i).real();
    check(std::abs(m(i, i).imag()) <= 1e-12, "DensityMatrix: diagonal not real");
    for (int j = i + 1; j < m.cols; ++j)
      check(std::abs(m(i, j) - std::conj(m(j, i))) <= 1e-12, "DensityMatrix: not Hermitian");
  }
  check(std::abs(tr - 1.0) <= 1e-12, "DensityMatrix: trace != 1");
}

double Rng::uniform() {
  // 53-bit mantissa draw mapped to (0, 1]: never returns 0, so log() is safe.
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
}

double Rng::uniform(double a, double b) {
  const double u = static_cast<double>(gen_() >> 11) * 0x1p-53;  // [0, 1)
  return a + (b - a) * u;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

uint64_t mix_seed(uint64_t master, uint64_t task) {
  uint64_t z = master + 0x9e3779b97f4a7c15ULL * (task + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PureState tensor_product(const std::vector<PureState>& factors) {
  check(!factors.empty(), "tensor_product: no factors");
  std::vector<int> dims;
  std::vector<cplx> amp{1.0};
  for (const PureState& f : factors) {
    for (int d : f.dims.dims()) dims.push_back(d);
    std::vector<cplx> next(amp.size() * f.amp.size());
    for (size_t i = 0; i < amp.size(); ++i)
      for (size_t j = 0; j < f.amp.size(); ++j) next[i * f.amp.size() + j] = amp[i] * f.amp[j];
    amp = std::move(next);
  }
  return PureState(DimVector(dims), std::move(amp));
}

DensityMatrix projector(const PureState& psi) {
  const long n = psi.dims.total();
  CMat m(static_cast<int>(n), static_cast<int>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      m(static_cast<int>(i), static_cast<int>(j)) =
          psi.amp[static_cast<size_t>(i)] * std::conj(psi.amp[static_cast<size_t>(j)]);
  return DensityMatrix(psi.dims, std::move(m));
}

DensityMatrix reduced_state(const PureState& psi, const std::vector<int>& keep) {
  validate_keep(psi.dims, keep);
  const auto rest = complement_subsystems(psi.dims, keep);
  const auto kept_off = subsystem_offsets(psi.dims, keep);
  const auto traced_off = subsystem_offsets(psi.dims, rest);
  const int dk = static_cast<int>(kept_off.size());

  std::vector<int> kdims;
  for (int s : keep) kdims.push_back(psi.dims[s]);
  CMat m(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = i; j < dk; ++j) {
      cplx acc = 0;
      for (long t : traced_off)
        acc += psi.amp[static_cast<size_t>(kept_off[static_cast<size_t>(i)] + t)] *
               std::conj(psi.amp[static_cast<size_t>(kept_off[static_cast<size_t>(j)] + t)]);
      m(i, j) = acc;
      m(j, i) = std::conj(acc);
    }
  return DensityMatrix(DimVector(kdims), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  validate_keep(rho.dims, keep);
  const auto rest = complement_subsystems(rho.dims, keep);
  const auto kept_off = subsystem_offsets(rho.dims, keep);
  const auto traced_off = subsystem_offsets(rho.dims, rest);
  const int dk = static_cast<int>(kept_off.size());

  std::vector<int> kdims;
  for (int s : keep) kdims.push_back(rho.dims[s]);
  CMat m(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      cplx acc = 0;
      for (long t : traced_off)
        acc += rho.m(static_cast<int>(kept_off[static_cast<size_t>(i)] + t),
                     static_cast<int>(kept_off[static_cast<size_t>(j)] + t));
      m(i, j) = acc;
    }
  return DensityMatrix(DimVector(kdims), std::move(m));
}

EigenSystem hermitian_eigensystem(const CMat& h) {
  check(h.rows == h.cols, "hermitian_eigensystem: not square");
  const int n = h.rows;
  check(n >= 1 && n <= 256, "hermitian_eigensystem: dimension out of range");
  CMat a = h;
  CMat v = CMat::identity(n);

  const auto off_norm = [&]() {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() < 1e-13) break;
    if (sweep == 99) throw std::runtime_error("hermitian_eigensystem: no convergence");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double gm = std::abs(g);
        if (gm < 1e-300) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        // Rotation J: J[p][p]=c, J[p][q]=s, J[q][p]=-conj(s), J[q][q]=c
        // with s = e^{i phi} sin(theta) chosen to zero (J^† A J)[p][q].
        const double tau = (beta - alpha) / (2.0 * gm);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (g / gm) * (t * c);
        for (int i = 0; i < n; ++i) {  // A <- A J (columns p, q)
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - std::conj(s) * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {  // A <- J^† A (rows p, q)
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = std::conj(s) * apj + c * aqj;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int i = 0; i < n; ++i) {  // V <- V J
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - std::conj(s) * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem es;
  es.values.resize(static_cast<size_t>(n));
  es.vectors = CMat(n, n);
  for (int k = 0; k < n; ++k) {
    es.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[static_cast<size_t>(k)]);
  }
  return es;
}

Spectrum hermitian_spectrum(const DensityMatrix& rho) {
  EigenSystem es = hermitian_eigensystem(rho.m);
  Spectrum sp;
  sp.values.reserve(es.values.size());
  for (double lam : es.values) {
    if (lam < -1e-10)
      throw std::runtime_error("hermitian_spectrum: eigenvalue below -1e-10, state not PSD");
    sp.values.push_back(std::min(std::max(lam, 0.0), 1.0));
  }
  return sp;
}

double purity(const DensityMatrix& rho) {
  double s = 0;
  for (const cplx& c : rho.m.a) s += std::norm(c);
  return s;
}

PureState haar_random_pure(const DimVector& dims, uint64_t seed) {
  Rng rng(seed);
  const long n = dims.total();
  std::vector<cplx> amp(static_cast<size_t>(n));
  double n2 = 0;
  for (auto& c : amp) {
    c = rng.complex_normal();
    n2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : amp) c *= inv;
  return PureState(dims, std::move(amp));
}

DensityMatrix random_mixed(const DimVector& dims, int rank, uint64_t seed) {
  check(rank >= 1 && rank <= dims.total(), "random_mixed: rank out of range");
  if (rank == 1) return projector(haar_random_pure(dims, seed));
  std::vector<int> ext = dims.dims();
  ext.push_back(rank);
  const PureState psi = haar_random_pure(DimVector(ext), seed);
  std::vector<int> keep(static_cast<size_t>(dims.size()));
  std::iota(keep.begin(), keep.end(), 0);
  DensityMatrix rho = reduced_state(psi, keep);
  return rho;
}

CMat haar_random_unitary(int n, Rng& rng) {
  // QR of a Ginibre matrix via modified Gram-Schmidt.  MGS produces the
  // unique R with positive diagonal, so Q is Haar-distributed as is.
  CMat g(n, n);
  for (auto& c : g.a) c = rng.complex_normal();
  CMat q(n, n);
  std::vector<cplx> col(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = g(i, k);
    for (int j = 0; j < k; ++j) {
      cplx dot = 0;
      for (int i = 0; i < n; ++i) dot += std::conj(q(i, j)) * col[static_cast<size_t>(i)];
      for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] -= dot * q(i, j);
    }
    double nrm2 = 0;
    for (const cplx& c : col) nrm2 += std::norm(c);
    const double nrm = std::sqrt(nrm2);
    check(nrm > 1e-12, "haar_random_unitary: degenerate draw");
    for (int i = 0; i < n; ++i) q(i, k) = col[static_cast<size_t>(i)] / nrm;
  }
  return q;
}

PureState apply_local_unitary(const PureState& psi, int subsystem, const CMat& u) {
  check(subsystem >= 0 && subsystem < psi.dims.size(), "apply_local_unitary: bad subsystem");
  const int d = psi.dims[subsystem];
  check(u.rows == d && u.cols == d, "apply_local_unitary: unitary size mismatch");
  const auto rest = complement_subsystems(psi.dims, {subsystem});
  const auto sub_off = subsystem_offsets(psi.dims, {subsystem});
  const auto rest_off = subsystem_offsets(psi.dims, rest);
  std::vector<cplx> out(psi.amp.size(), 0.0);
  for (long r : rest_off) {
    for (int i = 0; i < d; ++i) {
      cplx acc = 0;
      for (int j = 0; j < d; ++j)
        acc += u(i, j) * psi.amp[static_cast<size_t>(sub_off[static_cast<size_t>(j)] + r)];
      out[static_cast<size_t>(sub_off[static_cast<size_t>(i)] + r)] = acc;
    }
  }
  return PureState(psi.dims, std::move(out));
}

}  // namespace gqm
