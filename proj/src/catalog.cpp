#include "gqm/catalog.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gqm {

namespace {

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

PureState w_state(int n) {
  check(n >= 3, "w_state: need at least 3 qubits");
  check(n <= 20, "w_state: dimension too large");
  std::vector<cplx> amp(static_cast<size_t>(1) << n, 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) amp[static_cast<size_t>(1) << (n - 1 - i)] = a;
  return PureState(DimVector(std::vector<int>(static_cast<size_t>(n), 2)), std::move(amp));
}

PureState ghz_state(int n) {
  check(n >= 2, "ghz_state: need at least 2 qubits");
  check(n <= 20, "ghz_state: dimension too large");
  std::vector<cplx> amp(static_cast<size_t>(1) << n, 0.0);
  const double a = 1.0 / std::sqrt(2.0);
  amp.front() = a;
  amp.back() = a;
  return PureState(DimVector(std::vector<int>(static_cast<size_t>(n), 2)), std::move(amp));
}

PureState antisymmetric_333() {
  std::vector<cplx> amp(27, 0.0);
  const double a = 1.0 / std::sqrt(6.0);
  const int eps[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                         {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  for (const auto& e : eps) amp[static_cast<size_t>((e[0] * 3 + e[1]) * 3 + e[2])] = e[3] * a;
  return PureState(DimVector{3, 3, 3}, std::move(amp));
}

PureState family_422(double theta) {
  check(theta >= 0.0 && theta <= 1.5707963267948967, "family_422: theta outside [0, pi/2]");
  const double a = std::sin(theta) / std::sqrt(2.0);
  const double b = std::cos(theta) / std::sqrt(2.0);
  std::vector<cplx> amp(16, 0.0);
  amp[0] = a;   // |0,0,0>
  amp[6] = b;   // |1,1,0>
  amp[9] = a;   // |2,0,1>
  amp[15] = b;  // |3,1,1>
  return PureState(DimVector{4, 2, 2}, std::move(amp));
}

WClosedC2 w_closed_c2(int n, int k) {
  check(n >= 3, "w_closed_c2: n >= 3");
  check(k >= 3 && k <= n, "w_closed_c2: k in [3, n]");
  const double nn = static_cast<double>(n) * n;
  return {4.0 * (n - 1) / nn, 4.0 / nn, 4.0 * (n - k + 1) / nn};
}

WClosedTerms w_closed_terms(int n, int k, double q) {
  const WClosedC2 c2 = w_closed_c2(n, k);
  const double hw = h_q(c2.whole, q), hp = h_q(c2.pairwise, q), hb = h_q(c2.block, q);
  return {hw * hw, hp * hp, hb * hb};
}

double w_table_residual(int n, int k, double q) {
  const WClosedTerms t = w_closed_terms(n, k, q);
  return t.whole - t.pairwise - t.block;
}

double l_q_bound(double q) {
  validate_q(q);
  const double first = std::pow(1.0 - std::pow(1.0 / 3.0, q - 1.0), 2.0 / q);
  const double second = std::pow(1.0 - 2.0 * std::pow(0.5, q), 2.0 / q);
  return first - 2.0 * second;
}

double q0_root(double tolerance) {
  check(tolerance >= 1e-15 && tolerance < 1.0, "q0_root: bad tolerance");
  double lo = 1.05, hi = 2.0;
  double flo = l_q_bound(lo);
  const double fhi = l_q_bound(hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw std::logic_error("q0_root: bracket does not straddle a sign change");
  for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = l_q_bound(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  (void)flo;
  return 0.5 * (lo + hi);
}

MValues m_and_mq_422(double theta, double q) {
  check(theta >= 0.0 && theta <= 1.5707963267948967, "m_and_mq_422: theta outside [0, pi/2]");
  check(q >= 1.0 && q <= 1.5, "m_and_mq_422: q outside [1, 1.5]");
  const double a2 = std::sin(theta) * std::sin(theta);
  const double b2 = std::cos(theta) * std::cos(theta);
  const double p = 2.0 / q;
  const double scale = std::pow(2.0, q - 1.0);
  // Brackets clamp at zero: at q = 1 and at the theta endpoints they are
  // exact zeros up to rounding, and 2/q is not an even integer.
  const double whole = std::pow(std::max(0.0, 1.0 - std::pow(a2, q) / scale - std::pow(b2, q) / scale), p);
  const double ab = std::pow(std::max(0.0, 1.0 - std::pow(a2, q) - std::pow(b2, q)), p);
  const double ac = std::pow(std::max(0.0, 1.0 - std::pow(0.5, q - 1.0)), p);
  return {-2.0 * a2 * b2, whole - ab - ac};
}

}  // namespace gqm
