#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gqm/catalog.hpp"
#include "gqm/measures.hpp"
#include "gqm/qcore.hpp"

using namespace gqm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("w_state structure and exact marginals") {
  auto w8 = w_state(8);
  CHECK(w8.dims.total() == 256);
  // whole-split squared concurrence: 4(n-1)/n^2
  const double c2 = concurrence_pure(w8, {{0}});
  CHECK(std::abs(c2 * c2 - 0.4375) < 1e-12);
  // pairwise marginal concurrence: 2/n
  CHECK(std::abs(wootters_concurrence(reduced_state(w8, {0, 1})) - 0.25) < 1e-9);
  // marginal keeping qubit 0 and the last three: equal mixture of a smaller
  // single-excitation state and the vacuum -> eigenvalues {1/2, 1/2}
  auto block = reduced_state(w8, {0, 5, 6, 7});
  auto sp = hermitian_spectrum(block).values;
  CHECK(std::abs(sp[0] - 0.5) < 1e-12);
  CHECK(std::abs(sp[1] - 0.5) < 1e-12);
  for (size_t i = 2; i < sp.size(); ++i) CHECK(sp[i] < 1e-12);
  CHECK_THROWS_AS(w_state(2), std::invalid_argument);
}

TEST_CASE("ghz_state: maximal whole-split concurrence, separable pairs") {
  auto g = ghz_state(4);
  CHECK(std::abs(concurrence_pure(g, {{0}}) - 1.0) < 1e-14);
  CHECK(wootters_concurrence(reduced_state(g, {0, 1})) < 1e-9);
}

TEST_CASE("antisymmetric state: maximally mixed marginals and frozen measures") {
  auto psi = antisymmetric_333();
  for (int site : {0, 1, 2}) {
    auto rho = reduced_state(psi, {site});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(rho.m(i, j) - (i == j ? cplx(1.0 / 3.0) : cplx(0.0))) < 1e-14);
  }
  const double c = concurrence_pure(psi, {{0}});
  CHECK(std::abs(c * c - 4.0 / 3.0) < 1e-12);
  // frozen q-measure values of the whole split
  const double g11 = gq_concurrence_pure(psi, {{0}}, 1.1);
  const double g15 = gq_concurrence_pure(psi, {{0}}, 1.5);
  const double g20 = gq_concurrence_pure(psi, {{0}}, 2.0);
  CHECK(std::abs(g11 * g11 - 0.016334401368251275) < 1e-12);
  CHECK(std::abs(g15 * g15 - 0.31718121783282477) < 1e-12);
  CHECK(std::abs(g20 * g20 - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("family_422 amplitudes and ensemble-member invariance") {
  auto psi = family_422(kPi / 3.0);
  const double a = std::sin(kPi / 3.0), b = std::cos(kPi / 3.0);
  CHECK(std::abs(psi.amp[0] - cplx(a / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(psi.amp[6] - cplx(b / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(psi.amp[9] - cplx(a / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(psi.amp[15] - cplx(b / std::sqrt(2.0))) < 1e-15);

  // rho_AB is an equal mixture of phi1 = a|00> + b|11> and phi2 = a|20> + b|31>
  // on 4x2; any superposition cos(x) phi1 + e^{-i g} sin(x) phi2 has the same
  // qubit marginal diag(a^2, b^2) -> every decomposition member shares one
  // concurrence value 2ab.
  Rng rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform(0.0, kPi / 2.0);
    const double gph = rng.uniform(0.0, 2.0 * kPi);
    const cplx e = std::exp(cplx(0.0, -gph));
    std::vector<cplx> v(8, 0.0);
    v[0] = std::cos(x) * a;            // |0,0>
    v[3] = std::cos(x) * b;            // |1,1>
    v[4] = e * std::sin(x) * a;        // |2,0>
    v[7] = e * std::sin(x) * b;        // |3,1>
    PureState member(DimVector{4, 2}, std::move(v));
    auto rb = reduced_state(member, {1});
    CHECK(std::abs(rb.m(0, 0) - cplx(a * a)) < 1e-10);
    CHECK(std::abs(rb.m(1, 1) - cplx(b * b)) < 1e-10);
    CHECK(std::abs(rb.m(0, 1)) < 1e-10);
  }
  CHECK_THROWS_AS(family_422(-0.1), std::invalid_argument);
}

TEST_CASE("w_closed_c2 matches direct evaluation") {
  auto c2 = w_closed_c2(8, 3);
  CHECK(c2.whole == 0.4375);
  CHECK(c2.pairwise == 0.0625);
  CHECK(c2.block == 0.375);
  auto c28 = w_closed_c2(8, 8);
  CHECK(c28.block == 0.0625);  // k = n: block degenerates to one pair
  CHECK_THROWS_AS(w_closed_c2(8, 2), std::invalid_argument);
  CHECK_THROWS_AS(w_closed_c2(8, 9), std::invalid_argument);
}

TEST_CASE("tabulated residuals reproduce the reference table") {
  // 6 x 5 reference values (rows k = 3..8, cols q = 1.3..1.7) for n = 8.
  const double table[6][5] = {
      {0.0031, 0.0048, 0.0063, 0.0070, 0.0069},
      {0.0076, 0.0128, 0.0181, 0.0230, 0.0270},
      {0.0119, 0.0203, 0.0295, 0.0385, 0.0466},
      {0.0158, 0.0274, 0.0402, 0.0532, 0.0656},
      {0.0193, 0.0337, 0.0501, 0.0671, 0.0837},
      {0.0222, 0.0391, 0.0587, 0.0796, 0.1005}};
  const double qs[5] = {1.3, 1.4, 1.5, 1.6, 1.7};
  double worst = 0.0;
  for (int k = 3; k <= 8; ++k)
    for (int j = 0; j < 5; ++j)
      worst = std::max(worst, std::abs(w_table_residual(8, k, qs[j]) - table[k - 3][j]));
  CHECK(worst < 1.5e-4);
  // frozen spot values
  CHECK(std::abs(w_table_residual(8, 3, 1.3) - 0.003069993752325348) < 1e-14);
  CHECK(std::abs(w_table_residual(8, 8, 1.7) - 0.10046650842223537) < 1e-14);
}

TEST_CASE("l_q frozen values and the q0 root") {
  CHECK(std::abs(l_q_bound(1.05) - 0.0005741838824966177) < 1e-15);
  CHECK(std::abs(l_q_bound(1.1) - 0.00167110442113849) < 1e-15);
  CHECK(std::abs(l_q_bound(1.2) - 0.0005918344566244599) < 1e-15);
  CHECK(std::abs(l_q_bound(1.5) - (-0.07184220567397853)) < 1e-15);
  CHECK(std::abs(l_q_bound(2.0) + 1.0 / 3.0) < 1e-15);

  const double q0 = q0_root(1e-12);
  CHECK(q0 > 1.20);
  CHECK(q0 < 1.22);
  CHECK(std::abs(q0 - 1.2099384597224074) < 1e-10);
  CHECK(std::abs(l_q_bound(q0)) < 1e-10);
  // bisection halves the bracket: looser tolerances stay within themselves
  CHECK(std::abs(q0_root(1e-6) - q0) < 1e-6);
  CHECK(std::abs(q0_root(5e-7) - q0) < 5e-7);
  CHECK_THROWS_AS(q0_root(0.0), std::invalid_argument);
}

TEST_CASE("m_and_mq_422 closed forms") {
  // whole-term closed form matches the state itself
  for (int i = 0; i <= 16; ++i) {
    const double th = kPi / 2.0 * i / 16.0;
    const double a2 = std::sin(th) * std::sin(th), b2 = std::cos(th) * std::cos(th);
    const double direct = concurrence_pure(family_422(th), {{0}});
    CHECK(std::abs(direct * direct - (2.0 - a2 * a2 - b2 * b2)) < 1e-12);
    CHECK(std::abs(m_and_mq_422(th, 1.2).m - (-2.0 * a2 * b2)) < 1e-15);
    // q = 1 collapses the q-measure residual
    CHECK(std::abs(m_and_mq_422(th, 1.0).m_q) < 1e-12);
  }
  // frozen values
  CHECK(std::abs(m_and_mq_422(kPi / 4.0, 1.25).m_q - 0.0345826327061495) < 1e-12);
  CHECK(std::abs(m_and_mq_422(kPi / 3.0, 1.1).m_q - 0.007994872354952904) < 1e-12);
  CHECK(std::abs(m_and_mq_422(kPi / 4.0, 1.25).m - (-0.5)) < 1e-15);
  // at q = 2 ... 1.5 is the cap, so check the half-relation at the q=2 brackets
  // via the direct whole term instead: M_q(theta, q->?) uses its own scale.
  CHECK_THROWS_AS(m_and_mq_422(0.3, 1.6), std::invalid_argument);
  CHECK_THROWS_AS(m_and_mq_422(2.0, 1.2), std::invalid_argument);
}

TEST_CASE("q-measure whole term of family_422 matches its closed form") {
  for (double th : {0.2, kPi / 4.0, 1.3}) {
    auto psi = family_422(th);
    const double a2 = std::sin(th) * std::sin(th), b2 = std::cos(th) * std::cos(th);
    for (double q : {1.1, 1.25, 1.5}) {
      const double direct = gq_concurrence_pure(psi, {{0}}, q);
      const double scale = std::pow(2.0, q - 1.0);
      const double closed =
          std::pow(1.0 - std::pow(a2, q) / scale - std::pow(b2, q) / scale, 1.0 / q);
      CHECK(std::abs(direct - closed) < 1e-12);
    }
  }
}
