#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gqm/measures.hpp"
#include "gqm/qcore.hpp"

using namespace gqm;

namespace {

PureState bell() {
  const double a = 1.0 / std::sqrt(2.0);
  return PureState(DimVector{2, 2}, {a, 0.0, 0.0, a});
}

PureState w3() {
  const double a = 1.0 / std::sqrt(3.0);
  std::vector<cplx> amp(8, 0.0);
  amp[1] = amp[2] = amp[4] = a;
  return PureState(DimVector{2, 2, 2}, std::move(amp));
}

DensityMatrix werner(double p) {
  const double a = 1.0 / std::sqrt(2.0);
  PureState phi(DimVector{2, 2}, {a, 0.0, 0.0, a});
  CMat m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      m(i, j) = p * phi.amp[static_cast<size_t>(i)] * std::conj(phi.amp[static_cast<size_t>(j)]);
    m(i, i) += (1.0 - p) * 0.25;
  }
  return DensityMatrix(DimVector{2, 2}, std::move(m));
}

}  // namespace

TEST_CASE("q domain is (1, 2]") {
  CHECK_THROWS_AS(validate_q(1.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_q(2.0001), std::invalid_argument);
  CHECK_THROWS_AS(validate_q(0.5), std::invalid_argument);
  CHECK_NOTHROW(validate_q(1.0000001));
  CHECK_NOTHROW(validate_q(2.0));
}

TEST_CASE("gq_max frozen values") {
  CHECK(std::abs(gq_max(1.1) - 0.08562504583097397) < 1e-15);
  CHECK(std::abs(gq_max(1.5) - 0.4410348192075107) < 1e-15);
  CHECK(std::abs(gq_max(2.0) - 0.7071067811865476) < 1e-15);
}

TEST_CASE("h_q frozen values and endpoints") {
  CHECK(h_q(0.0, 1.3) == 0.0);
  CHECK(std::abs(h_q(1.0, 1.7) - 0.5698668566799046) < 1e-15);
  CHECK(std::abs(h_q(1.0, 1.7) - gq_max(1.7)) < 1e-15);
  CHECK(std::abs(h_q(0.76, 1.5) - 0.3734572573280801) < 1e-15);
  CHECK(std::abs(h_q(0.27, 1.5) - 0.19716102892837922) < 1e-15);
  CHECK(std::abs(h_q(0.5, 1.3) - 0.1750108069002033) < 1e-15);
  CHECK(std::abs(h_q(0.4225, 1.5) - 0.2604865243314734) < 1e-15);
  CHECK(std::abs(h_q(0.25, 2.0) - 0.3535533905932738) < 1e-14);
}

TEST_CASE("h_2 collapses to sqrt(t/2) and h_q is increasing") {
  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    CHECK(std::abs(h_q(t, 2.0) - std::sqrt(t / 2.0)) < 1e-14);
  }
  for (double q : {1.1, 1.41, 1.9}) {
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double v = h_q(i / 50.0, q);
      CHECK(v > prev - 1e-15);
      prev = v;
    }
  }
  CHECK_THROWS_AS(h_q(-0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(h_q(1.1, 1.5), std::invalid_argument);
  CHECK_NOTHROW(h_q(1.0 + 5e-13, 1.5));
}

TEST_CASE("pure concurrence on reference states") {
  CHECK(std::abs(concurrence_pure(bell(), {{0}}) - 1.0) < 1e-14);
  PureState prod(DimVector{2, 2}, {1.0, 0.0, 0.0, 0.0});
  CHECK(concurrence_pure(prod, {{0}}) == 0.0);
  CHECK(std::abs(concurrence_pure(w3(), {{0}}) - std::sqrt(8.0 / 9.0)) < 1e-14);
}

TEST_CASE("bipartition sides are interchangeable and validated") {
  auto psi = haar_random_pure(DimVector{2, 3, 4}, 91);
  const double ca = concurrence_pure(psi, {{0, 2}});
  const double cb = concurrence_pure(psi, {{1}});
  CHECK(std::abs(ca - cb) < 1e-12);
  const double ga = gq_concurrence_pure(psi, {{0, 2}}, 1.4);
  const double gb = gq_concurrence_pure(psi, {{1}}, 1.4);
  CHECK(std::abs(ga - gb) < 1e-12);
  CHECK_THROWS_AS(concurrence_pure(psi, {{0, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_pure(psi, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_pure(psi, {{2, 0}}), std::invalid_argument);
}

TEST_CASE("q-measure of Bell pairs saturates gq_max") {
  for (double q : {1.1, 1.3, 1.5, 1.7, 1.9, 2.0})
    CHECK(std::abs(gq_concurrence_pure(bell(), {{0}}, q) - gq_max(q)) < 1e-14);
}

TEST_CASE("q = 2 reduces to concurrence over sqrt(2)") {
  for (uint64_t s : {1u, 2u, 3u, 4u, 5u}) {
    auto psi = haar_random_pure(DimVector{2, 4}, s);
    const double g2 = gq_concurrence_pure(psi, {{0}}, 2.0);
    const double c = concurrence_pure(psi, {{0}});
    CHECK(std::abs(g2 - c / std::sqrt(2.0)) < 1e-12);
  }
}

TEST_CASE("pure 2(x)d states satisfy the h_q bridge exactly") {
  for (uint64_t s = 0; s < 20; ++s) {
    auto psi = haar_random_pure(DimVector{2, 3}, mix_seed(404, s));
    const double c = concurrence_pure(psi, {{0}});
    for (double q : {1.1, 1.25, 1.5, 1.75, 2.0}) {
      const double direct = gq_concurrence_pure(psi, {{0}}, q);
      CHECK(std::abs(direct - h_q(c * c, q)) < 1e-10);
    }
  }
}

TEST_CASE("two-qubit concurrence: frozen oracles") {
  CHECK(std::abs(wootters_concurrence(projector(bell())) - 1.0) < 1e-10);
  PureState prod(DimVector{2, 2}, {1.0, 0.0, 0.0, 0.0});
  CHECK(wootters_concurrence(projector(prod)) < 1e-10);
  // Isotropic mixtures: C = max(0, (3p-1)/2).
  CHECK(wootters_concurrence(werner(0.3)) == 0.0);
  CHECK(std::abs(wootters_concurrence(werner(0.5)) - 0.25) < 1e-12);
  CHECK(std::abs(wootters_concurrence(werner(0.9)) - 0.85) < 1e-12);
  // Two-qubit marginal of W3: C = 2/3.
  auto pair01 = reduced_state(w3(), {0, 1});
  CHECK(std::abs(wootters_concurrence(pair01) - 2.0 / 3.0) < 1e-10);
  CHECK_THROWS_AS(wootters_concurrence(random_mixed(DimVector{2, 3}, 2, 1)),
                  std::invalid_argument);
}

TEST_CASE("two-qubit concurrence agrees with the pure formula") {
  for (uint64_t s = 0; s < 25; ++s) {
    auto psi = haar_random_pure(DimVector{2, 2}, mix_seed(808, s));
    // sqrt of the spin-flip spectrum turns O(1e-15) eigenvalue noise into
    // O(1e-8) on the zero modes, so that is the attainable agreement here.
    CHECK(std::abs(wootters_concurrence(projector(psi)) - concurrence_pure(psi, {{0}})) < 1e-7);
  }
}

TEST_CASE("mixed 2(x)d q-measure comes from the bridge") {
  auto rho = werner(0.5);
  const double c = wootters_concurrence(rho);
  CHECK(std::abs(gq_concurrence_2xd_mixed(rho, 2.0, c) - std::sqrt(0.03125)) < 1e-12);
  const double c9 = wootters_concurrence(werner(0.9));
  CHECK(std::abs(gq_concurrence_2xd_mixed(werner(0.9), 1.5, c9) - h_q(0.85 * 0.85, 1.5)) < 1e-12);
  CHECK_THROWS_AS(gq_concurrence_2xd_mixed(rho, 1.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(gq_concurrence_2xd_mixed(random_mixed(DimVector{3, 3}, 2, 1), 1.5, 0.5),
                  std::invalid_argument);
}
