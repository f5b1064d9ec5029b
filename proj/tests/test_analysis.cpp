#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gqm/analysis.hpp"
#include "gqm/measures.hpp"

using namespace gqm;

TEST_CASE("finite differences recover polynomial derivatives") {
  const auto f = [](double x) { return 3.0 * x * x * x - 2.0 * x + 1.0; };
  CHECK(std::abs(fd_first(f, 0.4, 1e-5) - (9.0 * 0.16 - 2.0)) < 1e-9);
  CHECK(std::abs(fd_second(f, 0.4, 1e-4) - 18.0 * 0.4) < 1e-6);
  CHECK(std::abs(fd_second_refined(f, 0.4, 1e-4) - 7.2) < 1e-6);
  CHECK_THROWS_AS(fd_second(f, 0.4, 0.0), std::invalid_argument);
}

TEST_CASE("closed-form curvature matches frozen values") {
  CHECK(std::abs(curvature_terms(0.5, 1.5).m - (-0.13838432695707764)) < 1e-13);
  CHECK(std::abs(curvature_terms(0.3, 1.3).m - (-0.0581274350747263)) < 1e-13);
  CHECK(std::abs(g_q_closed(0.5, 1.5) - (-0.29286244314662213)) < 1e-13);
  CHECK(std::abs(g_q_closed(0.3, 1.3) - (-0.3328547508774258)) < 1e-13);
  CHECK(std::abs(g_q_closed(0.9, 1.9) - (-0.1969703680700094)) < 1e-13);
  CHECK(std::abs(g_tilde_q_closed(0.5, 1.5) - 0.08406777426185345) < 1e-13);
  CHECK(std::abs(g_tilde_q_closed(0.3, 1.3) - 0.07553900593603202) < 1e-13);
  CHECK(std::abs(g_tilde_q_closed(0.9, 1.9) - 0.01762136494860171) < 1e-13);
  // q = 2: h_2 = sqrt(t/2) has second derivative -(1/sqrt(8)) t^{-3/2} / 2;
  // h_2^2 = t/2 is linear, so its second derivative vanishes identically.
  CHECK(std::abs(g_q_closed(0.5, 2.0) - (-0.5)) < 1e-12);
  CHECK(std::abs(g_tilde_q_closed(0.5, 2.0)) < 1e-12);
  CHECK_THROWS_AS(curvature_terms(0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(curvature_terms(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("closed forms agree with finite differences of h_q") {
  for (double q : {1.2, 1.5, 1.8, 2.0}) {
    const auto f = [q](double t) { return h_q(t, q); };
    const auto f2 = [q](double t) {
      const double v = h_q(t, q);
      return v * v;
    };
    for (double t : {0.15, 0.5, 0.85}) {
      CHECK(std::abs(fd_second_refined(f, t, 1e-4) - g_q_closed(t, q)) < 1e-5);
      CHECK(std::abs(fd_second_refined(f2, t, 1e-4) - g_tilde_q_closed(t, q)) < 1e-5);
    }
  }
}

TEST_CASE("limits at t -> 1 match their closed forms") {
  CHECK(std::abs(limit_t1_gq(2.0) - (-1.0 / (4.0 * std::sqrt(2.0)))) < 1e-15);
  CHECK(std::abs(limit_t1_gq(1.3) - (-0.07044173959329615)) < 1e-14);
  CHECK(std::abs(limit_t1_gq(1.7) - (-0.14605524720521648)) < 1e-14);
  CHECK(limit_t1_gq_tilde(2.0) == 0.0);
  CHECK(std::abs(limit_t1_gq_tilde(1.3) - 0.025338332957739677) < 1e-14);
  CHECK(std::abs(limit_t1_gq_tilde(1.7) - 0.037541154881708096) < 1e-14);
  // closed curvature approaches the limit value
  for (double q : {1.3, 2.0}) {
    CHECK(std::abs(g_q_closed(0.9999, q) - limit_t1_gq(q)) < 5e-4);
    CHECK(std::abs(g_tilde_q_closed(0.9999, q) - limit_t1_gq_tilde(q)) < 5e-4);
  }
}

TEST_CASE("default-grid scans find no violations") {
  GridSpec grid;
  auto r1 = lemma1_scan(grid);
  CHECK(r1.points_checked == 99l * 20l);
  CHECK(r1.violations.empty());
  CHECK(r1.max_violation == 0.0);
  auto r2 = lemma2_scan(grid);
  CHECK(r2.violations.empty());
  CHECK(r2.max_violation == 0.0);
}

TEST_CASE("grid validation") {
  GridSpec bad;
  bad.t_min = 0.0;
  CHECK_THROWS_AS(lemma1_scan(bad), std::invalid_argument);
  GridSpec bad2;
  bad2.fd_step = 1e-2;
  CHECK_THROWS_AS(lemma2_scan(bad2), std::invalid_argument);
  GridSpec bad3;
  bad3.q_min = 1.0;
  CHECK_THROWS_AS(lemma1_scan(bad3), std::invalid_argument);
}

TEST_CASE("boundary probes classify divergence at 0 and limits at 1") {
  const std::vector<double> to_zero{1e-2, 1e-3, 1e-4, 1e-5};
  const std::vector<double> to_one{0.9, 0.99, 0.999, 0.9999};

  // (h_q)'' diverges to -infinity at t -> 0 for every admissible q
  for (double q : {1.3, 1.7, 2.0}) {
    auto rep = boundary_divergence_probe(q, to_zero, false);
    CHECK(rep.diverges);
    CHECK(rep.sign == -1);
  }
  // (h_q^2)'' diverges to +infinity at t -> 0 for q < 2 ...
  for (double q : {1.3, 1.7}) {
    auto rep = boundary_divergence_probe(q, to_zero, true);
    CHECK(rep.diverges);
    CHECK(rep.sign == +1);
  }
  // ... but h_2^2 = t/2 is linear: the probe must answer "bounded", sign 0.
  auto flat = boundary_divergence_probe(2.0, to_zero, true);
  CHECK(flat.bounded);
  CHECK_FALSE(flat.diverges);
  CHECK(flat.sign == 0);

  // at t -> 1 both curvatures settle to finite limits
  for (double q : {1.3, 1.7}) {
    auto rep_h = boundary_divergence_probe(q, to_one, false);
    CHECK_FALSE(rep_h.diverges);
    CHECK(std::abs(rep_h.rows.back().value - limit_t1_gq(q)) < 1e-2 * std::abs(limit_t1_gq(q)));
    auto rep_h2 = boundary_divergence_probe(q, to_one, true);
    CHECK_FALSE(rep_h2.diverges);
    CHECK(std::abs(rep_h2.rows.back().value - limit_t1_gq_tilde(q)) <
          1e-2 * std::abs(limit_t1_gq_tilde(q)));
  }
  CHECK_THROWS_AS(boundary_divergence_probe(1.3, {0.1, 0.2}, false), std::invalid_argument);
}

TEST_CASE("M has no critical point on the default grid") {
  GridSpec grid;
  const double floor = min_gradient_norm_m(grid);
  CHECK(floor > 0.01);
  CHECK(std::abs(floor - 0.047424406609913004) < 1e-4);
}
