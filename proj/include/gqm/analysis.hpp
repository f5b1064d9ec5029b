#pragma once

// Curvature analysis of the bridge function h_q: closed-form second
// derivatives of h_q and h_q^2 in t, their t -> 1 limits, finite-difference
// cross-checks, and grid scans certifying concavity/convexity claims.

#include <functional>
#include <string>
#include <vector>

namespace gqm {

struct GridSpec {
  double t_min = 0.01, t_max = 0.99;
  int t_points = 99;
  double q_min = 1.05, q_max = 2.0;
  int q_points = 20;
  double fd_step = 1e-4;  // central-difference step, in [1e-6, 1e-3]
};

struct Violation {
  double t, q, value;  // value = the offending derivative
};

struct ScanReport {
  GridSpec grid;
  std::vector<Violation> violations;
  double max_violation = 0.0;  // worst excess past the allowed bound; 0 when clean
  long points_checked = 0;
};

double fd_first(const std::function<double(double)>& f, double t, double h);
double fd_second(const std::function<double(double)>& f, double t, double h);
// One Richardson step: (4 D(h/2) - D(h)) / 3; used near the grid edges.
double fd_second_refined(const std::function<double(double)>& f, double t, double h);

// Concavity of h_q in t: second derivative <= +2e-6 everywhere on the grid.
ScanReport lemma1_scan(const GridSpec& grid);
// Monotonicity and convexity of h_q^2 in t: first derivative >= -1e-8 and
// second derivative >= -2e-6 everywhere on the grid.
ScanReport lemma2_scan(const GridSpec& grid);

// Building blocks of the closed-form second derivatives, t in (0, 1).
struct CurvatureTerms {
  double xi1, xi2, xi3, xi4;
  double m;        // numerator factor for (h_q)''
  double m_prime;  // numerator factor for (h_q^2)''
};
CurvatureTerms curvature_terms(double t, double q);

double g_q_closed(double t, double q);        // d^2 h_q / dt^2
double g_tilde_q_closed(double t, double q);  // d^2 h_q^2 / dt^2

double limit_t1_gq(double q);        // lim_{t->1} (h_q)''
double limit_t1_gq_tilde(double q);  // lim_{t->1} (h_q^2)''; exactly 0 at q = 2

struct ProbeRow {
  double t, h, value;
  double noise_floor;  // FD cancellation scale 16*eps/h^2; |value| below it
                       // is indistinguishable from zero
};
struct TrendReport {
  std::vector<ProbeRow> rows;
  bool diverges = false;  // |value| keeps growing along the sequence
  bool bounded = false;   // values settle (e.g. h_2^2 is linear in t)
  int sign = 0;           // sign of the last value resolved above the noise floor
  std::string note;
};

// FD second derivative of h_q (squared = false) or of h_q^2 (squared = true)
// along a t sequence approaching a boundary; per-point step min(t, 1-t)/10.
TrendReport boundary_divergence_probe(double q, const std::vector<double>& t_seq, bool squared);

// Minimal |grad M(t, q)| over the grid (finite differences); strictly
// positive means M has no critical point on the grid.
double min_gradient_norm_m(const GridSpec& grid);

}  // namespace gqm
