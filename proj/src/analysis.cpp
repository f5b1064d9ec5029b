#include "gqm/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "gqm/measures.hpp"

namespace gqm {

namespace {

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_grid(const GridSpec& g) {
  check(g.t_points >= 2 && g.q_points >= 1, "GridSpec: too few points");
  check(g.t_min > 0.0 && g.t_max < 1.0 && g.t_min < g.t_max, "GridSpec: t range outside (0, 1)");
  check(g.q_min > 1.0 && g.q_max <= 2.0 && g.q_min <= g.q_max, "GridSpec: q range outside (1, 2]");
  check(g.fd_step >= 1e-6 && g.fd_step <= 1e-3, "GridSpec: fd_step outside [1e-6, 1e-3]");
}

double grid_t(const GridSpec& g, int i) {
  return g.t_min + (g.t_max - g.t_min) * i / (g.t_points - 1);
}

double grid_q(const GridSpec& g, int j) {
  if (g.q_points == 1) return g.q_min;
  return g.q_min + (g.q_max - g.q_min) * j / (g.q_points - 1);
}

// Near the edges the plain stencil loses accuracy fastest, so refine there.
double second_derivative_at(const std::function<double(double)>& f, double t, double h) {
  if (t < 0.02 || t > 0.98) return fd_second_refined(f, t, h);
  return fd_second(f, t, h);
}

int sign_of(double v) { return v > 1e-9 ? 1 : (v < -1e-9 ? -1 : 0); }

}  // namespace

double fd_first(const std::function<double(double)>& f, double t, double h) {
  check(h > 0.0, "fd_first: step must be positive");
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

double fd_second(const std::function<double(double)>& f, double t, double h) {
  check(h > 0.0, "fd_second: step must be positive");
  return (f(t - h) - 2.0 * f(t) + f(t + h)) / (h * h);
}

double fd_second_refined(const std::function<double(double)>& f, double t, double h) {
  const double coarse = fd_second(f, t, h);
  const double fine = fd_second(f, t, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

ScanReport lemma1_scan(const GridSpec& grid) {
  validate_grid(grid);
  ScanReport rep;
  rep.grid = grid;
  for (int j = 0; j < grid.q_points; ++j) {
    const double q = grid_q(grid, j);
    const auto f = [q](double t) { return h_q(t, q); };
    for (int i = 0; i < grid.t_points; ++i) {
      const double t = grid_t(grid, i);
      const double d2 = second_derivative_at(f, t, grid.fd_step);
      ++rep.points_checked;
      if (d2 > 2e-6) {
        rep.violations.push_back({t, q, d2});
        rep.max_violation = std::max(rep.max_violation, d2 - 2e-6);
      }
    }
  }
  return rep;
}

ScanReport lemma2_scan(const GridSpec& grid) {
  validate_grid(grid);
  ScanReport rep;
  rep.grid = grid;
  for (int j = 0; j < grid.q_points; ++j) {
    const double q = grid_q(grid, j);
    const auto f = [q](double t) {
      const double v = h_q(t, q);
      return v * v;
    };
    for (int i = 0; i < grid.t_points; ++i) {
      const double t = grid_t(grid, i);
      const double d1 = fd_first(f, t, grid.fd_step);
      const double d2 = second_derivative_at(f, t, grid.fd_step);
      ++rep.points_checked;
      if (d1 < -1e-8) {
        rep.violations.push_back({t, q, d1});
        rep.max_violation = std::max(rep.max_violation, -1e-8 - d1);
      }
      if (d2 < -2e-6) {
        rep.violations.push_back({t, q, d2});
        rep.max_violation = std::max(rep.max_violation, -2e-6 - d2);
      }
    }
  }
  return rep;
}

CurvatureTerms curvature_terms(double t, double q) {
  validate_q(q);
  check(t > 1e-12 && t < 1.0 - 1e-12, "curvature_terms: t must be inside (0, 1)");
  const double s = std::sqrt(1.0 - t);
  const double omt = 1.0 - t;  // = s^2
  CurvatureTerms ct;
  ct.xi1 = std::pow(std::pow(1.0 + s, q - 1.0) - std::pow(1.0 - s, q - 1.0), 2.0) / omt;
  ct.xi2 = 1.0 - std::pow((1.0 + s) / 2.0, q) - std::pow((1.0 - s) / 2.0, q);
  ct.xi3 = std::pow(1.0 + s, q - 2.0) / (2.0 * omt) * ((1.0 + s) / s - (q - 1.0));
  ct.xi4 = std::pow(1.0 - s, q - 2.0) / (2.0 * omt) * ((1.0 - s) / s + (q - 1.0));
  const double shared = ct.xi2 * (ct.xi3 - ct.xi4);
  const double scale = std::pow(2.0, q + 1.0);
  ct.m = (1.0 - q) / scale * ct.xi1 + shared;
  ct.m_prime = (2.0 - q) / scale * ct.xi1 + shared;
  return ct;
}

double g_q_closed(double t, double q) {
  const CurvatureTerms ct = curvature_terms(t, q);
  return std::pow(2.0, -(q + 1.0)) * std::pow(ct.xi2, 1.0 / q - 2.0) * ct.m;
}

double g_tilde_q_closed(double t, double q) {
  const CurvatureTerms ct = curvature_terms(t, q);
  return std::pow(2.0, -q) * std::pow(ct.xi2, 2.0 / q - 2.0) * ct.m_prime;
}

double limit_t1_gq(double q) {
  validate_q(q);
  const double p2q = std::pow(2.0, q);
  const double num = (q - 1.0) * (p2q * q * q - 5.0 * q * p2q + 6.0 * p2q + 4.0 * q * q - 2.0 * q - 6.0);
  return -num / (12.0 * std::pow(p2q - 2.0, (2.0 * q - 1.0) / q));
}

double limit_t1_gq_tilde(double q) {
  validate_q(q);
  const double p2q = std::pow(2.0, q);
  const double factor = q * q - 3.0 * q + 2.0;  // vanishes exactly at q = 2
  const double v = -factor * (4.0 * q + q * p2q - 3.0 * p2q) /
                   (12.0 * std::pow(p2q - 2.0, (2.0 * q - 2.0) / q));
  return v == 0.0 ? 0.0 : v;
}

TrendReport boundary_divergence_probe(double q, const std::vector<double>& t_seq, bool squared) {
  validate_q(q);
  check(t_seq.size() >= 3, "boundary_divergence_probe: need at least 3 points");
  const auto f = [q, squared](double t) {
    const double v = h_q(t, q);
    return squared ? v * v : v;
  };
  TrendReport rep;
  for (double t : t_seq) {
    check(t > 0.0 && t < 1.0, "boundary_divergence_probe: t outside (0, 1)");
    const double h = std::min(t, 1.0 - t) / 10.0;
    const double v = fd_second(f, t, h);
    // The stencil subtracts O(1) quantities, so its absolute rounding noise
    // scales like eps / h^2; values below that carry no signal.
    const double floor = 16.0 * 2.220446049250313e-16 / (h * h);
    rep.rows.push_back({t, h, v, floor});
  }

  std::vector<const ProbeRow*> resolved;
  for (const ProbeRow& r : rep.rows)
    if (std::abs(r.value) > r.noise_floor) resolved.push_back(&r);

  if (resolved.empty()) {
    rep.bounded = true;
    rep.sign = 0;
    rep.note = "second derivative indistinguishable from zero at FD resolution";
    return rep;
  }
  rep.sign = sign_of(resolved.back()->value);
  double hi = 0.0;
  for (const ProbeRow* r : resolved) hi = std::max(hi, std::abs(r->value));
  const double first = std::abs(resolved.front()->value);
  const double last = std::abs(resolved.back()->value);
  const double prev =
      resolved.size() >= 2 ? std::abs(resolved[resolved.size() - 2]->value) : last;
  if (resolved.size() < 2 || std::abs(last - prev) <= 0.05 * std::max(last, 1e-12)) {
    rep.bounded = true;
    rep.note = "second derivative settles along the sequence";
  } else if (last > 5.0 * first && last >= 0.999 * hi) {
    rep.diverges = true;
    rep.note = std::string("second derivative grows without visible bound, sign ") +
               (rep.sign > 0 ? "+" : rep.sign < 0 ? "-" : "0");
  } else {
    rep.note = "trend inconclusive on the given sequence";
  }
  return rep;
}

double min_gradient_norm_m(const GridSpec& grid) {
  validate_grid(grid);
  const double h = 1e-5;
  double best = -1.0;
  for (int j = 0; j < grid.q_points; ++j) {
    const double q = grid_q(grid, j);
    for (int i = 0; i < grid.t_points; ++i) {
      const double t = grid_t(grid, i);
      const double dt = (curvature_terms(t + h, q).m - curvature_terms(t - h, q).m) / (2.0 * h);
      double dq;
      if (q + h > 2.0)
        dq = (curvature_terms(t, q).m - curvature_terms(t, q - h).m) / h;
      else if (q - h <= 1.0)
        dq = (curvature_terms(t, q + h).m - curvature_terms(t, q).m) / h;
      else
        dq = (curvature_terms(t, q + h).m - curvature_terms(t, q - h).m) / (2.0 * h);
      const double norm = std::hypot(dt, dq);
      if (best < 0.0 || norm < best) best = norm;
    }
  }
  return best;
}

}  // namespace gqm
