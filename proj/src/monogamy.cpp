#include "gqm/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "gqm/catalog.hpp"

namespace gqm {

namespace {

constexpr double kMonogamyTol = 1e-9;

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double hq2(double c2, double q) {
  const double h = h_q(clamp01(c2), q);
  return h * h;
}

std::vector<int> effective_ordering(const HierarchySpec& spec) {
  std::vector<int> ord = spec.ordering;
  if (ord.empty()) {
    ord.resize(static_cast<size_t>(spec.n));
    std::iota(ord.begin(), ord.end(), 0);
    return ord;
  }
  check(static_cast<int>(ord.size()) == spec.n, "HierarchySpec: ordering length mismatch");
  std::vector<bool> seen(static_cast<size_t>(spec.n), false);
  for (int s : ord) {
    check(s >= 0 && s < spec.n && !seen[static_cast<size_t>(s)],
          "HierarchySpec: ordering is not a permutation");
    seen[static_cast<size_t>(s)] = true;
  }
  return ord;
}

void validate_spec(const HierarchySpec& spec, const DimVector& dims) {
  check(spec.n == dims.size(), "HierarchySpec: subsystem count mismatch");
  check(spec.k >= 3 && spec.k <= spec.n, "HierarchySpec: level k must lie in [3, n]");
}

bool all_qubits(const DimVector& dims) {
  for (int i = 0; i < dims.size(); ++i)
    if (dims[i] != 2) return false;
  return true;
}

bool same_state(const PureState& a, const PureState& b) {
  if (!(a.dims == b.dims)) return false;
  for (size_t i = 0; i < a.amp.size(); ++i)
    if (std::abs(a.amp[i] - b.amp[i]) > 1e-12) return false;
  return true;
}

// A reduction together with the position the focus subsystem landed on.
struct PartRef {
  DensityMatrix rho;
  int pos_a1 = 0;
};

PartRef make_part(const PureState& psi, int a1, const std::vector<int>& partners) {
  std::vector<int> keep = partners;
  keep.push_back(a1);
  std::sort(keep.begin(), keep.end());
  PartRef p{reduced_state(psi, keep), 0};
  p.pos_a1 = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), a1) - keep.begin());
  return p;
}

PartRef make_part(const DensityMatrix& rho, int a1, const std::vector<int>& partners) {
  std::vector<int> keep = partners;
  keep.push_back(a1);
  std::sort(keep.begin(), keep.end());
  PartRef p{partial_trace(rho, keep), 0};
  p.pos_a1 = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), a1) - keep.begin());
  return p;
}

// Squared concurrence of a reduction: exact for two qubits, otherwise a
// certified upper bound from the roof optimizer.
double c2_of_part(const PartRef& p, const RoofConfig& cfg, MethodTag& tag) {
  const DimVector& d = p.rho.dims;
  if (d.size() == 2 && d[0] == 2 && d[1] == 2) {
    tag = MethodTag::WoottersHq;
    const double c = wootters_concurrence(p.rho);
    return c * c;
  }
  tag = MethodTag::RoofUpperBound;
  const double c = roof_concurrence(p.rho, {{p.pos_a1}}, cfg).value;
  return c * c;
}

struct TermData {
  SquaredTerms sq;
  std::vector<PartRef> parts;  // pairwise..., block last; empty for closed families
  bool closed = false;
};

TermData build_term_data(const PureState& psi, const HierarchySpec& spec,
                         const TermOptions& opt) {
  validate_spec(spec, psi.dims);
  const auto ord = effective_ordering(spec);
  const int a1 = ord[0], n = spec.n, k = spec.k;

  TermData t;
  if (opt.allow_closed_forms && all_qubits(psi.dims) && n >= 3) {
    if (same_state(psi, w_state(n))) {
      const WClosedC2 c2 = w_closed_c2(n, k);
      t.sq.whole = c2.whole;
      t.sq.pairwise.assign(static_cast<size_t>(k - 2), c2.pairwise);
      t.sq.block = c2.block;
      t.sq.tags.assign(static_cast<size_t>(k), MethodTag::ClosedForm);
      t.closed = true;
      return t;
    }
    if (same_state(psi, ghz_state(n))) {
      t.sq.whole = 1.0;
      t.sq.pairwise.assign(static_cast<size_t>(k - 2), 0.0);
      t.sq.block = 0.0;
      t.sq.tags.assign(static_cast<size_t>(k), MethodTag::ClosedForm);
      t.closed = true;
      return t;
    }
  }

  const double cw = concurrence_pure(psi, {{a1}});
  t.sq.whole = cw * cw;
  t.sq.tags.push_back(MethodTag::PureExact);
  for (int j = 1; j <= k - 2; ++j) {
    t.parts.push_back(make_part(psi, a1, {ord[static_cast<size_t>(j)]}));
    MethodTag tag{};
    t.sq.pairwise.push_back(c2_of_part(t.parts.back(), opt.roof, tag));
    t.sq.tags.push_back(tag);
  }
  std::vector<int> tail(ord.begin() + (k - 1), ord.end());
  t.parts.push_back(make_part(psi, a1, tail));
  MethodTag tag{};
  t.sq.block = c2_of_part(t.parts.back(), opt.roof, tag);
  t.sq.tags.push_back(tag);
  return t;
}

// Tighter upper bounds for the roof-evaluated subtracted terms (5x restarts);
// exact terms are left untouched.
void tighten_roof_terms(const PureState& psi, const HierarchySpec& spec, const TermOptions& opt,
                        TermData& td) {
  if (td.closed) return;
  TermOptions heavy = opt;
  heavy.roof.restarts *= 5;
  TermData again = build_term_data(psi, spec, heavy);
  for (size_t i = 0; i < td.sq.pairwise.size(); ++i)
    if (td.sq.tags[i + 1] == MethodTag::RoofUpperBound)
      td.sq.pairwise[i] = std::min(td.sq.pairwise[i], again.sq.pairwise[i]);
  if (td.sq.tags.back() == MethodTag::RoofUpperBound)
    td.sq.block = std::min(td.sq.block, again.sq.block);
}

bool has_roof_subtracted(const SquaredTerms& sq) {
  for (size_t i = 1; i < sq.tags.size(); ++i)
    if (sq.tags[i] == MethodTag::RoofUpperBound) return true;
  return false;
}

ResidualReport assemble(MeasureKind kind, double q, const SquaredTerms& sq) {
  ResidualReport r;
  r.measure = kind;
  r.q = q;
  const bool map = kind == MeasureKind::SGqC;
  r.whole = map ? hq2(sq.whole, q) : sq.whole;
  double subtracted = 0.0;
  for (double p : sq.pairwise) {
    r.pairwise.push_back(map ? hq2(p, q) : p);
    subtracted += r.pairwise.back();
  }
  r.block = map ? hq2(sq.block, q) : sq.block;
  r.tags = sq.tags;
  r.residual = r.whole - subtracted - r.block;
  return r;
}

std::string classify(double sc, double sg) {
  const bool sc_ok = sc >= -kMonogamyTol;
  const bool sg_ok = sg >= -kMonogamyTol;
  if (sc_ok && sg_ok) return "both-monogamous";
  if (!sc_ok && sg_ok) return "SGqC-only";
  if (sc_ok && !sg_ok) return "SC-only";
  return "both-violated";
}

// SGqC residual for comparison rows: terms whose focus side is a qubit go
// through the h_q^2 image of their squared concurrence; larger focus sides
// take the q-measure roof directly.
double sgqc_comparison_residual(const PureState& psi, const TermData& td, int a1, double q,
                                const TermOptions& opt) {
  double whole;
  if (psi.dims[a1] == 2) {
    whole = hq2(td.sq.whole, q);
  } else {
    const double g = gq_concurrence_pure(psi, {{a1}}, q);
    whole = g * g;
  }
  double subtracted = 0.0;
  const size_t nterms = td.sq.pairwise.size() + 1;
  for (size_t i = 0; i < nterms; ++i) {
    const double c2 = (i < td.sq.pairwise.size()) ? td.sq.pairwise[i] : td.sq.block;
    if (td.closed || td.parts[i].rho.dims[td.parts[i].pos_a1] == 2) {
      subtracted += hq2(c2, q);
    } else {
      const double g = roof_gq(td.parts[i].rho, {{td.parts[i].pos_a1}}, q, opt.roof).value;
      subtracted += g * g;
    }
  }
  return whole - subtracted;
}

std::string term_note(const SquaredTerms& sq) {
  char buf[64];
  std::string out = "c2 terms: whole=";
  std::snprintf(buf, sizeof buf, "%.12g", sq.whole);
  out += buf;
  out += " parts=[";
  for (size_t i = 0; i < sq.pairwise.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.12g", i ? ", " : "", sq.pairwise[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "] block=%.12g tags=[", sq.block);
  out += buf;
  for (size_t i = 0; i < sq.tags.size(); ++i) {
    out += i ? ", " : "";
    out += method_tag_name(sq.tags[i]);
  }
  out += "]";
  return out;
}

bool is_family_422(const PureState& psi, double& theta) {
  if (!(psi.dims == DimVector{4, 2, 2})) return false;
  static const int support[4] = {0, 6, 9, 15};
  for (int i = 0; i < 16; ++i) {
    const bool on = std::find(support, support + 4, i) != support + 4;
    if (!on && std::abs(psi.amp[static_cast<size_t>(i)]) > 1e-13) return false;
    if (on && std::abs(psi.amp[static_cast<size_t>(i)].imag()) > 1e-13) return false;
  }
  if (std::abs(psi.amp[0] - psi.amp[9]) > 1e-12) return false;
  if (std::abs(psi.amp[6] - psi.amp[15]) > 1e-12) return false;
  const double a = psi.amp[0].real() * std::sqrt(2.0);
  const double b = psi.amp[6].real() * std::sqrt(2.0);
  if (a < -1e-13 || b < -1e-13) return false;
  theta = std::atan2(std::max(0.0, a), std::max(0.0, b));
  return true;
}

}  // namespace

const char* method_tag_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::PureExact: return "pure-exact";
    case MethodTag::ClosedForm: return "closed-form";
    case MethodTag::WoottersHq: return "wootters+h_q";
    case MethodTag::RoofUpperBound: return "roof-upper-bound";
  }
  return "unknown";
}

SquaredTerms squared_concurrence_terms(const PureState& psi, const HierarchySpec& spec,
                                       const TermOptions& opt) {
  return build_term_data(psi, spec, opt).sq;
}

ResidualReport sc_residual(const PureState& psi, const HierarchySpec& spec,
                           const TermOptions& opt) {
  check(all_qubits(psi.dims), "sc_residual: all subsystems must be qubits");
  TermData td = build_term_data(psi, spec, opt);
  ResidualReport r = assemble(MeasureKind::SC, 0.0, td.sq);
  if (r.residual < -kMonogamyTol && has_roof_subtracted(td.sq)) {
    tighten_roof_terms(psi, spec, opt, td);
    r = assemble(MeasureKind::SC, 0.0, td.sq);
  }
  return r;
}

ResidualReport tau_qk_pure(const PureState& psi, const HierarchySpec& spec, double q,
                           const TermOptions& opt) {
  validate_q(q);
  validate_spec(spec, psi.dims);
  const auto ord = effective_ordering(spec);
  check(psi.dims[ord[0]] == 2, "tau_qk_pure: the focus subsystem must be a qubit");
  TermData td = build_term_data(psi, spec, opt);
  ResidualReport r = assemble(MeasureKind::SGqC, q, td.sq);
  if (r.residual < -kMonogamyTol && has_roof_subtracted(td.sq)) {
    tighten_roof_terms(psi, spec, opt, td);
    r = assemble(MeasureKind::SGqC, q, td.sq);
  }
  return r;
}

ResidualReport tau2_mixed(const DensityMatrix& rho, const HierarchySpec& spec, double q,
                          const TermOptions& opt) {
  validate_q(q);
  validate_spec(spec, rho.dims);
  const auto ord = effective_ordering(spec);
  const int a1 = ord[0], k = spec.k;

  ResidualReport r;
  r.measure = MeasureKind::SGqC;
  r.q = q;
  int rank = 0;
  for (double lam : hermitian_spectrum(rho.m).values)
    if (lam > 1e-12) ++rank;
  const double gw = roof_gq(rho, {{a1}}, q, opt.roof).value;
  r.whole = gw * gw;
  r.tags.push_back(rank == 1 ? MethodTag::PureExact : MethodTag::RoofUpperBound);

  double subtracted = 0.0;
  auto add_term = [&](const PartRef& p, double& slot) {
    const DimVector& d = p.rho.dims;
    if (d.size() == 2 && d[0] == 2 && d[1] == 2) {
      const double c = wootters_concurrence(p.rho);
      slot = hq2(c * c, q);
      r.tags.push_back(MethodTag::WoottersHq);
    } else {
      const double g = roof_gq(p.rho, {{p.pos_a1}}, q, opt.roof).value;
      slot = g * g;
      r.tags.push_back(MethodTag::RoofUpperBound);
    }
    subtracted += slot;
  };
  for (int j = 1; j <= k - 2; ++j) {
    double slot = 0.0;
    add_term(make_part(rho, a1, {ord[static_cast<size_t>(j)]}), slot);
    r.pairwise.push_back(slot);
  }
  std::vector<int> tail(ord.begin() + (k - 1), ord.end());
  add_term(make_part(rho, a1, tail), r.block);
  r.residual = r.whole - subtracted;
  return r;
}

RoofResult tau1_mixed(const DensityMatrix& rho, const HierarchySpec& spec, double q,
                      const RoofConfig& cfg) {
  validate_q(q);
  validate_spec(spec, rho.dims);
  check(rho.dims.total() <= 64, "tau1_mixed: total dimension above 64");
  const auto ord = effective_ordering(spec);
  check(rho.dims[ord[0]] == 2, "tau1_mixed: the focus subsystem must be a qubit");
  TermOptions inner;
  inner.roof.restarts = 2;  // per-member block roofs stay light
  auto measure = [spec, q, inner](const PureState& s) {
    return std::max(0.0, tau_qk_pure(s, spec, q, inner).residual);
  };
  return roof_minimize(rho, measure, cfg);
}

double alpha_residual(const PureState& psi, const HierarchySpec& spec, double q, double alpha,
                      const TermOptions& opt) {
  check(alpha >= 2.0, "alpha_residual: alpha must be >= 2");
  validate_q(q);
  validate_spec(spec, psi.dims);
  const auto ord = effective_ordering(spec);
  check(psi.dims[ord[0]] == 2, "alpha_residual: the focus subsystem must be a qubit");
  TermData td = build_term_data(psi, spec, opt);
  auto powered = [&](const SquaredTerms& sq) {
    double v = std::pow(h_q(clamp01(sq.whole), q), alpha);
    for (double p : sq.pairwise) v -= std::pow(h_q(clamp01(p), q), alpha);
    return v - std::pow(h_q(clamp01(sq.block), q), alpha);
  };
  double value = powered(td.sq);
  if (value < -kMonogamyTol && has_roof_subtracted(td.sq)) {
    tighten_roof_terms(psi, spec, opt, td);
    value = powered(td.sq);
  }
  return value;
}

std::pair<double, double> residual_from_values(double c2_whole,
                                               const std::vector<double>& c2_parts, double q) {
  validate_q(q);
  check(c2_whole >= 0.0 && c2_whole <= 1.0, "residual_from_values: whole term outside [0, 1]");
  double sc = c2_whole, sg = hq2(c2_whole, q);
  for (double p : c2_parts) {
    check(p >= 0.0 && p <= 1.0, "residual_from_values: part term outside [0, 1]");
    sc -= p;
    sg -= hq2(p, q);
  }
  return {sc, sg};
}

std::vector<ComparisonRow> compare_sc_sgqc(const PureState& psi, const HierarchySpec& spec,
                                           const std::vector<double>& q_grid,
                                           const TermOptions& opt) {
  validate_spec(spec, psi.dims);
  const auto ord = effective_ordering(spec);
  const int a1 = ord[0];
  std::vector<ComparisonRow> rows;
  rows.reserve(q_grid.size());

  if (opt.allow_closed_forms && spec.k == 3 && psi.dims == DimVector{3, 3, 3} &&
      same_state(psi, antisymmetric_333())) {
    for (double q : q_grid) {
      validate_q(q);
      ComparisonRow row;
      row.q = q;
      row.sc_residual = -2.0 / 3.0;
      row.sgqc_residual = l_q_bound(q);
      row.classification = classify(row.sc_residual, row.sgqc_residual);
      row.note = "closed-form antisymmetric-family terms";
      rows.push_back(std::move(row));
    }
    return rows;
  }

  double theta = 0.0;
  if (opt.allow_closed_forms && spec.k == 3 && is_family_422(psi, theta)) {
    const bool in_range = std::all_of(q_grid.begin(), q_grid.end(),
                                      [](double q) { return q <= 1.5 + 1e-12; });
    if (in_range) {
      for (double q : q_grid) {
        validate_q(q);
        const MValues mv = m_and_mq_422(theta, q);
        ComparisonRow row;
        row.q = q;
        row.sc_residual = mv.m;
        row.sgqc_residual = mv.m_q;
        row.classification = classify(row.sc_residual, row.sgqc_residual);
        row.note = "closed-form 4x2x2-family terms";
        rows.push_back(std::move(row));
      }
      return rows;
    }
  }

  TermData td = build_term_data(psi, spec, opt);
  double sc = td.sq.whole - td.sq.block;
  for (double p : td.sq.pairwise) sc -= p;

  for (double q : q_grid) {
    validate_q(q);
    ComparisonRow row;
    row.q = q;
    row.sc_residual = sc;
    row.sgqc_residual = sgqc_comparison_residual(psi, td, a1, q, opt);
    row.classification = classify(row.sc_residual, row.sgqc_residual);
    if (row.classification == "SC-only" && !td.closed) {
      TermOptions heavy = opt;
      heavy.roof.restarts *= 5;
      TermData hv = build_term_data(psi, spec, heavy);
      for (size_t i = 0; i < hv.sq.pairwise.size(); ++i)
        if (hv.sq.tags[i + 1] == MethodTag::RoofUpperBound)
          hv.sq.pairwise[i] = std::min(hv.sq.pairwise[i], td.sq.pairwise[i]);
      if (hv.sq.tags.back() == MethodTag::RoofUpperBound)
        hv.sq.block = std::min(hv.sq.block, td.sq.block);
      double sc2 = hv.sq.whole - hv.sq.block;
      for (double p : hv.sq.pairwise) sc2 -= p;
      row.sc_residual = sc2;
      row.sgqc_residual = sgqc_comparison_residual(psi, hv, a1, q, heavy);
      row.classification = classify(row.sc_residual, row.sgqc_residual);
      row.rechecked = true;
      if (row.classification == "SC-only") row.note = term_note(hv.sq);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gqm
