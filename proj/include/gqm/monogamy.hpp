#pragma once

// Hierarchical monogamy residuals and indicators: a focus subsystem A1 is
// compared against the pairwise partners A2..A(k-1) and the tail block
// Ak..An.  Residuals use squared measures; positive means monogamous.

#include <string>
#include <utility>
#include <vector>

#include "gqm/measures.hpp"
#include "gqm/qcore.hpp"
#include "gqm/roof.hpp"

namespace gqm {

enum class MeasureKind { SC, SGqC };

// Provenance of each reported term value.
enum class MethodTag {
  PureExact,       // direct evaluation on a pure state
  ClosedForm,      // catalog closed form (recognized family)
  WoottersHq,      // two-qubit closed form, mapped through h_q when needed
  RoofUpperBound,  // numerical convex-roof upper bound
};
const char* method_tag_name(MethodTag tag);

struct HierarchySpec {
  int n = 0;                  // subsystem count
  int k = 0;                  // hierarchy level, 3 <= k <= n
  std::vector<int> ordering;  // permutation of 0..n-1, A1 first; empty = natural
};

struct ResidualReport {
  MeasureKind measure = MeasureKind::SC;
  double q = 0.0;  // 0 when the measure is SC
  double whole = 0.0;
  std::vector<double> pairwise;  // k-2 terms
  double block = 0.0;
  double residual = 0.0;        // whole - sum(pairwise) - block
  std::vector<MethodTag> tags;  // whole, pairwise..., block
};

struct TermOptions {
  RoofConfig roof;                 // settings for every roof-evaluated term
  bool allow_closed_forms = true;  // recognize catalog families
};

struct ComparisonRow {
  double q = 0.0;
  double sc_residual = 0.0;
  double sgqc_residual = 0.0;
  std::string classification;  // both-monogamous | SGqC-only | SC-only | both-violated
  bool rechecked = false;      // roof terms re-run at higher effort
  std::string note;            // term provenance dump for anomalous rows
};

// Squared concurrences of every hierarchy term (q-independent inputs for both
// indicator families). Subtracted-term roofs are upper bounds; tags say which.
struct SquaredTerms {
  double whole = 0.0;
  std::vector<double> pairwise;
  double block = 0.0;
  std::vector<MethodTag> tags;
};
SquaredTerms squared_concurrence_terms(const PureState& psi, const HierarchySpec& spec,
                                       const TermOptions& opt = {});

// Squared-concurrence residual for an n-qubit pure state.
ResidualReport sc_residual(const PureState& psi, const HierarchySpec& spec,
                           const TermOptions& opt = {});

// Squared q-measure residual for an n-qubit pure state: every term is the
// h_q^2 image of its squared concurrence. A negative residual with
// roof-bounded terms triggers one higher-effort re-run before reporting.
ResidualReport tau_qk_pure(const PureState& psi, const HierarchySpec& spec, double q,
                           const TermOptions& opt = {});

// Mixed-state residual: whole and block terms are roof upper bounds of the
// q-measure (pairwise 2x2 reductions stay exact); see tags for direction.
ResidualReport tau2_mixed(const DensityMatrix& rho, const HierarchySpec& spec, double q,
                          const TermOptions& opt = {});

// Convex roof of the (clamped) pure-state indicator; total dimension <= 64.
RoofResult tau1_mixed(const DensityMatrix& rho, const HierarchySpec& spec, double q,
                      const RoofConfig& cfg = {});

// alpha-power residual (alpha >= 2) built from the same squared terms.
double alpha_residual(const PureState& psi, const HierarchySpec& spec, double q, double alpha,
                      const TermOptions& opt = {});

// Residual pair from externally supplied squared concurrences:
// first = plain difference, second = the h_q^2-mapped difference.
std::pair<double, double> residual_from_values(double c2_whole,
                                               const std::vector<double>& c2_parts, double q);

// SC vs SGqC comparison over a q grid; multilevel subsystems allowed. An
// "SC-only" row is re-verified with 5x roof restarts before being reported.
std::vector<ComparisonRow> compare_sc_sgqc(const PureState& psi, const HierarchySpec& spec,
                                           const std::vector<double>& q_grid,
                                           const TermOptions& opt = {});

}  // namespace gqm
