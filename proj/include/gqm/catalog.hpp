#pragma once

// Named state families with known closed-form entanglement values, used as
// ground truth for the optimizers and the monogamy indicators.

#include "gqm/measures.hpp"
#include "gqm/qcore.hpp"

namespace gqm {

PureState w_state(int n);    // single-excitation superposition, n >= 3 qubits
PureState ghz_state(int n);  // (|0...0> + |1...1>)/sqrt(2), n >= 2 qubits

// Totally antisymmetric state on 3x3x3 (Levi-Civita amplitudes / sqrt(6));
// every single-site reduction is I/3.
PureState antisymmetric_333();

// (a|000> + b|110> + a|201> + b|311>)/sqrt(2) on 4x2x2 with a = sin(theta),
// b = cos(theta); theta in [0, pi/2].
PureState family_422(double theta);

// Exact squared concurrences for the W-state hierarchy on n qubits:
// whole = C^2(A1|rest), pairwise = C^2(rho_{A1,Ai}), block = C^2(rho_{A1|Ak...An}).
struct WClosedC2 {
  double whole, pairwise, block;
};
WClosedC2 w_closed_c2(int n, int k);

// h_q^2 of the values above.
struct WClosedTerms {
  double whole, pairwise, block;
};
WClosedTerms w_closed_terms(int n, int k, double q);

// Indicator value as tabulated for the n=8 W state: whole - pairwise - block
// with a single pairwise term.
double w_table_residual(int n, int k, double q);

// Residual bound of the antisymmetric state under the q-measure:
// l(q) = [1 - (1/3)^{q-1}]^{2/q} - 2 [1 - 2 (1/2)^q]^{2/q}.
// l(2) = -1/3; l changes sign once in (1, 2).
double l_q_bound(double q);

// Root of l_q_bound by bisection on the validated bracket [1.05, 2].
double q0_root(double tolerance);

// Closed-form residuals of family_422: m is the squared-concurrence residual
// (= -2 a^2 b^2, q-independent), m_q the q-measure residual.  q in [1, 1.5].
struct MValues {
  double m, m_q;
};
MValues m_and_mq_422(double theta, double q);

}  // namespace gqm
