#pragma once

// Entanglement measures: pure-state concurrence and its one-parameter
// generalization over Tsallis-q entropy (1 < q <= 2), the exact 2x2
// mixed-state concurrence, and the bridge function h_q that carries the
// squared concurrence of a 2(x)d mixed state to the q-measure.

#include "gqm/qcore.hpp"

namespace gqm {

// Side A of a bipartition; side B is the complement.  Indices strictly
// increasing, complement must be non-empty.
struct Bipartition {
  std::vector<int> side_a;
};

void validate_q(double q);  // throws unless 1 < q <= 2

// Value of the q-measure on a maximally entangled qubit pair:
// (1 - 2^{1-q})^{1/q}.  Upper end of the measure's range for 2(x)d.
double gq_max(double q);

// h_q(t) = [1 - ((1+s)/2)^q - ((1-s)/2)^q]^{1/q}, s = sqrt(1-t), t in [0,1].
// Monotone increasing, h_q(0) = 0, h_q(1) = gq_max(q), h_2(t) = sqrt(t/2).
double h_q(double t, double q);

double concurrence_pure(const PureState& psi, const Bipartition& split);
double gq_concurrence_pure(const PureState& psi, const Bipartition& split, double q);

// Exact two-qubit mixed-state concurrence (spin-flip eigenvalue formula).
double wootters_concurrence(const DensityMatrix& rho);

// q-measure of a 2(x)d mixed state given its concurrence value.
double gq_concurrence_2xd_mixed(const DensityMatrix& rho, double q, double concurrence_value);

}  // namespace gqm
