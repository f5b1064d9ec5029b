#pragma once

// Convex-roof minimization over finite pure-state ensembles.  Ensembles of
// size m are parametrized by m x r isometric mixings of the eigen-ensemble
// (r = rank); the isometry is a product of Givens rotations plus column
// phases, optimized by coordinate descent with multi-start.

#include <functional>

#include "gqm/measures.hpp"
#include "gqm/qcore.hpp"

namespace gqm {

struct RoofConfig {
  int ensemble_size = 0;  // 0 = automatic: clamp(r + 4, r, 16)
  int restarts = 4;       // restart 0 always starts at the eigen-ensemble
  int max_iters = 500;    // coordinate-descent sweeps per restart
  double step_tolerance = 1e-9;  // stop when a full sweep improves less
  uint64_t seed = 1;
};

struct Ensemble {
  std::vector<double> weights;    // positive, sum to one
  std::vector<PureState> states;  // normalized members
};

struct RoofResult {
  double value = 0.0;
  Ensemble best_ensemble;
  bool converged = false;    // best restart stopped on step_tolerance
  int iterations_used = 0;   // sweeps consumed by the best restart
};

// Ensemble realized by an m x r isometry (columns orthonormal) applied to the
// scaled eigenvectors of rho; members with weight below 1e-14 are dropped.
Ensemble ensemble_from_mixing(const DensityMatrix& rho, const CMat& mixing);

double ensemble_average(const Ensemble& ens,
                        const std::function<double(const PureState&)>& measure);

// Generic roof of a nonnegative pure-state functional.
RoofResult roof_minimize(const DensityMatrix& rho,
                         const std::function<double(const PureState&)>& measure,
                         const RoofConfig& cfg);

// Fast paths for the two standard measures.
RoofResult roof_concurrence(const DensityMatrix& rho, const Bipartition& split,
                            const RoofConfig& cfg);
RoofResult roof_gq(const DensityMatrix& rho, const Bipartition& split, double q,
                   const RoofConfig& cfg);

// |roof(Gq) - h_q(C^2)| for a 2(x)d state: C is the exact two-qubit value
// when d = 2, otherwise the concurrence roof.
double verify_theorem1(const DensityMatrix& rho, double q, const RoofConfig& cfg);

}  // namespace gqm
