#pragma once

// Dense complex linear algebra for small multipartite quantum states:
// flattened pure states over arbitrary local dimensions, partial traces,
// a cyclic-Jacobi Hermitian eigensolver, and a portable seeded sampler
// for Haar-random pure/mixed states.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace gqm {

using cplx = std::complex<double>;

// Ordered list of local dimensions (d1, ..., dN), each >= 2.  Subsystem 0
// is the slowest-varying index of the flattened amplitude vector, i.e.
// flat = ((i1*d2 + i2)*d3 + i3)*...
class DimVector {
 public:
  DimVector() = default;
  DimVector(std::initializer_list<int> d) : DimVector(std::vector<int>(d)) {}
  explicit DimVector(std::vector<int> d);

  int size() const { return static_cast<int>(dims_.size()); }
  int operator[](int i) const { return dims_[static_cast<size_t>(i)]; }
  long total() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }
  bool operator==(const DimVector& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
  long total_ = 0;
};

// Row-major dense complex matrix.
struct CMat {
  int rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static CMat identity(int n);
};

// Normalized state vector over the given dimensions.
struct PureState {
  DimVector dims;
  std::vector<cplx> amp;

  PureState() = default;
  PureState(DimVector d, std::vector<cplx> a);  // checks length and unit norm (1e-12)
};

// Hermitian, trace-one, positive-semidefinite matrix over the given dimensions.
// Hermiticity and trace are checked at construction (1e-12); positivity is
// enforced where eigenvalues are consumed (see hermitian_spectrum).
struct DensityMatrix {
  DimVector dims;
  CMat m;

  DensityMatrix() = default;
  DensityMatrix(DimVector d, CMat mat);
  int dim() const { return m.rows; }
};

struct Spectrum {
  std::vector<double> values;  // descending, clamped to [0, 1]
};

struct EigenSystem {
  std::vector<double> values;  // descending
  CMat vectors;                // columns are the matching orthonormal eigenvectors
};

// Deterministic cross-platform RNG: std::mt19937_64 raw draws mapped to
// doubles by hand (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  uint64_t raw() { return gen_(); }
  double uniform();             // (0, 1]
  double uniform(double a, double b);  // [a, b)
  double normal();              // standard normal via Box-Muller
  cplx complex_normal();        // re, im independent standard normals

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer; decorrelates (master seed, task index) pairs.
uint64_t mix_seed(uint64_t master, uint64_t task);

// Flat-index offsets of every joint index of the listed subsystems, row-major
// over that list; offsets(subs) and offsets(complement) add up to any flat
// index.  Used to gather reductions without materializing permutations.
std::vector<long> subsystem_offsets(const DimVector& dims, const std::vector<int>& subs);
std::vector<int> complement_subsystems(const DimVector& dims, const std::vector<int>& subs);

PureState tensor_product(const std::vector<PureState>& factors);
DensityMatrix projector(const PureState& psi);

// Reduce onto the subsystems in `keep` (strictly increasing indices); the
// result's subsystem order is the order of `keep`.
DensityMatrix reduced_state(const PureState& psi, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Cyclic Jacobi; iterates until the off-diagonal Frobenius norm is below
// 1e-13 (throws after 100 sweeps without convergence).
EigenSystem hermitian_eigensystem(const CMat& h);

// Eigenvalues of a density matrix, descending.  Values in [-1e-10, 0) are
// clamped to 0 (no renormalization); anything below -1e-10 throws.
Spectrum hermitian_spectrum(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);  // Tr rho^2

PureState haar_random_pure(const DimVector& dims, uint64_t seed);

// Rank-r mixed state: Haar pure state on dims (+) a rank-r ancilla, ancilla
// traced out.  rank must be in [1, total dimension].
DensityMatrix random_mixed(const DimVector& dims, int rank, uint64_t seed);

CMat haar_random_unitary(int n, Rng& rng);
PureState apply_local_unitary(const PureState& psi, int subsystem, const CMat& u);

}  // namespace gqm
