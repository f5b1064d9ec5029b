#include "gqm/roof.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace gqm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kWeightFloor = 1e-15;

void check(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Gather table mapping (a, b) of a bipartition to flat indices; built once,
// then every Gram-matrix accumulation is a strided walk.
struct SplitView {
  int da = 0, db = 0;
  std::vector<long> index;  // index[a * db + b]
};

SplitView make_view(const DimVector& dims, const std::vector<int>& side_a) {
  check(!side_a.empty(), "Bipartition: side A is empty");
  for (size_t j = 0; j < side_a.size(); ++j) {
    check(side_a[j] >= 0 && side_a[j] < dims.size(), "Bipartition: index out of range");
    if (j > 0) check(side_a[j] > side_a[j - 1], "Bipartition: indices must increase");
  }
  const auto side_b = complement_subsystems(dims, side_a);
  check(!side_b.empty(), "Bipartition: side B is empty");
  const auto offs_a = subsystem_offsets(dims, side_a);
  const auto offs_b = subsystem_offsets(dims, side_b);
  SplitView v;
  v.da = static_cast<int>(offs_a.size());
  v.db = static_cast<int>(offs_b.size());
  v.index.resize(static_cast<size_t>(v.da) * v.db);
  for (int a = 0; a < v.da; ++a)
    for (int b = 0; b < v.db; ++b)
      v.index[static_cast<size_t>(a) * v.db + b] = offs_a[static_cast<size_t>(a)] + offs_b[static_cast<size_t>(b)];
  return v;
}

// Prefer the smaller side: the nonzero reduced spectrum is the same on both.
SplitView make_small_view(const DimVector& dims, const Bipartition& split) {
  SplitView v = make_view(dims, split.side_a);
  if (v.da <= v.db) return v;
  return make_view(dims, complement_subsystems(dims, split.side_a));
}

// w * C(psi/sqrt(w)) for sub-normalized psi with <psi|psi> = w:
// sqrt(2 (w^2 - Tr rho_A~^2)) where rho_A~ is the unnormalized reduction.
// eps > 0 rounds the kink at zero: w (sqrt(C^2 + eps^2) - eps), which lies
// within w*eps below the true value and matches it exactly at eps = 0.
double weighted_concurrence(const cplx* psi, double w, double eps, const SplitView& v,
                            std::vector<cplx>& gram) {
  if (w < kWeightFloor) return 0.0;
  const int da = v.da, db = v.db;
  double tr2;
  if (da == 2) {
    double r00 = 0, r11 = 0;
    cplx r01 = 0;
    const long* ix0 = v.index.data();
    const long* ix1 = v.index.data() + db;
    for (int b = 0; b < db; ++b) {
      const cplx x = psi[ix0[b]], y = psi[ix1[b]];
      r00 += std::norm(x);
      r11 += std::norm(y);
      r01 += x * std::conj(y);
    }
    tr2 = r00 * r00 + r11 * r11 + 2.0 * std::norm(r01);
  } else {
    gram.assign(static_cast<size_t>(da) * da, 0.0);
    for (int a = 0; a < da; ++a) {
      const long* ixa = v.index.data() + static_cast<size_t>(a) * db;
      for (int c = a; c < da; ++c) {
        const long* ixc = v.index.data() + static_cast<size_t>(c) * db;
        cplx acc = 0;
        for (int b = 0; b < db; ++b) acc += psi[ixa[b]] * std::conj(psi[ixc[b]]);
        gram[static_cast<size_t>(a) * da + c] = acc;
      }
    }
    tr2 = 0;
    for (int a = 0; a < da; ++a)
      for (int c = a; c < da; ++c)
        tr2 += (a == c ? 1.0 : 2.0) * std::norm(gram[static_cast<size_t>(a) * da + c]);
  }
  const double c2w2 = std::max(0.0, 2.0 * (w * w - tr2));
  if (eps <= 0.0) return std::sqrt(c2w2);
  return std::sqrt(c2w2 + eps * eps * w * w) - eps * w;
}

// w * Gq(psi/sqrt(w)): needs the reduced spectrum, so dA = 2 uses the closed
// 2x2 eigenvalues and larger sides fall back to the Jacobi solver.
// eps rounds the kink the same way: w ((S + eps^q)^(1/q) - eps).
double weighted_gq(const cplx* psi, double w, double q, double eps, const SplitView& v,
                   std::vector<cplx>& gram) {
  if (w < kWeightFloor) return 0.0;
  const int da = v.da, db = v.db;
  double traceq = 0;
  if (da == 2) {
    double r00 = 0, r11 = 0;
    cplx r01 = 0;
    const long* ix0 = v.index.data();
    const long* ix1 = v.index.data() + db;
    for (int b = 0; b < db; ++b) {
      const cplx x = psi[ix0[b]], y = psi[ix1[b]];
      r00 += std::norm(x);
      r11 += std::norm(y);
      r01 += x * std::conj(y);
    }
    const double half = 0.5 * (r00 + r11);
    const double disc = std::sqrt(std::max(0.0, half * half - (r00 * r11 - std::norm(r01))));
    const double mu0 = std::max(0.0, (half + disc) / w);
    const double mu1 = std::max(0.0, (half - disc) / w);
    traceq = std::pow(mu0, q) + (mu1 > 0 ? std::pow(mu1, q) : 0.0);
  } else {
    CMat red(da, da);
    for (int a = 0; a < da; ++a) {
      const long* ixa = v.index.data() + static_cast<size_t>(a) * db;
      for (int c = a; c < da; ++c) {
        const long* ixc = v.index.data() + static_cast<size_t>(c) * db;
        cplx acc = 0;
        for (int b = 0; b < db; ++b) acc += psi[ixa[b]] * std::conj(psi[ixc[b]]);
        red(a, c) = acc / w;
        red(c, a) = std::conj(acc) / w;
      }
    }
    EigenSystem es = hermitian_eigensystem(red);
    for (double lam : es.values)
      if (lam > 0) traceq += std::pow(std::min(lam, 1.0), q);
    (void)gram;
  }
  const double s = std::max(0.0, 1.0 - traceq);
  if (eps <= 0.0) return w * std::pow(s, 1.0 / q);
  return w * (std::pow(s + std::pow(eps, q), 1.0 / q) - eps);
}

struct EigenBasis {
  int dim = 0, rank = 0;
  std::vector<cplx> scaled;  // dim x rank row-major: sqrt(lambda_j) v_j
  std::vector<double> lambda;
};

EigenBasis eigen_basis(const DensityMatrix& rho) {
  EigenSystem es = hermitian_eigensystem(rho.m);
  EigenBasis eb;
  eb.dim = rho.dim();
  for (double lam : es.values) {
    if (lam < -1e-10) throw std::runtime_error("roof: state not positive semidefinite");
    if (lam > 1e-12) eb.lambda.push_back(lam);
  }
  eb.rank = static_cast<int>(eb.lambda.size());
  eb.scaled.resize(static_cast<size_t>(eb.dim) * eb.rank);
  for (int d = 0; d < eb.dim; ++d)
    for (int j = 0; j < eb.rank; ++j)
      eb.scaled[static_cast<size_t>(d) * eb.rank + j] =
          std::sqrt(eb.lambda[static_cast<size_t>(j)]) * es.vectors(d, j);
  return eb;
}

// Coordinate-descent roof engine over the Givens/phase parametrization.
class RoofEngine {
 public:
  // (sub-normalized amplitudes, weight, smoothing eps) -> weighted measure
  using WeightedFn = std::function<double(const cplx*, double, double)>;

  RoofEngine(const DensityMatrix& rho, WeightedFn fn, const RoofConfig& cfg)
      : rho_(rho), fn_(std::move(fn)), cfg_(cfg), eb_(eigen_basis(rho)) {
    check(cfg_.restarts >= 1, "RoofConfig: restarts must be >= 1");
    check(cfg_.max_iters >= 1, "RoofConfig: max_iters must be >= 1");
    check(cfg_.step_tolerance > 0.0, "RoofConfig: step_tolerance must be positive");
    const int r = eb_.rank;
    if (cfg_.ensemble_size == 0)
      m_ = std::max(r, std::min(r + 4, 16));
    else {
      check(cfg_.ensemble_size >= r, "RoofConfig: ensemble smaller than the state's rank");
      check(cfg_.ensemble_size <= 64, "RoofConfig: ensemble size above 64");
      m_ = cfg_.ensemble_size;
    }
    for (int j = 0; j < r; ++j)
      for (int i = j + 1; i < m_; ++i) pairs_.push_back({j, i});
    n_theta_ = static_cast<int>(pairs_.size());
    params_.assign(static_cast<size_t>(2 * n_theta_ + r), 0.0);
    v_.resize(static_cast<size_t>(m_) * r);
    members_.resize(static_cast<size_t>(m_) * eb_.dim);
  }

  RoofResult run() {
    RoofResult out;
    if (eb_.rank == 1) {  // pure state: the roof is the measure itself
      std::fill(params_.begin(), params_.end(), 0.0);
      out.value = evaluate();
      out.converged = true;
      out.best_ensemble = realize();
      return out;
    }

    double best_f = 0.0;
    std::vector<double> best_params;
    bool best_conv = false;
    int best_iters = 0;
    for (int restart = 0; restart < cfg_.restarts; ++restart) {
      init_params(restart);
      bool conv = false;
      int sweeps = 0;
      // Graduated smoothing: the measures have kinked valleys near
      // zero-measure decompositions that stall axis-aligned descent, so
      // descend on progressively sharper objectives before the exact one.
      for (double eps : {0.2, 0.05, 0.01, 0.0}) {
        eps_ = eps;
        double fs = evaluate();
        descend(fs, conv, sweeps);
      }
      eps_ = 0.0;
      double f = evaluate();
      // Random-direction probes can still slide along any diagonal valley
      // floor that blocks per-coordinate moves.
      f = polish(f, restart, sweeps);
      f = descend(f, conv, sweeps);
      if (best_params.empty() || f < best_f) {
        best_f = f;
        best_params = params_;
        best_conv = conv;
        best_iters = sweeps;
      }
    }
    params_ = best_params;
    out.value = evaluate();
    out.converged = best_conv;
    out.iterations_used = best_iters;
    out.best_ensemble = realize();
    return out;
  }

  CMat mixing() const {
    CMat mx(m_, eb_.rank);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < eb_.rank; ++j) mx(i, j) = v_[static_cast<size_t>(i) * eb_.rank + j];
    return mx;
  }

 private:
  struct Pair {
    int j, i;
  };

  void init_params(int restart) {
    if (restart == 0) {
      std::fill(params_.begin(), params_.end(), 0.0);
      return;
    }
    Rng rng(mix_seed(cfg_.seed, static_cast<uint64_t>(restart)));
    for (int k = 0; k < n_theta_; ++k) params_[static_cast<size_t>(k)] = rng.uniform(0.0, kPi);
    for (int k = 0; k < n_theta_; ++k)
      params_[static_cast<size_t>(n_theta_ + k)] = rng.uniform(0.0, kTwoPi);
    for (int j = 0; j < eb_.rank; ++j)
      params_[static_cast<size_t>(2 * n_theta_ + j)] = rng.uniform(0.0, kTwoPi);
  }

  // V = (product of Givens rotations, reversed elimination order) * phases,
  // embedded as the first r columns of an m x m unitary.
  void build_v() {
    const int r = eb_.rank;
    std::fill(v_.begin(), v_.end(), cplx(0.0));
    for (int j = 0; j < r; ++j) {
      const double beta = params_[static_cast<size_t>(2 * n_theta_ + j)];
      v_[static_cast<size_t>(j) * r + j] = std::polar(1.0, beta);
    }
    for (int idx = n_theta_ - 1; idx >= 0; --idx) {
      const int pj = pairs_[static_cast<size_t>(idx)].j;
      const int pi = pairs_[static_cast<size_t>(idx)].i;
      const double th = params_[static_cast<size_t>(idx)];
      const double ph = params_[static_cast<size_t>(n_theta_ + idx)];
      const double c = std::cos(th), s = std::sin(th);
      const cplx e = std::polar(1.0, ph);
      cplx* rowj = v_.data() + static_cast<size_t>(pj) * r;
      cplx* rowi = v_.data() + static_cast<size_t>(pi) * r;
      for (int col = 0; col < r; ++col) {
        const cplx a = rowj[col], b = rowi[col];
        rowj[col] = c * a - e * (s * b);
        rowi[col] = std::conj(e) * (s * a) + c * b;
      }
    }
  }

  double evaluate() {
    build_v();
    const int r = eb_.rank, d = eb_.dim;
    double total = 0.0;
    for (int i = 0; i < m_; ++i) {
      cplx* psi = members_.data() + static_cast<size_t>(i) * d;
      const cplx* vrow = v_.data() + static_cast<size_t>(i) * r;
      double w = 0.0;
      for (int dd = 0; dd < d; ++dd) {
        const cplx* e = eb_.scaled.data() + static_cast<size_t>(dd) * r;
        cplx acc = 0;
        for (int j = 0; j < r; ++j) acc += vrow[j] * e[j];
        psi[dd] = acc;
        w += std::norm(acc);
      }
      total += fn_(psi, w, eps_);
    }
    return total;
  }

  double descend(double f, bool& conv, int& sweeps) {
    for (; sweeps < cfg_.max_iters; ++sweeps) {
      const double before = f;
      f = sweep_once(f);
      if (before - f < cfg_.step_tolerance) {
        conv = true;
        ++sweeps;
        return f;
      }
    }
    conv = false;
    return f;
  }

  // Random-direction line searches: a unit direction mixes every coordinate,
  // so it can slide along a diagonal valley floor that blocks axis moves.
  double polish(double f, int restart, int& sweeps) {
    const int n = static_cast<int>(params_.size());
    Rng rng(mix_seed(cfg_.seed, 7777 + static_cast<uint64_t>(restart)));
    std::vector<double> dir(static_cast<size_t>(n)), saved;
    double window = kPi / 6.0;
    int fails = 0;
    for (int round = 0; round < 120 && window > 1e-7; ++round) {
      double norm2 = 0.0;
      for (auto& d : dir) {
        d = rng.normal();
        norm2 += d * d;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& d : dir) d *= inv;
      saved = params_;
      auto probe = [&](double t) {
        for (int k = 0; k < n; ++k)
          params_[static_cast<size_t>(k)] = saved[static_cast<size_t>(k)] + t * dir[static_cast<size_t>(k)];
        return evaluate();
      };
      double best_t = 0.0, best_f = f;
      for (int k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        const double t = window * k / 3.0;
        const double ft = probe(t);
        if (ft < best_f) {
          best_f = ft;
          best_t = t;
        }
      }
      const double gr = 0.6180339887498949;
      double a = best_t - window / 3.0, b = best_t + window / 3.0;
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double f1 = probe(x1), f2 = probe(x2);
      for (int it = 0; it < 30; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = probe(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = probe(x2);
        }
      }
      double cand_t = (f1 < f2) ? x1 : x2;
      double cand_f = std::min(f1, f2);
      if (best_f < cand_f) {
        cand_f = best_f;
        cand_t = best_t;
      }
      if (cand_f < f - 1e-15) {
        probe(cand_t);
        f = cand_f;
        fails = 0;
      } else {
        params_ = saved;
        if (++fails >= 4) {
          fails = 0;
          window *= 0.5;
        }
      }
      ++sweeps;
    }
    return f;
  }

  // One coordinate-descent pass: coarse scan over the parameter's period,
  // then golden-section refinement; only improvements are kept.
  double sweep_once(double f) {
    const int r = eb_.rank;
    const int total_params = 2 * n_theta_ + r;
    for (int p = 0; p < total_params; ++p) {
      // Rotation angles only need a pi-wide search window (elimination needs
      // theta in [0, pi/2]); phases need the full circle.
      const double window = (p < n_theta_) ? kPi : kTwoPi;
      const double x0 = params_[static_cast<size_t>(p)];
      double best_delta = 0.0, best_f = f;
      for (int k = 1; k <= 5; ++k) {
        const double delta = window * k / 6.0;
        params_[static_cast<size_t>(p)] = x0 + delta;
        const double fk = evaluate();
        if (fk < best_f) {
          best_f = fk;
          best_delta = delta;
        }
      }
      // golden-section around the best coarse offset
      const double gr = 0.6180339887498949;
      double a = best_delta - window / 6.0, b = best_delta + window / 6.0;
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      params_[static_cast<size_t>(p)] = x0 + x1;
      double f1 = evaluate();
      params_[static_cast<size_t>(p)] = x0 + x2;
      double f2 = evaluate();
      for (int it = 0; it < 30; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          params_[static_cast<size_t>(p)] = x0 + x1;
          f1 = evaluate();
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          params_[static_cast<size_t>(p)] = x0 + x2;
          f2 = evaluate();
        }
      }
      const double xg = (f1 < f2) ? x1 : x2;
      const double fg = std::min(f1, f2);
      double new_x = x0, new_f = f;
      if (fg < new_f) {
        new_f = fg;
        new_x = x0 + xg;
      }
      if (best_f < new_f) {
        new_f = best_f;
        new_x = x0 + best_delta;
      }
      // Wrap at 2*pi only: every parameter is exactly 2*pi-periodic, while a
      // pi shift of a mid-chain rotation is not an exact symmetry.
      params_[static_cast<size_t>(p)] = std::fmod(new_x, kTwoPi);
      if (params_[static_cast<size_t>(p)] < 0) params_[static_cast<size_t>(p)] += kTwoPi;
      f = new_f;
    }
    return f;
  }

  Ensemble realize() {
    evaluate();  // refresh v_ and members_ from params_
    Ensemble ens;
    const int d = eb_.dim;
    for (int i = 0; i < m_; ++i) {
      const cplx* psi = members_.data() + static_cast<size_t>(i) * d;
      double w = 0.0;
      for (int dd = 0; dd < d; ++dd) w += std::norm(psi[dd]);
      if (w < 1e-14) continue;
      std::vector<cplx> amp(static_cast<size_t>(d));
      const double inv = 1.0 / std::sqrt(w);
      for (int dd = 0; dd < d; ++dd) amp[static_cast<size_t>(dd)] = psi[dd] * inv;
      ens.weights.push_back(w);
      ens.states.emplace_back(rho_.dims, std::move(amp));
    }
    return ens;
  }

  const DensityMatrix& rho_;
  WeightedFn fn_;
  RoofConfig cfg_;
  EigenBasis eb_;
  double eps_ = 0.0;
  int m_ = 0;
  int n_theta_ = 0;
  std::vector<Pair> pairs_;
  std::vector<double> params_;
  std::vector<cplx> v_;        // m x r mixing isometry
  std::vector<cplx> members_;  // m x dim sub-normalized members
};

}  // namespace

Ensemble ensemble_from_mixing(const DensityMatrix& rho, const CMat& mixing) {
  const EigenBasis eb = eigen_basis(rho);
  check(mixing.cols == eb.rank, "ensemble_from_mixing: columns must match the rank");
  check(mixing.rows >= eb.rank, "ensemble_from_mixing: fewer rows than rank");
  for (int j = 0; j < mixing.cols; ++j)
    for (int k = 0; k < mixing.cols; ++k) {
      cplx dot = 0;
      for (int i = 0; i < mixing.rows; ++i) dot += std::conj(mixing(i, j)) * mixing(i, k);
      if (std::abs(dot - (j == k ? cplx(1.0) : cplx(0.0))) > 1e-10)
        throw std::invalid_argument("ensemble_from_mixing: mixing is not an isometry");
    }

  Ensemble ens;
  double wsum = 0.0;
  for (int i = 0; i < mixing.rows; ++i) {
    std::vector<cplx> psi(static_cast<size_t>(eb.dim), 0.0);
    double w = 0.0;
    for (int d = 0; d < eb.dim; ++d) {
      cplx acc = 0;
      for (int j = 0; j < eb.rank; ++j)
        acc += mixing(i, j) * eb.scaled[static_cast<size_t>(d) * eb.rank + j];
      psi[static_cast<size_t>(d)] = acc;
      w += std::norm(acc);
    }
    wsum += w;
    if (w < 1e-14) continue;
    const double inv = 1.0 / std::sqrt(w);
    for (auto& c : psi) c *= inv;
    ens.weights.push_back(w);
    ens.states.emplace_back(rho.dims, std::move(psi));
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("ensemble_from_mixing: weights do not sum to one");
  return ens;
}

double ensemble_average(const Ensemble& ens,
                        const std::function<double(const PureState&)>& measure) {
  check(!ens.weights.empty() && ens.weights.size() == ens.states.size(),
        "ensemble_average: malformed ensemble");
  double wsum = 0.0, acc = 0.0;
  for (size_t i = 0; i < ens.weights.size(); ++i) {
    check(ens.weights[i] > 0.0, "ensemble_average: weights must be positive");
    wsum += ens.weights[i];
    acc += ens.weights[i] * measure(ens.states[i]);
  }
  check(std::abs(wsum - 1.0) <= 1e-10, "ensemble_average: weights must sum to one");
  return acc;
}

RoofResult roof_minimize(const DensityMatrix& rho,
                         const std::function<double(const PureState&)>& measure,
                         const RoofConfig& cfg) {
  const DimVector dims = rho.dims;
  // Generic measures get no smoothing: eps only rounds the built-in kinks.
  auto weighted = [&measure, dims](const cplx* psi, double w, double) -> double {
    if (w < kWeightFloor) return 0.0;
    std::vector<cplx> amp(static_cast<size_t>(dims.total()));
    const double inv = 1.0 / std::sqrt(w);
    for (long d = 0; d < dims.total(); ++d) amp[static_cast<size_t>(d)] = psi[d] * inv;
    const double val = measure(PureState(dims, std::move(amp)));
    if (val < -1e-12) throw std::invalid_argument("roof_minimize: measure must be nonnegative");
    return w * std::max(0.0, val);
  };
  RoofEngine engine(rho, weighted, cfg);
  return engine.run();
}

RoofResult roof_concurrence(const DensityMatrix& rho, const Bipartition& split,
                            const RoofConfig& cfg) {
  const SplitView view = make_small_view(rho.dims, split);
  auto gram = std::make_shared<std::vector<cplx>>();
  auto weighted = [view, gram](const cplx* psi, double w, double eps) {
    return weighted_concurrence(psi, w, eps, view, *gram);
  };
  RoofEngine engine(rho, weighted, cfg);
  return engine.run();
}

RoofResult roof_gq(const DensityMatrix& rho, const Bipartition& split, double q,
                   const RoofConfig& cfg) {
  validate_q(q);
  const SplitView view = make_small_view(rho.dims, split);
  auto gram = std::make_shared<std::vector<cplx>>();
  auto weighted = [view, q, gram](const cplx* psi, double w, double eps) {
    return weighted_gq(psi, w, q, eps, view, *gram);
  };
  RoofEngine engine(rho, weighted, cfg);
  return engine.run();
}

double verify_theorem1(const DensityMatrix& rho, double q, const RoofConfig& cfg) {
  validate_q(q);
  check(rho.dims.size() == 2 && rho.dims[0] == 2, "verify_theorem1: state must be 2(x)d");
  const Bipartition split{{0}};
  const double gq_roof = roof_gq(rho, split, q, cfg).value;
  const double c = (rho.dims[1] == 2) ? wootters_concurrence(rho)
                                      : roof_concurrence(rho, split, cfg).value;
  return std::abs(gq_roof - h_q(std::min(1.0, c * c), q));
}

}  // namespace gqm
