#pragma once

// Discrete L_p analysis: norms, weak quasinorms, cell-integrated Riesz
// kernels between measure spaces, adjoints, and lower-bound estimation of
// p->q operator norms by dual-exponent power iteration.

#include "charset/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace charset {

struct WeightedFunction {
  SpacePtr space;
  std::vector<double> values;  // one value per atom

  WeightedFunction() = default;
  WeightedFunction(SpacePtr sp, std::vector<double> vals)
      : space(std::move(sp)), values(std::move(vals)) {
    if (!space || values.size() != space->atoms.size())
      throw std::invalid_argument("value count must match atom count");
  }
};

inline double lp_norm(const WeightedFunction& f, double p) {
  if (p < 1) throw std::invalid_argument("lp_norm needs p >= 1");
  double acc = 0;
  for (size_t i = 0; i < f.values.size(); ++i)
    acc += std::pow(std::abs(f.values[i]), p) * f.space->weights[i];
  return std::pow(acc, 1.0 / p);
}

// Exact discrete weak-L_p quasinorm: sort |f| descending and maximize
// |f|_(k) * W_k^(1/p) over the cumulative weights W_k.
inline double weak_quasinorm(const WeightedFunction& f, double p) {
  if (p < 1) throw std::invalid_argument("weak_quasinorm needs p >= 1");
  const size_t n = f.values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    return std::abs(f.values[i]) > std::abs(f.values[j]);
  });
  double cum = 0, best = 0;
  for (size_t k = 0; k < n; ++k) {
    cum += f.space->weights[order[k]];
    best = std::max(best, std::abs(f.values[order[k]]) * std::pow(cum, 1.0 / p));
  }
  return best;
}

// Exact integral of |t-u|^(-lambda) over u in [a,b] via the closed-form
// antiderivative, split at the singularity when t lies inside.
inline double cell_kernel_integral(double t, double a, double b, double lambda) {
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("kernel exponent must be in (0,1)");
  if (!(a < b)) throw std::invalid_argument("empty cell");
  const double e = 1.0 - lambda;
  auto pw = [e](double x) { return std::pow(x, e); };
  if (t <= a) return (pw(b - t) - pw(a - t)) / e;
  if (t >= b) return (pw(t - a) - pw(t - b)) / e;
  return (pw(t - a) + pw(b - t)) / e;
}

// Dense cell-averaged kernel matrix. Entry (i,j) is the average of the
// kernel over source cell j seen from target atom i, so that
// (Tf)(t_i) = sum_j A[i][j] f_j w_j reproduces the integral operator
// exactly on piecewise-constant densities.
struct KernelMatrix {
  SpacePtr source;  // Lebesgue grid on (0,1)
  SpacePtr target;
  double lambda = 0;
  std::vector<double> entries;  // row-major, rows = target atoms

  size_t rows() const { return target->atoms.size(); }
  size_t cols() const { return source->atoms.size(); }
  double at(size_t i, size_t j) const { return entries[i * cols() + j]; }
  double& at(size_t i, size_t j) { return entries[i * cols() + j]; }
};

// Kernel matrix over an explicit cell partition of (0,1) given by its sorted
// edge list (edges.front() == 0, edges.back() == 1). Cell j spans
// [edges[j], edges[j+1]] and its atom is the midpoint.
inline KernelMatrix riesz_matrix_on_cells(double lambda, const std::vector<double>& edges,
                                          SpacePtr target) {
  if (!target) throw std::invalid_argument("null target space");
  if (edges.size() < 2 || edges.front() != 0.0 || edges.back() != 1.0)
    throw std::invalid_argument("cell edges must partition [0,1]");
  auto src = std::make_shared<DiscreteMeasureSpace>();
  double min_w = 1.0;
  for (size_t j = 0; j + 1 < edges.size(); ++j) {
    double w = edges[j + 1] - edges[j];
    if (w <= 0) throw std::invalid_argument("cell edges must strictly increase");
    src->atoms.push_back(0.5 * (edges[j] + edges[j + 1]));
    src->weights.push_back(w);
    min_w = std::min(min_w, w);
  }
  src->cell_diameter = min_w;
  src->total_mass = 1.0;
  KernelMatrix T;
  T.source = src;
  T.target = std::move(target);
  T.lambda = lambda;
  const size_t m = src->atoms.size();
  const size_t n = T.target->atoms.size();
  T.entries.resize(n * m);
  for (size_t i = 0; i < n; ++i) {
    double t = T.target->atoms[i];
    for (size_t j = 0; j < m; ++j)
      T.entries[i * m + j] =
          cell_kernel_integral(t, edges[j], edges[j + 1], lambda) / src->weights[j];
  }
  return T;
}

inline KernelMatrix riesz_matrix(double lambda, int source_cells, SpacePtr target) {
  std::vector<double> edges(static_cast<size_t>(source_cells) + 1);
  for (int j = 0; j <= source_cells; ++j)
    edges[static_cast<size_t>(j)] = static_cast<double>(j) / source_cells;
  edges.back() = 1.0;
  return riesz_matrix_on_cells(lambda, edges, std::move(target));
}

// Graded partition: a uniform base of `base_cells`, with every base cell
// containing points of `refine_near` split dyadically until its width is at
// most `min_width`. Singular-kernel quadrature needs source resolution at
// the scale of the target measure, which a uniform grid of desk-scale size
// cannot provide.
inline std::vector<double> graded_edges(int base_cells, const std::vector<double>& refine_near,
                                        double min_width) {
  std::vector<double> edges;
  edges.reserve(base_cells + 1);
  for (int j = 0; j <= base_cells; ++j)
    edges.push_back(static_cast<double>(j) / base_cells);
  edges.back() = 1.0;
  auto touches = [&](double a, double b) {
    auto it = std::lower_bound(refine_near.begin(), refine_near.end(), a);
    return it != refine_near.end() && *it <= b;
  };
  std::vector<double> out;
  out.push_back(0.0);
  for (size_t j = 0; j + 1 < edges.size(); ++j) {
    // split [a,b] recursively; keep an explicit stack of pending intervals
    std::vector<std::pair<double, double>> stack{{edges[j], edges[j + 1]}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (b - a > min_width && touches(a, b)) {
        double mid = 0.5 * (a + b);
        stack.push_back({mid, b});
        stack.push_back({a, mid});
      } else {
        out.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline WeightedFunction apply(const KernelMatrix& T, const WeightedFunction& f) {
  if (f.values.size() != T.cols())
    throw std::invalid_argument("function does not live on the source space");
  std::vector<double> out(T.rows(), 0.0);
  const auto& w = T.source->weights;
  for (size_t i = 0; i < T.rows(); ++i) {
    double acc = 0;
    const double* row = T.entries.data() + i * T.cols();
    for (size_t j = 0; j < T.cols(); ++j) acc += row[j] * f.values[j] * w[j];
    out[i] = acc;
  }
  return WeightedFunction(T.target, std::move(out));
}

// Adjoint with respect to the weighted pairings: (T*g)_j = sum_i A[i][j]
// g_i w^tgt_i, i.e. the transpose with source and target exchanged. The
// pairing identity <Tf, g>_tgt = <f, T*g>_src holds exactly.
inline KernelMatrix adjoint(const KernelMatrix& T) {
  KernelMatrix S;
  S.source = T.target;
  S.target = T.source;
  S.lambda = T.lambda;
  S.entries.resize(T.entries.size());
  for (size_t i = 0; i < T.rows(); ++i)
    for (size_t j = 0; j < T.cols(); ++j) S.entries[j * T.rows() + i] = T.at(i, j);
  return S;
}

struct OpnormOptions {
  double tol = 1e-8;
  int max_iter = 10000;
  int restarts = 8;
  std::uint64_t seed = 1729;
};

struct OpnormResult {
  double value = 0;  // certified lower bound, attained by the witness
  std::vector<double> witness;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

inline double signed_pow(double x, double e) {
  if (x == 0) return 0;
  return (x < 0 ? -1.0 : 1.0) * std::pow(std::abs(x), e);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  // splitmix64 step keyed by the task index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Estimate sup ||Tf||_q / ||f||_p over f != 0 for an entrywise-nonnegative
// kernel by dual-exponent power iteration with random positive restarts.
// The returned value is a certified lower bound: it is the Rayleigh ratio of
// the returned witness.
inline OpnormResult opnorm_pq(const KernelMatrix& T, double p, double q,
                              const OpnormOptions& opts = {}) {
  if (!(p > 1 && q > 1)) throw std::invalid_argument("exponents must lie in (1,inf)");
  for (double e : T.entries)
    if (e < 0) throw std::invalid_argument("power iteration needs nonnegative entries");
  const size_t m = T.cols();
  KernelMatrix Tt = adjoint(T);
  OpnormResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> f(m, 1.0);
    if (r > 0) {
      std::mt19937_64 rng(detail::mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
      for (auto& x : f) x = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    WeightedFunction fw(T.source, std::move(f));
    double nf = lp_norm(fw, p);
    for (auto& x : fw.values) x /= nf;
    double prev = -1;
    bool conv = false;
    int it = 0;
    double val = 0;
    for (; it < opts.max_iter; ++it) {
      WeightedFunction g = apply(T, fw);
      val = lp_norm(g, q);
      if (val == 0) break;  // zero operator (or kernel annihilates f)
      if (prev >= 0 && std::abs(val - prev) <= opts.tol * std::max(val, 1e-300)) {
        conv = true;
        break;
      }
      prev = val;
      if (it + 1 == opts.max_iter) break;  // keep val paired with this witness
      for (auto& x : g.values) x = detail::signed_pow(x, q - 1);
      WeightedFunction u = apply(Tt, g);
      for (auto& x : u.values) x = detail::signed_pow(x, 1.0 / (p - 1));
      double nu = lp_norm(u, p);
      if (nu == 0) break;
      for (auto& x : u.values) x /= nu;
      fw.values = std::move(u.values);
    }
    if (val > best.value) {
      best.value = val;
      best.witness = fw.values;
      best.converged = conv;
      best.iterations = it;
    } else if (best.witness.empty()) {
      best.witness = fw.values;
      best.converged = conv;
      best.iterations = it;
    }
  }
  return best;
}

}  // namespace charset
