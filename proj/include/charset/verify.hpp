#pragma once

// Desk-scale experiments: boundedness growth scans for the Riesz potential
// on Cantor targets, the non-compactness witness sequence, weak-type ratio
// scans, operator-norm duality, finite Rademacher factorizations, stable
// variates, and the subspace constructions on [0,1/2] + [1/2,1].

#include "charset/analysis.hpp"
#include "charset/region.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace charset {

// Classification thresholds for the fitted growth exponent of log(norm)
// against log(atom count).
inline constexpr double kBoundedExponent = 0.02;
inline constexpr double kUnboundedExponent = 0.08;

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline double exponential1(std::mt19937_64& rng) {
  return -std::log1p(-uniform01(rng));
}
inline double normal01(std::mt19937_64& rng) {
  // Box-Muller; one value per call keeps the stream layout simple
  double u = uniform01(rng), v = uniform01(rng);
  u = std::max(u, 0x1.0p-60);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

// Deterministic index-sharded parallel loop; results must be written to
// pre-sized slots so the merge is order-independent.
inline void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const int workers = std::min<size_t>(jobs, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = static_cast<size_t>(w); i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Boundedness growth scan

struct ScanOptions {
  int m_factor = 4;  // base source cells per level: m = m_factor * 2^n
  // Refine base cells near the target atoms down to the fractal cell width.
  // A uniform grid caps the observable norm growth at the source-cell scale,
  // which is coarser than the concentration scale the scan measures.
  bool graded = true;
  OpnormOptions opnorm{};
  int jobs = 1;
  std::uint64_t seed = 1729;
};

struct GrowthReport {
  double lambda = 0, alpha = 0;
  std::string inv_p, inv_q;  // exact rationals as given
  double inv_p_val = 0, inv_q_val = 0;
  std::vector<int> levels;
  std::vector<long> atom_counts;
  std::vector<double> norms;
  double fitted_exponent = 0;
  std::string classification;  // bounded | unbounded | inconclusive
};

inline std::vector<GrowthReport> boundedness_scan(double lambda, double alpha,
                                                  const std::vector<Q2Point>& points,
                                                  const std::vector<int>& levels,
                                                  const ScanOptions& opts = {}) {
  if (points.empty() || levels.empty())
    throw std::invalid_argument("scan needs points and levels");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("levels must be ascending");

  // Shared kernel matrices per level.
  std::vector<KernelMatrix> mats(levels.size());
  detail::parallel_for(levels.size(), opts.jobs, [&](size_t li) {
    auto target = std::make_shared<DiscreteMeasureSpace>(cantor_build(alpha, levels[li]));
    if (opts.graded) {
      auto edges = graded_edges(opts.m_factor << levels[li], target->atoms,
                                target->cell_diameter);
      mats[li] = riesz_matrix_on_cells(lambda, edges, target);
    } else {
      mats[li] = riesz_matrix(lambda, opts.m_factor << levels[li], target);
    }
  });

  std::vector<GrowthReport> reports(points.size());
  for (size_t pi = 0; pi < points.size(); ++pi) {
    auto& rep = reports[pi];
    rep.lambda = lambda;
    rep.alpha = alpha;
    rep.inv_p = rat_str(points[pi].alpha);
    rep.inv_q = rat_str(points[pi].beta);
    rep.inv_p_val = rat_to_double(points[pi].alpha);
    rep.inv_q_val = rat_to_double(points[pi].beta);
    rep.levels = levels;
    rep.atom_counts.assign(levels.size(), 0);
    rep.norms.assign(levels.size(), 0.0);
  }

  std::vector<std::pair<size_t, size_t>> tasks;
  for (size_t pi = 0; pi < points.size(); ++pi)
    for (size_t li = 0; li < levels.size(); ++li) tasks.emplace_back(pi, li);

  detail::parallel_for(tasks.size(), opts.jobs, [&](size_t ti) {
    auto [pi, li] = tasks[ti];
    double p = 1.0 / rat_to_double(points[pi].alpha);
    double q = 1.0 / rat_to_double(points[pi].beta);
    OpnormOptions onorm = opts.opnorm;
    onorm.seed = detail::mix_seed(opts.seed, ti);
    auto res = opnorm_pq(mats[li], p, q, onorm);
    reports[pi].atom_counts[li] = static_cast<long>(mats[li].rows());
    reports[pi].norms[li] = res.value;
  });

  for (auto& rep : reports) {
    if (rep.levels.size() < 3) {
      rep.classification = "inconclusive";
      continue;
    }
    std::vector<double> xs, ys;
    for (size_t i = 0; i < rep.levels.size(); ++i) {
      xs.push_back(std::log(static_cast<double>(rep.atom_counts[i])));
      ys.push_back(std::log(rep.norms[i]));
    }
    rep.fitted_exponent = detail::fit_slope(xs, ys);
    if (rep.fitted_exponent < kBoundedExponent)
      rep.classification = "bounded";
    else if (rep.fitted_exponent > kUnboundedExponent)
      rep.classification = "unbounded";
    else
      rep.classification = "inconclusive";
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Non-compactness witness

struct WitnessReport {
  double lambda = 0, alpha = 0;
  double inv_p = 0, inv_q = 0;
  double t0 = 0;
  int level = 0;
  std::vector<int> k_values;
  std::vector<bool> skipped;
  std::vector<double> input_norms;      // ||f_k||_p, exactly one by construction
  std::vector<double> witness_norms;    // ||(T f_k) chi_{B'_k}||_q
  std::vector<double> pointwise_min;    // min over B'_k of T f_k
  std::vector<double> pointwise_bound;  // k^(lambda + 1/p - 1)
  double lower_bound_hat = 0;
};

// The witness f_k = k^{1/p} chi_{B_k} around an atom t0 near 1/2 is applied
// with exact cell integrals (no source grid), so ||f_k||_p = 1 up to
// rounding and the pointwise bound is quadrature-free.
inline WitnessReport witness_test(double lambda, double alpha, double inv_p,
                                  const std::vector<int>& k_values, int max_level = 14) {
  if (k_values.empty()) throw std::invalid_argument("need at least one k");
  WitnessReport rep;
  rep.lambda = lambda;
  rep.alpha = alpha;
  rep.inv_p = inv_p;
  rep.inv_q = (inv_p - 1.0 + lambda) / alpha;
  if (!(rep.inv_q > 0 && rep.inv_q < 1))
    throw std::invalid_argument("point is not on the V-segment");
  const double p = 1.0 / inv_p, q = 1.0 / rep.inv_q;
  const double beta = std::pow(2.0, -1.0 / alpha);

  auto level_rule = [&](int k) {
    int n = 1;
    while (std::pow(beta, n) > 1.0 / (32.0 * k) && n <= max_level) ++n;
    return n;
  };
  int k_max_usable = 0;
  for (int k : k_values)
    if (level_rule(k) <= max_level) k_max_usable = std::max(k_max_usable, k);
  if (k_max_usable == 0) throw std::invalid_argument("all k exceed the resolution cap");
  rep.level = level_rule(k_max_usable);
  auto space = cantor_build(alpha, rep.level);

  // atom nearest 1/2
  size_t best = 0;
  for (size_t i = 1; i < space.atoms.size(); ++i)
    if (std::abs(space.atoms[i] - 0.5) < std::abs(space.atoms[best] - 0.5)) best = i;
  rep.t0 = space.atoms[best];

  rep.k_values = k_values;
  for (int k : k_values) {
    bool skip = level_rule(k) > max_level;
    rep.skipped.push_back(skip);
    if (skip) {
      rep.input_norms.push_back(0);
      rep.witness_norms.push_back(0);
      rep.pointwise_min.push_back(0);
      rep.pointwise_bound.push_back(0);
      continue;
    }
    double lo = rep.t0 - 0.5 / k, hi = rep.t0 + 0.5 / k;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    const double scale = std::pow(static_cast<double>(k), 1.0 / p);
    rep.input_norms.push_back(scale * std::pow(hi - lo, 1.0 / p));
    rep.pointwise_bound.push_back(std::pow(static_cast<double>(k), lambda + 1.0 / p - 1.0));

    std::vector<double> values;
    std::vector<double> weights;
    double pw_min = 0;
    bool first = true;
    for (size_t i = 0; i < space.atoms.size(); ++i) {
      double t = space.atoms[i];
      if (t <= lo || t >= hi) continue;  // B'_k = B_k on the fractal
      double v = scale * cell_kernel_integral(t, lo, hi, lambda);
      values.push_back(v);
      weights.push_back(space.weights[i]);
      if (first || v < pw_min) pw_min = v;
      first = false;
    }
    rep.pointwise_min.push_back(first ? 0.0 : pw_min);
    double acc = 0;
    for (size_t i = 0; i < values.size(); ++i) acc += std::pow(values[i], q) * weights[i];
    rep.witness_norms.push_back(std::pow(acc, 1.0 / q));
  }
  bool first = true;
  for (size_t i = 0; i < rep.k_values.size(); ++i) {
    if (rep.skipped[i]) continue;
    if (first || rep.witness_norms[i] < rep.lower_bound_hat)
      rep.lower_bound_hat = rep.witness_norms[i];
    first = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak-type ratio scan

struct WeakTypeReport {
  double lambda = 0, alpha = 0;
  double x = 0, q1 = 0;
  int level = 0;
  int max_depth = 0;
  std::vector<int> depths;
  std::vector<double> depth_sup;  // sup ratio over intervals of each depth
  double sup_ratio = 0;
  std::string argmax_interval;
  double c_lambda_hat = 0;  // sup |T chi_A| / mu(A)^(1-lambda), eq-(rw) family
};

inline WeakTypeReport weak_type_scan(double lambda, double alpha, double x, int level,
                                     int max_depth = -1, int jobs = 1) {
  const double x_hi = std::min(1.0, (1.0 - lambda) / (1.0 - alpha));
  if (!(x > 1.0 - lambda && x < x_hi))
    throw std::invalid_argument("x outside (1-lambda, min(1,(1-lambda)/(1-alpha)))");
  WeakTypeReport rep;
  rep.lambda = lambda;
  rep.alpha = alpha;
  rep.x = x;
  rep.q1 = alpha / (x - 1.0 + lambda);
  rep.level = level;
  auto space = std::make_shared<const DiscreteMeasureSpace>(cantor_build(alpha, level));
  if (max_depth < 0)
    max_depth = static_cast<int>(std::ceil(level * std::log2(1.0 / std::pow(2.0, -1.0 / alpha))));
  rep.max_depth = max_depth;

  struct DepthResult {
    double sup = 0;
    double c_lam = 0;
    std::string arg;
  };
  std::vector<DepthResult> per_depth(max_depth + 1);
  detail::parallel_for(static_cast<size_t>(max_depth + 1), jobs, [&](size_t d) {
    DepthResult res;
    const long count = 1L << d;
    const double mu = std::ldexp(1.0, -static_cast<int>(d));
    const double mu_x = std::pow(mu, x);
    const double mu_rw = std::pow(mu, 1.0 - lambda);
    std::vector<double> vals(space->atoms.size());
    for (long j = 0; j < count; ++j) {
      double a = static_cast<double>(j) * mu, b = a + mu;
      double pw = 0;
      for (size_t i = 0; i < space->atoms.size(); ++i) {
        vals[i] = cell_kernel_integral(space->atoms[i], a, b, lambda);
        pw = std::max(pw, vals[i]);
      }
      WeightedFunction f(std::const_pointer_cast<const DiscreteMeasureSpace>(space), vals);
      double ratio = weak_quasinorm(f, rep.q1) / mu_x;
      if (ratio > res.sup) {
        res.sup = ratio;
        res.arg = "[" + std::to_string(j) + "/" + std::to_string(count) + ", " +
                  std::to_string(j + 1) + "/" + std::to_string(count) + "]";
      }
      res.c_lam = std::max(res.c_lam, pw / mu_rw);
    }
    per_depth[d] = std::move(res);
  });

  for (int d = 0; d <= max_depth; ++d) {
    rep.depths.push_back(d);
    rep.depth_sup.push_back(per_depth[d].sup);
    if (per_depth[d].sup > rep.sup_ratio) {
      rep.sup_ratio = per_depth[d].sup;
      rep.argmax_interval = per_depth[d].arg;
    }
    rep.c_lambda_hat = std::max(rep.c_lambda_hat, per_depth[d].c_lam);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Duality of operator norms

struct DualityReport {
  double p = 0, q = 0;
  double norm = 0, adjoint_norm = 0, gap = 0;
};

inline DualityReport duality_check(const KernelMatrix& T, double p, double q,
                                   const OpnormOptions& opts = {}) {
  DualityReport rep;
  rep.p = p;
  rep.q = q;
  rep.norm = opnorm_pq(T, p, q, opts).value;
  auto Tt = adjoint(T);
  rep.adjoint_norm = opnorm_pq(Tt, q / (q - 1.0), p / (p - 1.0), opts).value;
  rep.gap = std::abs(rep.norm - rep.adjoint_norm);
  return rep;
}

// ---------------------------------------------------------------------------
// Finite Rademacher factorizations

enum class RademacherKind { horizontal, vertical };

// Dyadic Rademacher function r_n evaluated on cell j of a 2^m grid.
inline double rademacher_value(int n, long cell, int m) {
  return ((cell >> (m - n)) & 1L) ? -1.0 : 1.0;
}

// horizontal: T f = sum_n <f, r_n> f_n with (f_n) disjoint normalized blocks
//             in L_q0 (matrix 2^m-grid -> m blocks);
// vertical:   T f = sum_n <f, g_n> r_n with (g_n) normalized block
//             functionals (matrix m blocks -> 2^m grid).
inline KernelMatrix rademacher_operator(RademacherKind kind, double exponent, int m) {
  if (m < 1 || m > 12) throw std::invalid_argument("dyadic level must be in [1,12]");
  const long cells = 1L << m;
  auto grid = std::make_shared<const DiscreteMeasureSpace>(uniform_grid(static_cast<int>(cells)));
  auto blocks = std::make_shared<const DiscreteMeasureSpace>(uniform_grid(m));
  KernelMatrix T;
  if (kind == RademacherKind::horizontal) {
    if (!(exponent > 2)) throw std::invalid_argument("q0 must exceed 2");
    const double scale = std::pow(static_cast<double>(m), 1.0 / exponent);
    T.source = grid;
    T.target = blocks;
    T.entries.resize(static_cast<size_t>(m) * cells);
    for (int n = 0; n < m; ++n)
      for (long j = 0; j < cells; ++j)
        T.entries[static_cast<size_t>(n) * cells + j] = scale * rademacher_value(n + 1, j, m);
  } else {
    if (!(exponent > 1 && exponent < 2)) throw std::invalid_argument("p0 must lie in (1,2)");
    const double dual_exp = exponent / (exponent - 1.0);
    const double scale = std::pow(static_cast<double>(m), 1.0 / dual_exp);
    T.source = blocks;
    T.target = grid;
    T.entries.resize(static_cast<size_t>(m) * cells);
    for (long i = 0; i < cells; ++i)
      for (int n = 0; n < m; ++n)
        T.entries[static_cast<size_t>(i) * m + n] = scale * rademacher_value(n + 1, i, m);
  }
  return T;
}

// Exact E|sum_{n<=N} eps_n|^p over iid signs, via the binomial distribution.
inline double khintchine_moment(int N, double p) {
  double prob = std::ldexp(1.0, -N);  // P(j successes) starting at j = 0
  double acc = 0;
  for (int j = 0; j <= N; ++j) {
    acc += prob * std::pow(std::abs(static_cast<double>(N - 2 * j)), p);
    prob *= static_cast<double>(N - j) / static_cast<double>(j + 1);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Symmetric stable variates (Chambers-Mallows-Stuck)

inline std::vector<double> stable_sample(double s, int count, std::uint64_t seed) {
  if (!(s > 1 && s <= 2)) throw std::invalid_argument("stability index must be in (1,2]");
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    double u = M_PI * (detail::uniform01(rng) - 0.5);  // Uniform(-pi/2, pi/2)
    double w = detail::exponential1(rng);
    w = std::max(w, 1e-300);
    double x = std::sin(s * u) / std::pow(std::cos(u), 1.0 / s) *
               std::pow(std::cos((1.0 - s) * u) / w, (1.0 - s) / s);
    if (x > 1e6) x = 1e6;
    if (x < -1e6) x = -1e6;
    out[i] = x;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspace constructions of the regular-operator counterexamples

enum class SubspaceCase { q_le_p_le_s_lt_2, p_gt_2 };

struct SubspaceReport {
  std::string case_name;
  double q = 0, p = 0, s = 0;
  int m = 0, trials = 0, grid_cells = 0;
  double ratio_min = 0, ratio_max = 0;
  std::vector<double> image_norms;
  double regularity_hat = 0;
  std::vector<double> pairing_max;  // weak-null surrogate vs 32 smooth tests
  std::uint64_t seed = 0;
};

// Builds x_n = g_n + r_n on a grid of [0,1/2] + [1/2,1]: g_n either s-stable
// samples (p < s) or disjoint normalized bumps (s == p, or the p > 2 case),
// r_n iid-sign vectors on the right half. T is restriction to one half.
inline SubspaceReport subspace_experiment(SubspaceCase c, double q, double p, double s,
                                          int m, int trials, std::uint64_t seed,
                                          int half_cells = 1 << 12) {
  if (m < 1 || m > 64) throw std::invalid_argument("m must be in [1,64]");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  SubspaceReport rep;
  rep.seed = seed;
  rep.m = m;
  rep.trials = trials;
  if (c == SubspaceCase::q_le_p_le_s_lt_2) {
    if (!(1 <= q && q <= p && p <= s && s < 2))
      throw std::invalid_argument("case 1 needs q <= p <= s < 2");
    rep.case_name = "q-le-p-le-s-lt-2";
  } else {
    if (!(p > 2)) throw std::invalid_argument("case 2 needs p > 2");
    s = 2.0;
    q = p;
    rep.case_name = "p-gt-2";
  }
  rep.q = q;
  rep.p = p;
  rep.s = s;

  // grid: left half [0,1/2) then right half [1/2,1), half_cells each;
  // bump blocks need half_cells divisible by m
  int C = half_cells - (half_cells % m);
  if (C < m) C = m;
  rep.grid_cells = 2 * C;
  auto space = std::make_shared<DiscreteMeasureSpace>();
  space->weights.assign(2 * C, 0.5 / C);
  space->cell_diameter = 0.5 / C;
  space->total_mass = 1.0;
  for (int i = 0; i < 2 * C; ++i) space->atoms.push_back((i + 0.5) / (2 * C));
  SpacePtr sp = space;

  const bool stable_branch = (c == SubspaceCase::q_le_p_le_s_lt_2) && (p < s);
  std::vector<std::vector<double>> xs(m, std::vector<double>(2 * C, 0.0));
  for (int n = 0; n < m; ++n) {
    // left half: g_n / h_n
    if (stable_branch) {
      auto g = stable_sample(s, C, detail::mix_seed(seed, 1000 + n));
      double acc = 0;
      for (int i = 0; i < C; ++i) acc += std::pow(std::abs(g[i]), p) * (0.5 / C);
      double nrm = std::pow(acc, 1.0 / p);
      for (int i = 0; i < C; ++i) xs[n][i] = g[i] / nrm;
    } else {
      const int width = C / m;
      const double mass = width * (0.5 / C);
      const double v = std::pow(mass, -1.0 / p);
      for (int i = n * width; i < (n + 1) * width; ++i) xs[n][i] = v;
    }
    // right half: iid signs
    std::mt19937_64 rng(detail::mix_seed(seed, 2000 + n));
    for (int i = 0; i < C; ++i) xs[n][C + i] = (rng() & 1) ? 1.0 : -1.0;
  }

  // T: restriction to [1/2,1] in case 1 (image r_n), to [0,1/2] in case 2
  const bool keep_right = (c == SubspaceCase::q_le_p_le_s_lt_2);
  auto apply_T = [&](const std::vector<double>& f) {
    std::vector<double> out(2 * C, 0.0);
    if (keep_right)
      std::copy(f.begin() + C, f.end(), out.begin() + C);
    else
      std::copy(f.begin(), f.begin() + C, out.begin());
    return out;
  };

  for (int n = 0; n < m; ++n)
    rep.image_norms.push_back(lp_norm(WeightedFunction(sp, apply_T(xs[n])), q));

  // ratio band over random coefficient vectors
  bool first = true;
  std::mt19937_64 coef_rng(detail::mix_seed(seed, 3000));
  for (int t = 0; t < trials; ++t) {
    std::vector<double> a(m);
    for (auto& v : a) v = detail::normal01(coef_rng);
    std::vector<double> comb(2 * C, 0.0);
    double ls = 0;
    for (int n = 0; n < m; ++n) {
      ls += std::pow(std::abs(a[n]), s);
      for (int i = 0; i < 2 * C; ++i) comb[i] += a[n] * xs[n][i];
    }
    ls = std::pow(ls, 1.0 / s);
    if (ls == 0) continue;
    double ratio = lp_norm(WeightedFunction(sp, comb), p) / ls;
    if (first || ratio < rep.ratio_min) rep.ratio_min = ratio;
    if (first || ratio > rep.ratio_max) rep.ratio_max = ratio;
    first = false;
  }

  // regularity constant over random finite families
  std::mt19937_64 fam_rng(detail::mix_seed(seed, 4000));
  for (int t = 0; t < trials; ++t) {
    int size = 1 + static_cast<int>(fam_rng() % static_cast<std::uint64_t>(m));
    std::vector<double> sup_x(2 * C, 0.0), sup_tx(2 * C, 0.0);
    for (int pick = 0; pick < size; ++pick) {
      int n = static_cast<int>(fam_rng() % static_cast<std::uint64_t>(m));
      auto tx = apply_T(xs[n]);
      for (int i = 0; i < 2 * C; ++i) {
        sup_x[i] = std::max(sup_x[i], std::abs(xs[n][i]));
        sup_tx[i] = std::max(sup_tx[i], std::abs(tx[i]));
      }
    }
    double den = lp_norm(WeightedFunction(sp, sup_x), p);
    if (den == 0) continue;
    double ratio = lp_norm(WeightedFunction(sp, sup_tx), q) / den;
    rep.regularity_hat = std::max(rep.regularity_hat, ratio);
  }

  // weak-null surrogate: pairings against a fixed dictionary of 32 smooth
  // test functions (constant + low-frequency Fourier modes)
  for (int n = 0; n < m; ++n) {
    double worst = 0;
    for (int j = 0; j < 32; ++j) {
      double acc = 0;
      for (int i = 0; i < 2 * C; ++i) {
        double u = sp->atoms[i];
        double phi = (j == 0) ? 1.0
                   : (j % 2 == 1) ? std::sqrt(2.0) * std::cos(2.0 * M_PI * ((j + 1) / 2) * u)
                                  : std::sqrt(2.0) * std::sin(2.0 * M_PI * (j / 2) * u);
        acc += xs[n][i] * phi * sp->weights[i];
      }
      worst = std::max(worst, std::abs(acc));
    }
    rep.pairing_max.push_back(worst);
  }
  return rep;
}

}  // namespace charset
