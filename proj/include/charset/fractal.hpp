#pragma once

// Cantor-type Ahlfors-regular measure spaces on (0,1) at finite resolution,
// plus Hausdorff cover sums and empirical regularity constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

namespace charset {

struct DiscreteMeasureSpace {
  std::vector<double> atoms;    // strictly increasing positions in (0,1)
  std::vector<double> weights;  // positive, summing to total_mass
  double cell_diameter = 0;     // common diameter of the generation cells
  double total_mass = 0;
  double dimension = 1.0;       // Ahlfors exponent carried by the measure
};

using SpacePtr = std::shared_ptr<const DiscreteMeasureSpace>;

struct CantorSpec {
  double alpha;  // Hausdorff dimension, in (0,1)
  double beta;   // contraction ratio, = 2^(-1/alpha)
  int level;     // generation count, >= 1

  CantorSpec(double alpha_, int level_)
      : alpha(alpha_), beta(std::pow(2.0, -1.0 / alpha_)), level(level_) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (level < 1) throw std::invalid_argument("level must be >= 1");
  }
  CantorSpec(double alpha_, double beta_, int level_)
      : alpha(alpha_), beta(beta_), level(level_) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (level < 1) throw std::invalid_argument("level must be >= 1");
    double expect = std::pow(2.0, -1.0 / alpha);
    if (std::abs(beta - expect) > 1e-12 * expect)
      throw std::invalid_argument("beta must equal 2^(-1/alpha)");
  }
};

// Middle-(1-2*beta) Cantor construction: generation-k intervals of length
// beta^k, atoms at the generation-n interval midpoints with weight 2^-n.
inline DiscreteMeasureSpace cantor_build(double alpha, int level) {
  CantorSpec spec(alpha, level);
  const double beta = spec.beta;
  std::vector<double> left{0.0};  // left endpoints, lengths uniform
  double len = 1.0;
  for (int k = 0; k < level; ++k) {
    std::vector<double> next;
    next.reserve(left.size() * 2);
    double nlen = len * beta;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + len - nlen);
    }
    left = std::move(next);
    len = nlen;
  }
  DiscreteMeasureSpace sp;
  sp.atoms.reserve(left.size());
  const double w = std::ldexp(1.0, -level);  // 2^-level
  for (double a : left) sp.atoms.push_back(a + len / 2);
  sp.weights.assign(left.size(), w);
  sp.cell_diameter = len;
  sp.total_mass = 1.0;
  sp.dimension = alpha;
  return sp;
}

// Uniform Lebesgue grid on (0,1): m cells, atoms at cell midpoints.
inline DiscreteMeasureSpace uniform_grid(int cells) {
  if (cells < 1) throw std::invalid_argument("grid needs at least one cell");
  DiscreteMeasureSpace sp;
  sp.atoms.reserve(cells);
  sp.weights.assign(cells, 1.0 / cells);
  for (int j = 0; j < cells; ++j) sp.atoms.push_back((j + 0.5) / cells);
  sp.cell_diameter = 1.0 / cells;
  sp.total_mass = 1.0;
  sp.dimension = 1.0;
  return sp;
}

// Mass of the open ball B(x, r).
inline double ball_mass(const DiscreteMeasureSpace& sp, double x, double r) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  auto lo = std::lower_bound(sp.atoms.begin(), sp.atoms.end(), x - r);
  auto hi = std::lower_bound(sp.atoms.begin(), sp.atoms.end(), x + r);
  double m = 0;
  for (auto it = lo; it != hi; ++it) {
    double d = std::abs(*it - x);
    if (d < r) m += sp.weights[static_cast<size_t>(it - sp.atoms.begin())];
  }
  return m;
}

struct AhlforsEstimate {
  double c_hat = 0, C_hat = 0;
  double ratio() const { return C_hat / c_hat; }
};

// Sample mass(B(x,r)) / r^dimension over atoms x and dyadic radii
// r in [cell_diameter, 1]; below the cell scale the discrete measure
// degenerates, so those radii are excluded.
inline AhlforsEstimate ahlfors_constants(const DiscreteMeasureSpace& sp, int samples,
                                         std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  int max_j = 0;
  while (std::ldexp(1.0, -(max_j + 1)) >= sp.cell_diameter) ++max_j;
  std::mt19937_64 rng(seed);
  AhlforsEstimate est;
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    size_t ix = static_cast<size_t>(rng() % sp.atoms.size());
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(max_j + 1));
    double r = std::ldexp(1.0, -j);
    double ratio = ball_mass(sp, sp.atoms[ix], r) / std::pow(r, sp.dimension);
    if (first || ratio < est.c_hat) est.c_hat = ratio;
    if (first || ratio > est.C_hat) est.C_hat = ratio;
    first = false;
  }
  return est;
}

struct CoverEstimate {
  double s = 0;      // exponent
  double delta = 0;  // max cover diameter
  double value = 0;  // sum of diameters^s
};

// Cover sum of the natural generation-m cover: 2^m intervals of length
// beta^m, so value = 2^m * beta^(m*s).
inline CoverEstimate hausdorff_sum(const CantorSpec& spec, double s, int cover_level) {
  if (cover_level < 1) throw std::invalid_argument("cover level must be >= 1");
  if (!(s > 0)) throw std::invalid_argument("exponent must be positive");
  CoverEstimate est;
  est.s = s;
  est.delta = std::pow(spec.beta, cover_level);
  est.value = std::exp2(static_cast<double>(cover_level)) * std::pow(est.delta, s);
  return est;
}

}  // namespace charset
