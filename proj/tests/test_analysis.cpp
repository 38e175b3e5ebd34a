#include "charset/analysis.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace charset;
using Catch::Approx;

namespace {

SpacePtr two_atoms() {
  auto sp = std::make_shared<DiscreteMeasureSpace>();
  sp->atoms = {0.25, 0.75};
  sp->weights = {0.5, 0.5};
  sp->cell_diameter = 0.5;
  sp->total_mass = 1.0;
  return sp;
}

KernelMatrix identity_kernel(SpacePtr sp) {
  KernelMatrix T;
  T.source = sp;
  T.target = sp;
  T.entries.assign(sp->atoms.size() * sp->atoms.size(), 0.0);
  for (size_t i = 0; i < sp->atoms.size(); ++i) T.at(i, i) = 1.0 / sp->weights[i];
  return T;
}

// Brute-force sup ||Tf||_q / ||f||_p for 2x2 kernels over a theta grid with
// local refinement; independent of the power iteration.
double grid_opnorm_2x2(const KernelMatrix& T, double p, double q) {
  auto ratio = [&](double theta) {
    WeightedFunction f(T.source, {std::cos(theta), std::sin(theta)});
    double np = lp_norm(f, p);
    if (np == 0) return 0.0;
    return lp_norm(apply(T, f), q) / np;
  };
  double best = 0, best_t = 0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * M_PI * i / N;
    double r = ratio(t);
    if (r > best) { best = r; best_t = t; }
  }
  double lo = best_t - 2.0 * M_PI / N, hi = best_t + 2.0 * M_PI / N;
  for (int iter = 0; iter < 60; ++iter) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (ratio(m1) < ratio(m2)) lo = m1; else hi = m2;
  }
  return std::max(best, ratio((lo + hi) / 2));
}

}  // namespace

TEST_CASE("lp norms") {
  auto sp = two_atoms();
  WeightedFunction ones(sp, {1.0, 1.0});
  REQUIRE(lp_norm(ones, 1.7) == Approx(1.0).epsilon(1e-12));
  WeightedFunction f(sp, {2.0, 0.0});
  REQUIRE(lp_norm(f, 2) == Approx(std::sqrt(2.0)).epsilon(1e-12));
  // homogeneity
  WeightedFunction g(sp, {0.6, -2.2});
  WeightedFunction cg(sp, {3.0 * 0.6, 3.0 * -2.2});
  REQUIRE(lp_norm(cg, 3) == Approx(3.0 * lp_norm(g, 3)).epsilon(1e-12));
  REQUIRE_THROWS_AS(lp_norm(g, 0.5), std::invalid_argument);
}

TEST_CASE("weak quasinorm: exact two-atom evaluation") {
  auto sp = std::make_shared<DiscreteMeasureSpace>();
  sp->atoms = {0.2, 0.8};
  sp->weights = {0.1, 0.5};
  sp->total_mass = 0.6;
  WeightedFunction f(sp, {3.0, 1.0});
  REQUIRE(weak_quasinorm(f, 2) == Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));
  // constant functions on mass-one spaces: weak norm equals the lp norm
  auto pr = two_atoms();
  WeightedFunction c(pr, {1.4, 1.4});
  REQUIRE(weak_quasinorm(c, 3) == Approx(lp_norm(c, 3)).epsilon(1e-12));
}

TEST_CASE("weak quasinorm is dominated by the lp norm") {
  std::mt19937_64 rng(11);
  auto sp = std::make_shared<DiscreteMeasureSpace>();
  for (int i = 0; i < 50; ++i) {
    sp->atoms.push_back((i + 0.5) / 50);
    sp->weights.push_back((1.0 + (rng() % 100)) / 5000.0);
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> vals(50);
    for (auto& v : vals) v = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
    WeightedFunction f(sp, vals);
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0})
      REQUIRE(weak_quasinorm(f, p) <= lp_norm(f, p) + 1e-12);
  }
}

TEST_CASE("cell kernel integral closed forms") {
  REQUIRE(cell_kernel_integral(0.5, 0.0, 0.25, 0.5) ==
          Approx(2.0 * (std::sqrt(0.5) - std::sqrt(0.25))).epsilon(1e-12));
  // endpoint singularity: t == a
  double lam = 0.3;
  REQUIRE(cell_kernel_integral(0.2, 0.2, 0.7, lam) ==
          Approx(std::pow(0.5, 1.0 - lam) / (1.0 - lam)).epsilon(1e-12));
  // symmetry when t is centered
  double half = cell_kernel_integral(0.5, 0.5, 0.75, 0.4);
  REQUIRE(cell_kernel_integral(0.5, 0.25, 0.75, 0.4) == Approx(2 * half).epsilon(1e-12));
  REQUIRE_THROWS_AS(cell_kernel_integral(0.5, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cell kernel integral agrees with adaptive quadrature") {
  // midpoint refinement on dyadic subcells, avoiding the singularity by
  // splitting exactly there
  auto quad = [](double t, double a, double b, double lam) {
    double acc = 0;
    const int N = 1 << 14;
    for (int i = 0; i < N; ++i) {
      double u0 = a + (b - a) * i / N, u1 = a + (b - a) * (i + 1) / N;
      double mid = 0.5 * (u0 + u1);
      acc += std::pow(std::abs(t - mid), -lam) * (u1 - u0);
    }
    return acc;
  };
  REQUIRE(cell_kernel_integral(0.9, 0.1, 0.4, 0.45) ==
          Approx(quad(0.9, 0.1, 0.4, 0.45)).epsilon(1e-6));
  REQUIRE(cell_kernel_integral(0.25, 0.5, 0.75, 0.6) ==
          Approx(quad(0.25, 0.5, 0.75, 0.6)).epsilon(1e-6));
}

TEST_CASE("riesz matrix single-cell value and row-sum bound") {
  auto tgt = std::make_shared<DiscreteMeasureSpace>();
  tgt->atoms = {0.5};
  tgt->weights = {1.0};
  tgt->total_mass = 1.0;
  auto T = riesz_matrix(0.5, 1, tgt);
  REQUIRE(T.at(0, 0) == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

  auto cantor = std::make_shared<DiscreteMeasureSpace>(cantor_build(0.5, 5));
  double lam = 0.35;
  auto R = riesz_matrix(lam, 64, cantor);
  for (size_t i = 0; i < R.rows(); ++i) {
    double row = 0;
    for (size_t j = 0; j < R.cols(); ++j) row += R.at(i, j) * R.source->weights[j];
    REQUIRE(row <= 2.0 / (1.0 - lam) + 1e-9);
    REQUIRE(row > 0);
  }
}

TEST_CASE("kernel entries grow with lambda near the singular cell") {
  auto tgt = std::make_shared<DiscreteMeasureSpace>();
  tgt->atoms = {0.505};
  tgt->weights = {1.0};
  tgt->total_mass = 1.0;
  auto loT = riesz_matrix(0.3, 32, tgt);
  auto hiT = riesz_matrix(0.7, 32, tgt);
  // cell 16 covers [0.5, 0.53125): contains the atom
  REQUIRE(hiT.at(0, 16) > loT.at(0, 16));
}

TEST_CASE("apply reproduces cell integrals for indicator densities") {
  auto cantor = std::make_shared<DiscreteMeasureSpace>(cantor_build(0.5, 4));
  const int m = 32;
  const double lam = 0.5;
  auto T = riesz_matrix(lam, m, cantor);
  // indicator of cells [8, 16): an interval [1/4, 1/2)
  std::vector<double> vals(m, 0.0);
  for (int j = 8; j < 16; ++j) vals[j] = 1.0;
  WeightedFunction f(T.source, vals);
  auto out = apply(T, f);
  for (size_t i = 0; i < cantor->atoms.size(); ++i) {
    double exact = cell_kernel_integral(cantor->atoms[i], 0.25, 0.5, lam);
    REQUIRE(out.values[i] == Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("apply is linear") {
  auto cantor = std::make_shared<DiscreteMeasureSpace>(cantor_build(0.6, 4));
  auto T = riesz_matrix(0.4, 24, cantor);
  std::mt19937_64 rng(5);
  std::vector<double> a(24), b(24);
  for (auto& x : a) x = static_cast<double>(rng() % 1000) / 500.0 - 1.0;
  for (auto& x : b) x = static_cast<double>(rng() % 1000) / 500.0 - 1.0;
  WeightedFunction fa(T.source, a), fb(T.source, b);
  std::vector<double> comb(24);
  for (int j = 0; j < 24; ++j) comb[j] = 2.5 * a[j] - 0.75 * b[j];
  WeightedFunction fc(T.source, comb);
  auto ya = apply(T, fa), yb = apply(T, fb), yc = apply(T, fc);
  for (size_t i = 0; i < ya.values.size(); ++i)
    REQUIRE(yc.values[i] ==
            Approx(2.5 * ya.values[i] - 0.75 * yb.values[i]).margin(1e-12));
}

TEST_CASE("adjoint pairing identity holds exactly") {
  auto cantor = std::make_shared<DiscreteMeasureSpace>(cantor_build(0.5, 5));
  auto T = riesz_matrix(0.5, 40, cantor);
  auto Tt = adjoint(T);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> fv(T.cols()), gv(T.rows());
    for (auto& x : fv) x = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
    for (auto& x : gv) x = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
    WeightedFunction f(T.source, fv), g(T.target, gv);
    auto Tf = apply(T, f);
    auto Ttg = apply(Tt, g);
    double lhs = 0, rhs = 0;
    for (size_t i = 0; i < Tf.values.size(); ++i)
      lhs += Tf.values[i] * gv[i] * T.target->weights[i];
    for (size_t j = 0; j < Ttg.values.size(); ++j)
      rhs += fv[j] * Ttg.values[j] * T.source->weights[j];
    REQUIRE(lhs == Approx(rhs).margin(1e-12));
  }
  // adjoint of adjoint = original action
  auto Ttt = adjoint(Tt);
  REQUIRE(Ttt.entries == T.entries);
}

TEST_CASE("opnorm on scalar and identity kernels") {
  auto one = std::make_shared<DiscreteMeasureSpace>();
  one->atoms = {0.5};
  one->weights = {1.0};
  one->total_mass = 1.0;
  KernelMatrix T;
  T.source = one;
  T.target = one;
  T.entries = {3.25};
  for (double p : {1.5, 2.0, 4.0})
    for (double q : {1.5, 2.0, 4.0})
      REQUIRE(opnorm_pq(T, p, q).value == Approx(3.25).epsilon(1e-9));

  auto sp = two_atoms();
  auto I = identity_kernel(sp);
  REQUIRE(opnorm_pq(I, 4, 2).value == Approx(1.0).epsilon(1e-7));
  REQUIRE(opnorm_pq(I, 2, 4).value == Approx(std::pow(2.0, 0.25)).epsilon(1e-7));
}

TEST_CASE("opnorm matches the theta-grid oracle on random 2x2 kernels") {
  std::mt19937_64 rng(23);
  auto sp = two_atoms();
  for (int trial = 0; trial < 12; ++trial) {
    KernelMatrix T;
    T.source = sp;
    T.target = sp;
    T.entries.resize(4);
    for (auto& e : T.entries) e = 0.05 + static_cast<double>(rng() % 1000) / 250.0;
    for (auto pq : {std::pair{4.0 / 3, 3.0}, {2.0, 4.0}, {3.0, 1.5}}) {
      double iter = opnorm_pq(T, pq.first, pq.second).value;
      double brute = grid_opnorm_2x2(T, pq.first, pq.second);
      REQUIRE(iter == Approx(brute).epsilon(1e-4));
      REQUIRE(iter <= brute + 1e-4 * brute);  // certified lower bound
    }
  }
}

TEST_CASE("opnorm is monotone under entrywise domination") {
  std::mt19937_64 rng(31);
  auto sp = two_atoms();
  for (int trial = 0; trial < 10; ++trial) {
    KernelMatrix A, B;
    A.source = B.source = sp;
    A.target = B.target = sp;
    A.entries.resize(4);
    B.entries.resize(4);
    for (int i = 0; i < 4; ++i) {
      A.entries[i] = static_cast<double>(rng() % 1000) / 500.0;
      B.entries[i] = A.entries[i] + static_cast<double>(rng() % 1000) / 500.0;
    }
    double na = opnorm_pq(A, 2.5, 1.8).value;
    double nb = opnorm_pq(B, 2.5, 1.8).value;
    REQUIRE(na <= nb + 1e-8);
  }
}

TEST_CASE("opnorm duality: ||T||_{p->q} = ||T*||_{q'->p'}") {
  auto cantor = std::make_shared<DiscreteMeasureSpace>(cantor_build(0.5, 3));
  auto T = riesz_matrix(0.5, 16, cantor);
  auto Tt = adjoint(T);
  for (auto pq : {std::pair{10.0 / 7, 2.0}, {2.0, 3.0}}) {
    double p = pq.first, q = pq.second;
    double qp = q / (q - 1), pp = p / (p - 1);
    double n1 = opnorm_pq(T, p, q).value;
    double n2 = opnorm_pq(Tt, qp, pp).value;
    REQUIRE(n1 == Approx(n2).epsilon(1e-6));
  }
}

TEST_CASE("opnorm rejects bad input") {
  auto sp = two_atoms();
  auto I = identity_kernel(sp);
  REQUIRE_THROWS_AS(opnorm_pq(I, 1.0, 2.0), std::invalid_argument);
  I.entries[1] = -0.5;
  REQUIRE_THROWS_AS(opnorm_pq(I, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("opnorm flags non-convergence but still returns the best ratio") {
  auto sp = two_atoms();
  KernelMatrix T;
  T.source = sp;
  T.target = sp;
  T.entries = {1.3, 0.2, 0.4, 2.7};
  OpnormOptions opts;
  opts.max_iter = 1;  // forces the unconverged path
  auto res = opnorm_pq(T, 2.0, 3.0, opts);
  REQUIRE_FALSE(res.converged);
  REQUIRE(res.value > 0);
  REQUIRE(res.witness.size() == 2);
  // the reported value is the Rayleigh ratio of the reported witness
  WeightedFunction w(sp, res.witness);
  REQUIRE(lp_norm(apply(T, w), 3.0) / lp_norm(w, 2.0) == Approx(res.value).epsilon(1e-9));
}
