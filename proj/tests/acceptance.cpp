// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Runs everything from the library, deterministically.

#include "charset/json_io.hpp"
#include "charset/svg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace charset;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --------------------------------------------------------------------------
// shared helpers

Where oracle_contains(const MonotoneRegion& r, const Q2Point& p) {
  if (r.whole()) return Where::inside;
  if (r.empty()) return Where::outside;
  std::vector<LineConstraint> lines;
  std::vector<VerticalCut> cuts;
  r.constraints(lines, cuts);
  bool on = false;
  for (const auto& l : lines) {
    Rat v = p.beta - l.k * p.alpha - l.c;
    if (v < 0) return Where::outside;
    if (v == 0) on = true;
  }
  for (const auto& c : cuts) {
    Rat v = c.a - p.alpha;
    if (v < 0) return Where::outside;
    if (v == 0) on = true;
  }
  if (!on) return Where::inside;
  const auto& verts = r.vertices();
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    const RatPoint& x = verts[i];
    const RatPoint& y = verts[i + 1];
    if (p.alpha < x.a || p.alpha > y.a) continue;
    if (x.a == y.a) {
      if (p.alpha == x.a && p.beta >= x.b && p.beta <= y.b) return Where::boundary;
      continue;
    }
    if ((y.a - x.a) * (p.beta - x.b) == (y.b - x.b) * (p.alpha - x.a))
      return Where::boundary;
  }
  return Where::inside;
}

bool oracle_member(const MonotoneRegion& r, const Q2Point& p) {
  if (r.whole()) return true;
  if (r.empty()) return false;
  std::vector<LineConstraint> lines;
  std::vector<VerticalCut> cuts;
  r.constraints(lines, cuts);
  for (const auto& l : lines) {
    Rat v = p.beta - l.k * p.alpha - l.c;
    if (v < 0 || (v == 0 && !l.closed)) return false;
  }
  for (const auto& c : cuts) {
    Rat v = c.a - p.alpha;
    if (v < 0 || (v == 0 && !c.closed)) return false;
  }
  return true;
}

std::vector<OperatorSpec> catalog_specs() {
  std::vector<OperatorSpec> specs;
  specs.push_back(OperatorSpec{Inclusion{}});
  specs.push_back(OperatorSpec{Multiplication{rat(2)}});
  specs.push_back(OperatorSpec{Averaging{rat(1, 4)}});
  specs.push_back(OperatorSpec{RiemannLiouville{rat(1, 3)}});
  specs.push_back(OperatorSpec{RieszPotential{rat(1, 2), rat(1, 2)}});
  specs.push_back(OperatorSpec{RieszPotential{rat(2, 5), rat(1, 4)}});
  specs.push_back(OperatorSpec{RademacherHorizontal{rat(5, 2)}});
  specs.push_back(OperatorSpec{RademacherVertical{rat(3, 2)}});
  specs.push_back(dual_spec(OperatorSpec{RieszPotential{rat(1, 2), rat(1, 2)}}));
  specs.push_back(OperatorSpec{WeightedSum{
      {OperatorSpec{RieszPotential{rat(1, 2), rat(1, 2)}},
       OperatorSpec{RieszPotential{rat(2, 5), rat(1, 4)}}},
      false}});
  return specs;
}

double grid_opnorm_2x2(const KernelMatrix& T, double p, double q) {
  auto ratio = [&](double theta) {
    WeightedFunction f(T.source, {std::cos(theta), std::sin(theta)});
    double np = lp_norm(f, p);
    return np == 0 ? 0.0 : lp_norm(apply(T, f), q) / np;
  };
  double best = 0, best_t = 0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * M_PI * i / N;
    double r = ratio(t);
    if (r > best) { best = r; best_t = t; }
  }
  double lo = best_t - 2.0 * M_PI / N, hi = best_t + 2.0 * M_PI / N;
  for (int it = 0; it < 60; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (ratio(m1) < ratio(m2)) lo = m1; else hi = m2;
  }
  return std::max(best, ratio(0.5 * (lo + hi)));
}

// --------------------------------------------------------------------------

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  bool ok = true;
  long checked = 0;
  std::vector<Q2Point> grid;
  grid.reserve(10000);
  for (int i = 1; i <= 100; ++i)
    for (int j = 1; j <= 100; ++j) grid.emplace_back(rat(i, 101), rat(j, 101));
  std::vector<MonotoneRegion> regions;
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<int> den(7, 60);
    std::uniform_int_distribution<int> count(1, 6);
    std::vector<Q2Point> gens;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
      int d1 = den(rng), d2 = den(rng);
      std::uniform_int_distribution<int> n1(1, d1 - 1), n2(1, d2 - 1);
      gens.emplace_back(rat(n1(rng), d1), rat(n2(rng), d2));
    }
    regions.push_back(monotone_closure(gens));
  }
  std::vector<char> region_ok(regions.size(), 1);
  std::vector<long> region_checked(regions.size(), 0);
  charset::detail::parallel_for(regions.size(), 4, [&](size_t ri) {
    const auto& r = regions[ri];
    if (dual_region(dual_region(r)) != r) {
      region_ok[ri] = 0;
      return;
    }
    for (const auto& p : grid) {
      Where impl = contains(r, p);
      if (impl != oracle_contains(r, p)) {
        region_ok[ri] = 0;
        return;
      }
      // flag-aware membership must agree wherever closure matters
      if (impl == Where::boundary && member(r, p) != oracle_member(r, p)) {
        region_ok[ri] = 0;
        return;
      }
      ++region_checked[ri];
    }
  });
  for (size_t ri = 0; ri < regions.size(); ++ri) {
    ok = ok && region_ok[ri];
    checked += region_checked[ri];
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "region oracle equivalence + dual involution on 500 random regions "
                "(%ld grid checks, %.1fs)",
                checked, dt);
  report(1, ok && dt < 10.0, buf);
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  auto specs = catalog_specs();
  bool ok = specs.size() >= 8;
  size_t total_violations = 0;
  for (const auto& s : specs) {
    auto vio = validate_profile(profile(s));
    total_violations += vio.size();
  }
  ok = ok && total_violations == 0;
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "catalog consistency: %zu specs, %zu violations (%.2fs)", specs.size(),
                total_violations, dt);
  report(2, ok && dt < 5.0, buf);
}

void criterion_3() {
  struct Case {
    Rat lambda, alpha;
    VSegment expect;
  };
  // hand substitution into 1/q = (x - 1 + lambda)/alpha with
  // x_hi = min(1, (1-lambda)/(1-alpha)) = 1 for all three pairs
  std::vector<Case> cases{
      {rat(1, 2), rat(1, 2), {{rat(1, 2), rat(0)}, {rat(1), rat(1)}, false, false}},
      {rat(3, 10), rat(3, 5), {{rat(7, 10), rat(0)}, {rat(1), rat(1, 2)}, false, false}},
      {rat(1, 4), rat(1, 3), {{rat(3, 4), rat(0)}, {rat(1), rat(3, 4)}, false, false}},
  };
  bool ok = true;
  for (const auto& c : cases) {
    auto pr = profile(OperatorSpec{RieszPotential{c.lambda, c.alpha}});
    if (pr.v.size() != 1 || !(std::get<VSegment>(pr.v[0]) == c.expect)) ok = false;
  }
  report(3, ok, "Riesz V-segments match hand substitution exactly in rationals");
}

GrowthReport g_bounded_report, g_unbounded_report;  // reused by criterion 10

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Q2Point> pts{Q2Point(rat(7, 10), rat(1, 2)),
                           Q2Point(rat(7, 10), rat(3, 10))};
  ScanOptions opts;
  opts.jobs = 4;
  auto reps = boundedness_scan(0.5, 0.5, pts, {4, 5, 6, 7, 8, 9}, opts);
  g_bounded_report = reps[0];
  g_unbounded_report = reps[1];
  bool ok = reps[0].classification == "bounded" &&
            reps[0].fitted_exponent < kBoundedExponent &&
            reps[1].classification == "unbounded" &&
            reps[1].fitted_exponent > kUnboundedExponent;
  // transparency: the literal uniform-grid protocol caps the measurable
  // growth at the source-cell scale (see decisions ledger)
  ScanOptions uniform = opts;
  uniform.graded = false;
  auto uni = boundedness_scan(0.5, 0.5, {pts[1]}, {4, 5, 6, 7, 8, 9}, uniform);
  double dt = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "boundedness dichotomy: exponents %.4f (bounded) / %.4f (unbounded; "
                "uniform-grid variant %.4f) in %.1fs",
                reps[0].fitted_exponent, reps[1].fitted_exponent, uni[0].fitted_exponent,
                dt);
  report(4, ok && dt < 300.0, buf);
}

WitnessReport g_witness_report;

void criterion_5() {
  auto rep = witness_test(0.5, 0.5, 0.7, {4, 8, 16, 32});
  g_witness_report = rep;
  bool ok = true;
  double wmin = 1e300, wmax = 0;
  for (size_t i = 0; i < rep.k_values.size(); ++i) {
    if (rep.skipped[i]) { ok = false; continue; }
    if (std::abs(rep.input_norms[i] - 1.0) > 1e-10) ok = false;
    if (rep.pointwise_min[i] < 0.95 * rep.pointwise_bound[i]) ok = false;
    wmin = std::min(wmin, rep.witness_norms[i]);
    wmax = std::max(wmax, rep.witness_norms[i]);
  }
  if (!(rep.lower_bound_hat > 0)) ok = false;
  if (!(wmax / wmin < 2.0)) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "witness lower bound %.4f > 0, input norms 1, max/min ratio %.3f < 2",
                rep.lower_bound_hat, wmax / wmin);
  report(5, ok, buf);
}

void criterion_6() {
  auto r6 = weak_type_scan(0.5, 0.5, 0.75, 6, -1, 4);
  auto r8 = weak_type_scan(0.5, 0.5, 0.75, 8, -1, 4);
  double f = r8.sup_ratio / r6.sup_ratio;
  double g = r8.c_lambda_hat / r6.c_lambda_hat;
  bool ok = std::abs(r6.q1 - 2.0) < 1e-12 && f < 2.0 && f > 0.5 && g < 2.0 && g > 0.5 &&
            std::isfinite(r6.sup_ratio) && std::isfinite(r8.sup_ratio);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "weak-type stability: sup ratio %.4f->%.4f (factor %.3f), C_lambda "
                "factor %.3f",
                r6.sup_ratio, r8.sup_ratio, f, g);
  report(6, ok, buf);
}

void criterion_7() {
  std::mt19937_64 rng(77);
  bool ok = true;
  auto sp3 = std::make_shared<DiscreteMeasureSpace>();
  sp3->atoms = {0.2, 0.5, 0.8};
  sp3->weights = {0.3, 0.4, 0.3};
  sp3->total_mass = 1.0;
  const std::vector<std::pair<double, double>> pqs{{4.0 / 3, 3.0}, {2.0, 4.0}, {3.0, 1.5}};
  double worst_gap = 0;
  for (int t = 0; t < 20; ++t) {
    KernelMatrix T;
    T.source = sp3;
    T.target = sp3;
    T.entries.resize(9);
    for (auto& e : T.entries) e = 0.1 + static_cast<double>(rng() % 1000) / 500.0;
    for (auto [p, q] : pqs) {
      auto rep = duality_check(T, p, q);
      worst_gap = std::max(worst_gap, rep.gap / rep.norm);
      if (rep.gap > 1e-4 * rep.norm) ok = false;
    }
  }
  auto cantor = std::make_shared<const DiscreteMeasureSpace>(cantor_build(0.5, 4));
  auto R = riesz_matrix(0.5, 64, cantor);
  for (auto [p, q] : pqs) {
    auto rep = duality_check(R, p, q);
    worst_gap = std::max(worst_gap, rep.gap / rep.norm);
    if (rep.gap > 1e-4 * rep.norm) ok = false;
  }
  // 2x2 brute-force oracle
  auto sp2 = std::make_shared<DiscreteMeasureSpace>();
  sp2->atoms = {0.25, 0.75};
  sp2->weights = {0.5, 0.5};
  sp2->total_mass = 1.0;
  double worst_oracle = 0;
  for (int t = 0; t < 10; ++t) {
    KernelMatrix T;
    T.source = sp2;
    T.target = sp2;
    T.entries.resize(4);
    for (auto& e : T.entries) e = 0.05 + static_cast<double>(rng() % 1000) / 250.0;
    for (auto [p, q] : pqs) {
      double iter = opnorm_pq(T, p, q).value;
      double brute = grid_opnorm_2x2(T, p, q);
      worst_oracle = std::max(worst_oracle, std::abs(iter - brute) / brute);
      if (std::abs(iter - brute) > 1e-4 * brute) ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "duality gaps <= %.2e (rel), opnorm vs theta-grid oracle <= %.2e (rel)",
                worst_gap, worst_oracle);
  report(7, ok, buf);
}

void criterion_8() {
  const double alpha = std::log(2.0) / std::log(3.0);
  auto sp = cantor_build(alpha, 10);
  auto est = ahlfors_constants(sp, 10000, 1729);
  bool ok = est.c_hat > 0 && est.ratio() < 100.0;
  CantorSpec spec(alpha, 10);
  double prev_hi = 1e300, prev_lo = 0;
  for (int m = 1; m <= 12; ++m) {
    if (std::abs(hausdorff_sum(spec, alpha, m).value - 1.0) > 1e-9) ok = false;
    double hi = hausdorff_sum(spec, 0.7, m).value;
    double lo = hausdorff_sum(spec, 0.5, m).value;
    if (hi >= prev_hi || lo <= prev_lo) ok = false;
    prev_hi = hi;
    prev_lo = lo;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "middle-thirds regularity: c=%.3f C=%.3f ratio %.2f < 100; cover-sum "
                "dichotomy holds",
                est.c_hat, est.C_hat, est.ratio());
  report(8, ok, buf);
}

SubspaceReport g_sub2_report;

void criterion_9() {
  auto s2 = subspace_experiment(SubspaceCase::p_gt_2, 0, 4.0, 0, 16, 200, 7);
  g_sub2_report = s2;
  bool ok = true;
  for (double v : s2.image_norms)
    if (std::abs(v - 1.0) > 1e-12) ok = false;
  if (s2.regularity_hat > 1.0 + 1e-9) ok = false;
  auto s1 = subspace_experiment(SubspaceCase::q_le_p_le_s_lt_2, 1.1, 1.2, 1.2, 16, 200, 7);
  if (!(s1.ratio_min >= 0.25 && s1.ratio_max <= 4.0)) ok = false;
  if (!(s1.regularity_hat <= 1.0 + 1e-9)) ok = false;
  auto g = stable_sample(2.0, 100000, 1729);
  double mean = 0;
  for (double x : g) mean += x;
  mean /= g.size();
  double var = 0;
  for (double x : g) var += (x - mean) * (x - mean);
  var /= g.size();
  if (!(var >= 1.9 && var <= 2.1)) ok = false;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "subspaces: case-2 norms 1 (reg %.6f), case-1 band [%.3f,%.3f] in "
                "[1/4,4], stable var %.4f",
                s2.regularity_hat, s1.ratio_min, s1.ratio_max, var);
  report(9, ok, buf);
}

void criterion_10() {
  // repeat criteria 4, 5, 9 with the same seeds; the serialized reports must
  // be byte-identical
  ScanOptions opts;
  opts.jobs = 4;
  std::vector<Q2Point> pts{Q2Point(rat(7, 10), rat(1, 2)),
                           Q2Point(rat(7, 10), rat(3, 10))};
  auto reps = boundedness_scan(0.5, 0.5, pts, {4, 5, 6, 7, 8, 9}, opts);
  std::string growth_a =
      growth_report_to_json(g_bounded_report).dump() + growth_report_to_json(g_unbounded_report).dump();
  std::string growth_b =
      growth_report_to_json(reps[0]).dump() + growth_report_to_json(reps[1]).dump();

  auto wit = witness_test(0.5, 0.5, 0.7, {4, 8, 16, 32});
  std::string wit_a = witness_report_to_json(g_witness_report).dump();
  std::string wit_b = witness_report_to_json(wit).dump();

  auto sub = subspace_experiment(SubspaceCase::p_gt_2, 0, 4.0, 0, 16, 200, 7);
  std::string sub_a = subspace_report_to_json(g_sub2_report).dump();
  std::string sub_b = subspace_report_to_json(sub).dump();

  bool ok = growth_a == growth_b && wit_a == wit_b && sub_a == sub_b;
  report(10, ok, "criteria 4, 5, 9 reports are byte-identical under the same seed");
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed (%.1fs total)\n", 10 - failures,
              seconds_since(t0));
  return failures;
}
