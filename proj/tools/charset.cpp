// charset: batch front end for the characteristic-set calculus.
//
//   charset profile --op riesz --lambda 1/2 --alpha 1/2 --svg out.svg
//   charset region  dual|intersect|validate ...
//   charset fractal --alpha 0.6309 --level 10 --check-ahlfors
//   charset verify  riesz-bounded|witness|weak-type|duality|subspace|fractal ...
//
// Exit codes: 0 success, 1 runtime error, 2 usage error, 3 result
// contradicts the predicted classification.

#include "charset/json_io.hpp"
#include "charset/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace charset;

constexpr std::uint64_t kDefaultSeed = 1729;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("CHARSET_SEED")) return std::strtoull(s, nullptr, 10);
  return kDefaultSeed;
}

Rat cli_rat(const std::string& text) {
  if (text.find('/') != std::string::npos || text.find('.') == std::string::npos)
    return parse_rat(text);
  // floats are snapped to rationals (documented 1e-12 tolerance)
  return snap_rat(std::stod(text));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stoi(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

// "4..9" or "4,5,6"
std::vector<int> parse_levels(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return parse_int_list(text);
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------

struct ProfileArgs {
  std::string op;
  std::string lambda, alpha, r, q0, p0;
  std::string spec_file;
  std::string json_out, svg_out;
  bool adjoint = false;
};

int run_profile(const ProfileArgs& a) {
  auto need = [](const std::string& value, const char* flag) -> const std::string& {
    if (value.empty())
      throw CLI::ValidationError(flag, "required for this operator kind");
    return value;
  };
  OperatorSpec spec{Inclusion{}};
  if (a.op == "inclusion") {
    spec = OperatorSpec{Inclusion{}};
  } else if (a.op == "multiplication") {
    spec = OperatorSpec{Multiplication{cli_rat(need(a.r, "--r"))}};
  } else if (a.op == "averaging") {
    spec = OperatorSpec{Averaging{cli_rat(need(a.alpha, "--alpha"))}};
  } else if (a.op == "riemann-liouville") {
    spec = OperatorSpec{RiemannLiouville{cli_rat(need(a.alpha, "--alpha"))}};
  } else if (a.op == "riesz") {
    spec = OperatorSpec{RieszPotential{cli_rat(need(a.lambda, "--lambda")),
                                       cli_rat(need(a.alpha, "--alpha"))}};
  } else if (a.op == "rademacher-h") {
    spec = OperatorSpec{RademacherHorizontal{cli_rat(need(a.q0, "--q0"))}};
  } else if (a.op == "rademacher-v") {
    spec = OperatorSpec{RademacherVertical{cli_rat(need(a.p0, "--p0"))}};
  } else if (a.op == "sum") {
    WeightedSum w;
    json terms = read_json(need(a.spec_file, "--spec"));
    if (!terms.is_array()) throw std::runtime_error("--spec for sum must be a JSON array");
    for (const auto& t : terms) w.terms.push_back(spec_from_json(t));
    spec = OperatorSpec{std::move(w)};
  } else if (a.op == "spec") {
    spec = spec_from_json(read_json(need(a.spec_file, "--spec")));
  } else {
    throw CLI::ValidationError("--op", "unknown operator kind: " + a.op);
  }
  if (a.adjoint) spec = dual_spec(spec);
  auto pr = profile(spec);
  json out;
  out["spec"] = spec_to_json(spec);
  out["profile"] = profile_to_json(pr);
  if (!a.svg_out.empty()) write_text(a.svg_out, profile_to_svg(pr));
  write_text(a.json_out, out.dump(2));
  return 0;
}

// ---------------------------------------------------------------------------

int run_region_dual(const std::string& in, const std::string& out) {
  auto r = region_from_json(read_json(in));
  write_text(out, region_to_json(dual_region(r)).dump(2));
  return 0;
}

int run_region_intersect(const std::string& a, const std::string& b, const std::string& out) {
  auto ra = region_from_json(read_json(a));
  auto rb = region_from_json(read_json(b));
  write_text(out, region_to_json(intersect(ra, rb)).dump(2));
  return 0;
}

int run_region_validate(const std::string& profile_path) {
  auto j = read_json(profile_path);
  auto pr = profile_from_json(j.contains("profile") ? j["profile"] : j);
  auto violations = validate_profile(pr);
  json out = json::array();
  for (const auto& v : violations) out.push_back({{"rule", v.rule}, {"detail", v.detail}});
  std::cout << out.dump(2) << "\n";
  return violations.empty() ? 0 : 3;
}

// ---------------------------------------------------------------------------

struct FractalArgs {
  double alpha = std::log(2.0) / std::log(3.0);
  int level = 8;
  bool check_ahlfors = false;
  int samples = 10000;
  std::uint64_t seed = env_seed();
  std::string json_out;
};

int run_fractal(const FractalArgs& a) {
  auto sp = cantor_build(a.alpha, a.level);
  json out;
  out["alpha"] = a.alpha;
  out["level"] = a.level;
  out["atoms_count"] = sp.atoms.size();
  out["cell_diameter"] = sp.cell_diameter;
  if (a.check_ahlfors) {
    auto est = ahlfors_constants(sp, a.samples, a.seed);
    out["c_hat"] = est.c_hat;
    out["C_hat"] = est.C_hat;
    out["ratio"] = est.ratio();
    out["samples"] = a.samples;
    out["seed"] = a.seed;
  }
  write_text(a.json_out, out.dump(2));
  return 0;
}

// ---------------------------------------------------------------------------
// verify subcommands

struct RieszBoundedArgs {
  std::string lambda = "1/2", alpha = "1/2", p = "10/7", q = "2";
  std::string levels = "4..9";
  int m_factor = 4;
  bool uniform_grid = false;
  int jobs = 1;
  std::uint64_t seed = env_seed();
  std::string json_out, csv_out;
};

int run_verify_riesz_bounded(const RieszBoundedArgs& a) {
  Rat lam = cli_rat(a.lambda), alp = cli_rat(a.alpha);
  Rat pr = cli_rat(a.p), qr = cli_rat(a.q);
  Q2Point point(Rat(1) / pr, Rat(1) / qr);
  ScanOptions opts;
  opts.m_factor = a.m_factor;
  opts.graded = !a.uniform_grid;
  opts.jobs = a.jobs;
  opts.seed = a.seed;
  auto reports = boundedness_scan(rat_to_double(lam), rat_to_double(alp), {point},
                                  parse_levels(a.levels), opts);
  const auto& rep = reports[0];

  // exact prediction from the catalog profile
  auto prof = profile(OperatorSpec{RieszPotential{lam, alp}});
  bool predicted_bounded = member(prof.L, point);
  std::string predicted = predicted_bounded ? "bounded" : "unbounded";

  json cfg{{"lambda", rat_str(lam)}, {"alpha", rat_str(alp)},
           {"p", rat_str(pr)},       {"q", rat_str(qr)},
           {"levels", a.levels},     {"m_factor", a.m_factor},
           {"graded", !a.uniform_grid}};
  json out = report_envelope("riesz-bounded", cfg, a.seed,
                             json::array({growth_report_to_json(rep)}),
                             rep.classification);
  out["predicted"] = predicted;
  if (!a.csv_out.empty()) write_text(a.csv_out, growth_report_to_csv(rep));
  write_text(a.json_out, out.dump(2));
  if (rep.classification != "inconclusive" && rep.classification != predicted) return 3;
  return 0;
}

struct WitnessArgs {
  std::string lambda = "1/2", alpha = "1/2", invp = "7/10";
  std::string ks = "4,8,16,32";
  int max_level = 14;
  std::string json_out;
};

int run_verify_witness(const WitnessArgs& a) {
  auto rep = witness_test(rat_to_double(cli_rat(a.lambda)), rat_to_double(cli_rat(a.alpha)),
                          rat_to_double(cli_rat(a.invp)), parse_int_list(a.ks), a.max_level);
  json cfg{{"lambda", a.lambda}, {"alpha", a.alpha}, {"invp", a.invp},
           {"k", a.ks},          {"max_level", a.max_level}};
  bool ok = rep.lower_bound_hat > 0;
  for (size_t i = 0; i < rep.k_values.size(); ++i) {
    if (rep.skipped[i]) continue;
    if (std::abs(rep.input_norms[i] - 1.0) > 1e-10) ok = false;
    if (rep.pointwise_min[i] < 0.95 * rep.pointwise_bound[i]) ok = false;
  }
  json out = report_envelope("witness", cfg, 0, witness_report_to_json(rep),
                             ok ? "non-compactness-witnessed" : "contradiction");
  write_text(a.json_out, out.dump(2));
  return ok ? 0 : 3;
}

struct WeakTypeArgs {
  std::string lambda = "1/2", alpha = "1/2", x = "3/4";
  std::string levels = "6,8";
  int max_depth = -1;
  int jobs = 1;
  std::string json_out;
};

int run_verify_weak_type(const WeakTypeArgs& a) {
  auto levels = parse_levels(a.levels);
  json results = json::array();
  std::vector<WeakTypeReport> reps;
  for (int n : levels) {
    reps.push_back(weak_type_scan(rat_to_double(cli_rat(a.lambda)),
                                  rat_to_double(cli_rat(a.alpha)),
                                  rat_to_double(cli_rat(a.x)), n, a.max_depth, a.jobs));
    results.push_back(weak_type_report_to_json(reps.back()));
  }
  bool stable = true;
  for (size_t i = 0; i + 1 < reps.size(); ++i) {
    double f = reps[i + 1].sup_ratio / reps[i].sup_ratio;
    double g = reps[i + 1].c_lambda_hat / reps[i].c_lambda_hat;
    if (!(f < 2.0 && f > 0.5 && g < 2.0 && g > 0.5)) stable = false;
  }
  json cfg{{"lambda", a.lambda}, {"alpha", a.alpha}, {"x", a.x}, {"levels", a.levels}};
  json out = report_envelope("weak-type", cfg, 0, results,
                             stable ? "stable" : "contradiction");
  write_text(a.json_out, out.dump(2));
  return stable ? 0 : 3;
}

struct DualityArgs {
  int trials = 20;
  std::uint64_t seed = env_seed();
  std::string json_out;
};

int run_verify_duality(const DualityArgs& a) {
  std::mt19937_64 rng(a.seed);
  auto sp = std::make_shared<DiscreteMeasureSpace>();
  sp->atoms = {0.2, 0.5, 0.8};
  sp->weights = {0.3, 0.4, 0.3};
  sp->total_mass = 1.0;
  const std::vector<std::pair<double, double>> pqs{{4.0 / 3, 3.0}, {2.0, 4.0}, {3.0, 1.5}};
  json results = json::array();
  bool ok = true;
  for (int t = 0; t < a.trials; ++t) {
    KernelMatrix T;
    T.source = sp;
    T.target = sp;
    T.entries.resize(9);
    for (auto& e : T.entries) e = 0.1 + static_cast<double>(rng() % 1000) / 500.0;
    for (auto [p, q] : pqs) {
      auto rep = duality_check(T, p, q);
      if (rep.gap > 1e-4 * rep.norm) ok = false;
      results.push_back(duality_report_to_json(rep));
    }
  }
  auto cantor = std::make_shared<const DiscreteMeasureSpace>(cantor_build(0.5, 4));
  auto T = riesz_matrix(0.5, 64, cantor);
  for (auto [p, q] : pqs) {
    auto rep = duality_check(T, p, q);
    if (rep.gap > 1e-4 * rep.norm) ok = false;
    results.push_back(duality_report_to_json(rep));
  }
  json cfg{{"trials", a.trials}};
  json out =
      report_envelope("duality", cfg, a.seed, results, ok ? "dual-norms-agree" : "contradiction");
  write_text(a.json_out, out.dump(2));
  return ok ? 0 : 3;
}

struct SubspaceArgs {
  std::string case_name = "p-gt-2";
  std::string q = "1.1", p = "4", s = "1.2";
  int m = 16;
  int trials = 200;
  std::uint64_t seed = env_seed();
  std::string json_out;
};

int run_verify_subspace(const SubspaceArgs& a) {
  SubspaceCase c;
  if (a.case_name == "p-gt-2")
    c = SubspaceCase::p_gt_2;
  else if (a.case_name == "q-le-p-le-s")
    c = SubspaceCase::q_le_p_le_s_lt_2;
  else
    throw CLI::ValidationError("--case", "expected p-gt-2 or q-le-p-le-s");
  auto rep = subspace_experiment(c, std::stod(a.q), std::stod(a.p), std::stod(a.s), a.m,
                                 a.trials, a.seed);
  bool ok = true;
  if (c == SubspaceCase::p_gt_2) {
    for (double v : rep.image_norms)
      if (std::abs(v - 1.0) > 1e-12) ok = false;
    if (rep.regularity_hat > 1.0 + 1e-9) ok = false;
  } else {
    if (!(rep.ratio_min >= 0.25 && rep.ratio_max <= 4.0)) ok = false;
  }
  if (!(rep.ratio_min > 0)) ok = false;
  json cfg{{"case", a.case_name}, {"q", a.q}, {"p", a.p},
           {"s", a.s},            {"m", a.m}, {"trials", a.trials}};
  json out = report_envelope("subspace", cfg, a.seed, subspace_report_to_json(rep),
                             ok ? "regular-non-compact-witnessed" : "contradiction");
  write_text(a.json_out, out.dump(2));
  return ok ? 0 : 3;
}

struct VerifyFractalArgs {
  double alpha = std::log(2.0) / std::log(3.0);
  int level = 10;
  int samples = 10000;
  std::uint64_t seed = env_seed();
  std::string json_out;
};

int run_verify_fractal(const VerifyFractalArgs& a) {
  auto sp = cantor_build(a.alpha, a.level);
  auto est = ahlfors_constants(sp, a.samples, a.seed);
  CantorSpec spec(a.alpha, a.level);
  bool ok = est.c_hat > 0 && est.ratio() < 100.0;
  // dimension dichotomy of the cover sums
  double prev_hi = 1e300, prev_lo = 0;
  for (int m = 1; m <= 12; ++m) {
    auto crit = hausdorff_sum(spec, a.alpha, m);
    if (std::abs(crit.value - 1.0) > 1e-9) ok = false;
    auto hi = hausdorff_sum(spec, std::min(0.99, a.alpha + 0.07), m);
    auto lo = hausdorff_sum(spec, a.alpha - 0.13, m);
    if (hi.value >= prev_hi || lo.value <= prev_lo) ok = false;
    prev_hi = hi.value;
    prev_lo = lo.value;
  }
  json cfg{{"alpha", a.alpha}, {"level", a.level}, {"samples", a.samples}};
  json results{{"c_hat", est.c_hat}, {"C_hat", est.C_hat}, {"ratio", est.ratio()}};
  json out = report_envelope("fractal", cfg, a.seed, results,
                             ok ? "ahlfors-regular" : "contradiction");
  write_text(a.json_out, out.dump(2));
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characteristic-set calculus for operators between L_p spaces"};
  app.require_subcommand(1);

  // ---- profile
  ProfileArgs pa;
  auto* prof_cmd = app.add_subcommand("profile", "compute an operator's (L,K,S,V) profile");
  prof_cmd->add_option("--op", pa.op,
                       "inclusion|multiplication|averaging|riemann-liouville|riesz|"
                       "rademacher-h|rademacher-v|sum|spec")
      ->required();
  prof_cmd->add_option("--lambda", pa.lambda, "kernel exponent (rational)");
  prof_cmd->add_option("--alpha", pa.alpha, "dimension / order (rational)");
  prof_cmd->add_option("--r", pa.r, "multiplier integrability (rational > 1)");
  prof_cmd->add_option("--q0", pa.q0, "horizontal Rademacher exponent (> 2)");
  prof_cmd->add_option("--p0", pa.p0, "vertical Rademacher exponent (in (1,2))");
  prof_cmd->add_option("--spec", pa.spec_file, "spec JSON (array for --op sum)");
  prof_cmd->add_flag("--adjoint", pa.adjoint, "wrap the operator in its adjoint");
  prof_cmd->add_option("--json", pa.json_out, "output JSON path (default stdout)");
  prof_cmd->add_option("--svg", pa.svg_out, "render the profile as SVG");

  // ---- region
  auto* region_cmd = app.add_subcommand("region", "exact region calculus");
  region_cmd->require_subcommand(1);
  std::string rg_in, rg_out, rg_a, rg_b, rg_profile;
  auto* rg_dual = region_cmd->add_subcommand("dual", "apply the duality involution");
  rg_dual->add_option("--in", rg_in)->required();
  rg_dual->add_option("--out", rg_out);
  auto* rg_int = region_cmd->add_subcommand("intersect", "intersect two regions");
  rg_int->add_option("--a", rg_a)->required();
  rg_int->add_option("--b", rg_b)->required();
  rg_int->add_option("--out", rg_out);
  auto* rg_val = region_cmd->add_subcommand("validate", "structural profile validation");
  rg_val->add_option("--profile", rg_profile)->required();

  // ---- fractal
  FractalArgs fa;
  auto* frac_cmd = app.add_subcommand("fractal", "build a Cantor measure space");
  frac_cmd->add_option("--alpha", fa.alpha, "Hausdorff dimension in (0,1)");
  frac_cmd->add_option("--level", fa.level, "generation count");
  frac_cmd->add_flag("--check-ahlfors", fa.check_ahlfors, "estimate regularity constants");
  frac_cmd->add_option("--samples", fa.samples);
  frac_cmd->add_option("--seed", fa.seed);
  frac_cmd->add_option("--json", fa.json_out, "output path (default stdout)");

  // ---- verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification experiment");
  verify_cmd->require_subcommand(1);

  RieszBoundedArgs rba;
  auto* vb = verify_cmd->add_subcommand("riesz-bounded", "boundedness growth scan");
  vb->add_option("--lambda", rba.lambda);
  vb->add_option("--alpha", rba.alpha);
  vb->add_option("--p", rba.p);
  vb->add_option("--q", rba.q);
  vb->add_option("--levels", rba.levels, "range like 4..9 or list 4,5,6");
  vb->add_option("--m-factor", rba.m_factor);
  vb->add_flag("--uniform-grid", rba.uniform_grid, "disable graded source refinement");
  vb->add_option("--jobs", rba.jobs);
  vb->add_option("--seed", rba.seed);
  vb->add_option("--json", rba.json_out);
  vb->add_option("--csv", rba.csv_out);

  WitnessArgs wa;
  auto* vw = verify_cmd->add_subcommand("witness", "non-compactness witness sequence");
  vw->add_option("--lambda", wa.lambda);
  vw->add_option("--alpha", wa.alpha);
  vw->add_option("--invp", wa.invp, "1/p on the V-segment");
  vw->add_option("--k", wa.ks, "comma list of bump scales");
  vw->add_option("--max-level", wa.max_level);
  vw->add_option("--json", wa.json_out);

  WeakTypeArgs wta;
  auto* vwt = verify_cmd->add_subcommand("weak-type", "weak-type ratio scan");
  vwt->add_option("--lambda", wta.lambda);
  vwt->add_option("--alpha", wta.alpha);
  vwt->add_option("--x", wta.x);
  vwt->add_option("--levels", wta.levels);
  vwt->add_option("--max-depth", wta.max_depth);
  vwt->add_option("--jobs", wta.jobs);
  vwt->add_option("--json", wta.json_out);

  DualityArgs da;
  auto* vd = verify_cmd->add_subcommand("duality", "operator-norm duality check");
  vd->add_option("--trials", da.trials);
  vd->add_option("--seed", da.seed);
  vd->add_option("--json", da.json_out);

  SubspaceArgs sa;
  auto* vs = verify_cmd->add_subcommand("subspace", "regular operators on subspaces");
  vs->add_option("--case", sa.case_name, "p-gt-2 or q-le-p-le-s");
  vs->add_option("--q", sa.q);
  vs->add_option("--p", sa.p);
  vs->add_option("--s", sa.s);
  vs->add_option("--m", sa.m);
  vs->add_option("--trials", sa.trials);
  vs->add_option("--seed", sa.seed);
  vs->add_option("--json", sa.json_out);

  VerifyFractalArgs vfa;
  auto* vf = verify_cmd->add_subcommand("fractal", "Ahlfors regularity and cover sums");
  vf->add_option("--alpha", vfa.alpha);
  vf->add_option("--level", vfa.level);
  vf->add_option("--samples", vfa.samples);
  vf->add_option("--seed", vfa.seed);
  vf->add_option("--json", vfa.json_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prof_cmd->parsed()) return run_profile(pa);
    if (region_cmd->parsed()) {
      if (rg_dual->parsed()) return run_region_dual(rg_in, rg_out);
      if (rg_int->parsed()) return run_region_intersect(rg_a, rg_b, rg_out);
      if (rg_val->parsed()) return run_region_validate(rg_profile);
    }
    if (frac_cmd->parsed()) return run_fractal(fa);
    if (verify_cmd->parsed()) {
      if (vb->parsed()) return run_verify_riesz_bounded(rba);
      if (vw->parsed()) return run_verify_witness(wa);
      if (vwt->parsed()) return run_verify_weak_type(wta);
      if (vd->parsed()) return run_verify_duality(da);
      if (vs->parsed()) return run_verify_subspace(sa);
      if (vf->parsed()) return run_verify_fractal(vfa);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
