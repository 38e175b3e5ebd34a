#pragma once

// JSON and CSV schemas for regions, operator specs, profiles, and
// experiment reports. Rationals travel as "p/q" strings.

#include "charset/catalog.hpp"
#include "charset/verify.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace charset {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Regions

inline json region_to_json(const MonotoneRegion& r) {
  json j;
  j["whole"] = r.whole();
  j["empty"] = r.empty();
  json verts = json::array();
  for (const auto& v : r.vertices()) verts.push_back({rat_str(v.a), rat_str(v.b)});
  j["vertices"] = verts;
  j["edge_closed"] = r.edge_closed();
  return j;
}

inline MonotoneRegion region_from_json(const json& j) {
  if (j.value("whole", false)) return MonotoneRegion::whole_region();
  if (j.value("empty", false)) return MonotoneRegion::empty_region();
  std::vector<RatPoint> verts;
  for (const auto& v : j.at("vertices"))
    verts.push_back({parse_rat(v.at(0).get<std::string>()),
                     parse_rat(v.at(1).get<std::string>())});
  std::vector<bool> flags;
  for (const auto& f : j.at("edge_closed")) flags.push_back(f.get<bool>());
  return MonotoneRegion::from_chain(verts, flags);
}

// ---------------------------------------------------------------------------
// V elements and profiles

inline json v_element_to_json(const VElement& e) {
  if (std::holds_alternative<VPoint>(e)) {
    const auto& p = std::get<VPoint>(e).at;
    return json{{"point", {rat_str(p.a), rat_str(p.b)}}};
  }
  const auto& s = std::get<VSegment>(e);
  return json{{"a", {rat_str(s.a.a), rat_str(s.a.b)}},
              {"b", {rat_str(s.b.a), rat_str(s.b.b)}},
              {"closed_a", s.closed_a},
              {"closed_b", s.closed_b}};
}

inline VElement v_element_from_json(const json& j) {
  if (j.contains("point")) {
    return VPoint{{parse_rat(j["point"][0].get<std::string>()),
                   parse_rat(j["point"][1].get<std::string>())}};
  }
  return VSegment{{parse_rat(j["a"][0].get<std::string>()),
                   parse_rat(j["a"][1].get<std::string>())},
                  {parse_rat(j["b"][0].get<std::string>()),
                   parse_rat(j["b"][1].get<std::string>())},
                  j.value("closed_a", false),
                  j.value("closed_b", false)};
}

inline json profile_to_json(const CharacteristicProfile& pr) {
  json j;
  j["L"] = region_to_json(pr.L);
  j["K"] = region_to_json(pr.K);
  j["S"] = region_to_json(pr.S);
  json segs = json::array();
  for (const auto& e : pr.v) segs.push_back(v_element_to_json(e));
  j["v_segments"] = segs;
  j["meta"] = {{"assumes_uniform_norm_bound", pr.assumes_uniform_norm_bound}};
  return j;
}

inline CharacteristicProfile profile_from_json(const json& j) {
  CharacteristicProfile pr;
  pr.L = region_from_json(j.at("L"));
  pr.K = region_from_json(j.at("K"));
  pr.S = region_from_json(j.at("S"));
  for (const auto& e : j.at("v_segments")) pr.v.push_back(v_element_from_json(e));
  if (j.contains("meta"))
    pr.assumes_uniform_norm_bound = j["meta"].value("assumes_uniform_norm_bound", false);
  return pr;
}

// ---------------------------------------------------------------------------
// Operator specs

inline json spec_to_json(const OperatorSpec& spec) {
  return std::visit(
      detail::overloaded{
          [](const Inclusion&) { return json{{"kind", "inclusion"}}; },
          [](const Multiplication& m) {
            return json{{"kind", "multiplication"}, {"r", rat_str(m.r)}};
          },
          [](const Averaging& a) {
            return json{{"kind", "averaging"}, {"alpha", rat_str(a.alpha)}};
          },
          [](const RiemannLiouville& a) {
            return json{{"kind", "riemann_liouville"}, {"alpha", rat_str(a.alpha)}};
          },
          [](const RieszPotential& rp) {
            return json{{"kind", "riesz"},
                        {"lambda", rat_str(rp.lambda)},
                        {"alpha", rat_str(rp.alpha)}};
          },
          [](const RademacherHorizontal& r) {
            return json{{"kind", "rademacher_horizontal"}, {"q0", rat_str(r.q0)}};
          },
          [](const RademacherVertical& r) {
            return json{{"kind", "rademacher_vertical"}, {"p0", rat_str(r.p0)}};
          },
          [](const WeightedSum& w) {
            json terms = json::array();
            for (const auto& t : w.terms) terms.push_back(spec_to_json(t));
            return json{{"kind", "weighted_sum"},
                        {"terms", terms},
                        {"disjoint_parts", w.disjoint_parts}};
          },
          [](const AdjointOf& a) {
            return json{{"kind", "adjoint"}, {"of", spec_to_json(*a.inner)}};
          }},
      spec.kind);
}

inline OperatorSpec spec_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "inclusion") return OperatorSpec{Inclusion{}};
  if (kind == "multiplication")
    return OperatorSpec{Multiplication{parse_rat(j.at("r").get<std::string>())}};
  if (kind == "averaging")
    return OperatorSpec{Averaging{parse_rat(j.at("alpha").get<std::string>())}};
  if (kind == "riemann_liouville")
    return OperatorSpec{RiemannLiouville{parse_rat(j.at("alpha").get<std::string>())}};
  if (kind == "riesz")
    return OperatorSpec{RieszPotential{parse_rat(j.at("lambda").get<std::string>()),
                                       parse_rat(j.at("alpha").get<std::string>())}};
  if (kind == "rademacher_horizontal")
    return OperatorSpec{RademacherHorizontal{parse_rat(j.at("q0").get<std::string>())}};
  if (kind == "rademacher_vertical")
    return OperatorSpec{RademacherVertical{parse_rat(j.at("p0").get<std::string>())}};
  if (kind == "weighted_sum") {
    WeightedSum w;
    for (const auto& t : j.at("terms")) w.terms.push_back(spec_from_json(t));
    w.disjoint_parts = j.value("disjoint_parts", false);
    return OperatorSpec{std::move(w)};
  }
  if (kind == "adjoint")
    return OperatorSpec{
        AdjointOf{std::make_shared<const OperatorSpec>(spec_from_json(j.at("of")))}};
  throw std::invalid_argument("unknown operator kind: " + kind);
}

// ---------------------------------------------------------------------------
// Experiment reports

inline json growth_report_to_json(const GrowthReport& r) {
  return json{{"inv_p", r.inv_p},
              {"inv_q", r.inv_q},
              {"lambda", r.lambda},
              {"alpha", r.alpha},
              {"levels", r.levels},
              {"atoms", r.atom_counts},
              {"norms", r.norms},
              {"fitted_exponent", r.fitted_exponent},
              {"classification", r.classification}};
}

inline std::string growth_report_to_csv(const GrowthReport& r) {
  std::ostringstream os;
  os << "level,atoms,norm\n";
  char buf[64];
  for (size_t i = 0; i < r.levels.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%ld,%.12g", r.levels[i], r.atom_counts[i],
                  r.norms[i]);
    os << buf << "\n";
  }
  return os.str();
}

inline json witness_report_to_json(const WitnessReport& r) {
  return json{{"lambda", r.lambda},
              {"alpha", r.alpha},
              {"inv_p", r.inv_p},
              {"inv_q", r.inv_q},
              {"t0", r.t0},
              {"level", r.level},
              {"k_values", r.k_values},
              {"skipped", r.skipped},
              {"input_norms", r.input_norms},
              {"witness_norms", r.witness_norms},
              {"pointwise_min", r.pointwise_min},
              {"pointwise_bound", r.pointwise_bound},
              {"lower_bound_hat", r.lower_bound_hat}};
}

inline json weak_type_report_to_json(const WeakTypeReport& r) {
  return json{{"lambda", r.lambda},
              {"alpha", r.alpha},
              {"x", r.x},
              {"q1", r.q1},
              {"level", r.level},
              {"max_depth", r.max_depth},
              {"depths", r.depths},
              {"depth_sup", r.depth_sup},
              {"sup_ratio", r.sup_ratio},
              {"argmax_interval", r.argmax_interval},
              {"c_lambda_hat", r.c_lambda_hat}};
}

inline json duality_report_to_json(const DualityReport& r) {
  return json{{"p", r.p},
              {"q", r.q},
              {"norm", r.norm},
              {"adjoint_norm", r.adjoint_norm},
              {"gap", r.gap}};
}

inline json subspace_report_to_json(const SubspaceReport& r) {
  return json{{"case", r.case_name},
              {"q", r.q},
              {"p", r.p},
              {"s", r.s},
              {"m", r.m},
              {"trials", r.trials},
              {"grid_cells", r.grid_cells},
              {"ratio_band", {r.ratio_min, r.ratio_max}},
              {"image_norms", r.image_norms},
              {"regularity_hat", r.regularity_hat},
              {"pairing_max", r.pairing_max},
              {"seed", r.seed}};
}

// Wrapper used by the CLI: every report file carries the experiment name,
// its configuration, and the seed that reproduces it.
inline json report_envelope(const std::string& experiment, json config,
                            std::uint64_t seed, json results,
                            const std::string& classification) {
  return json{{"experiment", experiment},
              {"config", std::move(config)},
              {"seed", seed},
              {"results", std::move(results)},
              {"classification", classification}};
}

}  // namespace charset
