#pragma once

// Symbolic catalog of the operators with known characteristic profiles:
// the formal inclusion, multiplication by an L_r function, averaging and
// Riemann-Liouville operators (V parallel to the diagonal), Riesz potentials
// onto Ahlfors-regular targets (V of any positive slope), the two
// Rademacher factorization operators (horizontal/vertical V), adjoints, and
// dyadically weighted sums.

#include "charset/profile.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace charset {

struct Inclusion {};
struct Multiplication {
  Rat r;  // density in L_r, r > 1
};
struct Averaging {
  Rat alpha;  // in (0,1)
};
struct RiemannLiouville {
  Rat alpha;  // in (0,1)
};
struct RieszPotential {
  Rat lambda;  // kernel exponent, in (0,1)
  Rat alpha;   // target Hausdorff dimension, in (0,1)
};
struct RademacherHorizontal {
  Rat q0;  // exponent > 2, V at height 1/q0 < 1/2
};
struct RademacherVertical {
  Rat p0;  // exponent in (1,2), V at abscissa 1/p0 > 1/2
};

struct OperatorSpec;

struct WeightedSum {
  std::vector<OperatorSpec> terms;  // term n carries weight 2^-(n+1)
  // Sum over a decomposition of the underlying measure space into disjoint
  // parts (the polygon construction with horizontal/vertical ends). The
  // characteristic-set formula is the same, but the positivity hypothesis of
  // the plain sum rule is not required.
  bool disjoint_parts = false;
};
struct AdjointOf {
  std::shared_ptr<const OperatorSpec> inner;
};

struct OperatorSpec {
  std::variant<Inclusion, Multiplication, Averaging, RiemannLiouville,
               RieszPotential, RademacherHorizontal, RademacherVertical,
               WeightedSum, AdjointOf>
      kind;
};

CharacteristicProfile profile(const OperatorSpec& spec);

namespace detail {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

inline VElement dual_v(const VElement& e) {
  if (std::holds_alternative<VPoint>(e))
    return VPoint{dual_point(std::get<VPoint>(e).at)};
  const auto& s = std::get<VSegment>(e);
  return VSegment{dual_point(s.b), dual_point(s.a), s.closed_b, s.closed_a};
}

// Profile of the region left of a single line, S = L closed on the line,
// K open, V the full in-square open segment.
inline CharacteristicProfile line_profile(const LineConstraint& line,
                                          std::optional<VerticalCut> cut,
                                          RatPoint v_lo, RatPoint v_hi,
                                          bool v_hi_closed = false) {
  CharacteristicProfile pr;
  std::vector<LineConstraint> ls;
  std::vector<VerticalCut> cs;
  ls.push_back(line);
  if (cut) cs.push_back(*cut);
  pr.L = MonotoneRegion::from_constraints(ls, cs);
  pr.S = pr.L;
  ls.back().closed = false;
  if (!cs.empty()) cs.back().closed = false;
  pr.K = MonotoneRegion::from_constraints(ls, cs);
  pr.v.push_back(VSegment{std::move(v_lo), std::move(v_hi), false, v_hi_closed});
  return pr;
}

}  // namespace detail

inline bool is_positive_kind(const OperatorSpec& spec) {
  return std::visit(
      detail::overloaded{
          [](const RademacherHorizontal&) { return false; },
          [](const RademacherVertical&) { return false; },
          [](const WeightedSum& w) {
            for (const auto& t : w.terms)
              if (!is_positive_kind(t)) return false;
            return true;
          },
          [](const AdjointOf& a) { return is_positive_kind(*a.inner); },
          [](const auto&) { return true; }},
      spec.kind);
}

// Clip a V element to the member-set of a region; nullopt when nothing is
// left.
inline std::optional<VElement> clip_v_element(const VElement& e, const MonotoneRegion& R) {
  auto s = detail::view(e);
  RatInterval t = segment_in_region(R, s.a, s.b, s.ca, s.cb);
  if (s.a == s.b) {
    if (t.is_empty()) return std::nullopt;
    return VPoint{s.a};
  }
  if (t.is_empty()) return std::nullopt;
  auto at = [&](const Rat& u) {
    return RatPoint{s.a.a + u * (s.b.a - s.a.a), s.a.b + u * (s.b.b - s.a.b)};
  };
  if (t.lo == t.hi) return VPoint{at(t.lo)};
  return VSegment{at(t.lo), at(t.hi), t.lo_closed, t.hi_closed};
}

// Proposition-level sum rule for positive operators:
//   L = intersection of the L_n, S = intersection of the S_n,
//   V = (union of the V_n) within S, K = S minus V.
// With disjoint_parts the same formula applies to sums over a decomposition
// of the measure space, with no positivity requirement.
inline CharacteristicProfile sum_profile(const std::vector<OperatorSpec>& terms,
                                         bool disjoint_parts = false) {
  if (terms.empty()) throw std::invalid_argument("weighted sum needs at least one term");
  if (!disjoint_parts)
    for (const auto& t : terms)
      if (!is_positive_kind(t))
        throw std::invalid_argument(
            "sum rule requires positive operators (Rademacher kinds excluded)");
  CharacteristicProfile out;
  out.L = MonotoneRegion::whole_region();
  out.S = MonotoneRegion::whole_region();
  std::vector<CharacteristicProfile> parts;
  parts.reserve(terms.size());
  for (const auto& t : terms) {
    parts.push_back(profile(t));
    out.L = intersect(out.L, parts.back().L);
    out.S = intersect(out.S, parts.back().S);
  }
  for (const auto& part : parts)
    for (const auto& e : part.v)
      if (auto clipped = clip_v_element(e, out.S)) out.v.push_back(*clipped);

  // Merge exact duplicates (shared polygon corners appear once per summand).
  std::vector<VElement> dedup;
  for (const auto& e : out.v) {
    bool seen = false;
    for (const auto& f : dedup)
      if (e == f) { seen = true; break; }
    if (!seen) dedup.push_back(e);
  }
  out.v = std::move(dedup);

  // K: open every S-edge supported by a V segment.
  if (out.S.whole() || out.S.empty()) {
    out.K = out.S;
  } else {
    const auto& verts = out.S.vertices();
    std::vector<bool> kflags = out.S.edge_closed();
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
      const RatPoint& x = verts[i];
      const RatPoint& y = verts[i + 1];
      Rat ex = y.a - x.a, ey = y.b - x.b;
      for (const auto& e : out.v) {
        if (!std::holds_alternative<VSegment>(e)) continue;
        const auto& s = std::get<VSegment>(e);
        // collinear with the edge?
        if (ex * (s.a.b - x.b) != ey * (s.a.a - x.a)) continue;
        if (ex * (s.b.b - x.b) != ey * (s.b.a - x.a)) continue;
        // nondegenerate overlap along the edge direction
        const bool vert = (ex == 0);
        Rat e_lo = vert ? x.b : x.a, e_hi = vert ? y.b : y.a;
        Rat s_lo = vert ? s.a.b : s.a.a, s_hi = vert ? s.b.b : s.b.a;
        if (s_lo > s_hi) std::swap(s_lo, s_hi);
        Rat lo = e_lo > s_lo ? e_lo : s_lo;
        Rat hi = e_hi < s_hi ? e_hi : s_hi;
        if (lo < hi) {
          kflags[i] = false;
          break;
        }
      }
    }
    out.K = MonotoneRegion::from_chain(verts, kflags);
  }
  out.assumes_uniform_norm_bound = terms.size() > 1;
  return out;
}

inline CharacteristicProfile profile(const OperatorSpec& spec) {
  using detail::line_profile;
  return std::visit(
      detail::overloaded{
          [](const Inclusion&) {
            CharacteristicProfile pr;
            pr.L = MonotoneRegion::from_constraints({{Rat(1), Rat(0), true}}, {});
            return pr;
          },
          [](const Multiplication& m) {
            if (!(m.r > 1)) throw std::invalid_argument("multiplication needs r > 1");
            CharacteristicProfile pr;
            pr.L = MonotoneRegion::from_constraints({{Rat(1), Rat(1) / m.r, true}}, {});
            return pr;
          },
          [](const Averaging& a) {
            if (!(a.alpha > 0 && a.alpha < 1))
              throw std::invalid_argument("averaging needs alpha in (0,1)");
            return line_profile({Rat(1), -a.alpha, true}, std::nullopt,
                                {a.alpha, Rat(0)}, {Rat(1), Rat(1) - a.alpha});
          },
          [](const RiemannLiouville& a) {
            if (!(a.alpha > 0 && a.alpha < 1))
              throw std::invalid_argument("Riemann-Liouville needs alpha in (0,1)");
            return line_profile({Rat(1), -a.alpha, true}, std::nullopt,
                                {a.alpha, Rat(0)}, {Rat(1), Rat(1) - a.alpha});
          },
          [](const RieszPotential& rp) {
            if (!(rp.lambda > 0 && rp.lambda < 1 && rp.alpha > 0 && rp.alpha < 1))
              throw std::invalid_argument("Riesz potential needs lambda, alpha in (0,1)");
            Rat k = Rat(1) / rp.alpha;
            Rat c = (rp.lambda - 1) / rp.alpha;  // beta = (alpha - (1-lambda)) / alpha_dim
            Rat reach = (Rat(1) - rp.lambda) / (Rat(1) - rp.alpha);
            if (reach >= 1) {
              // segment runs to the right edge (corner (1,1) when lambda == alpha)
              return line_profile({k, c, true}, std::nullopt,
                                  {Rat(1) - rp.lambda, Rat(0)},
                                  {Rat(1), rp.lambda / rp.alpha});
            }
            // lambda > alpha: segment stops at the diagonal, endpoint open,
            // vertical boundary at alpha = reach excluded (open question in
            // the source theory, encoded as an open edge)
            return line_profile({k, c, true}, VerticalCut{reach, false},
                                {Rat(1) - rp.lambda, Rat(0)}, {reach, reach});
          },
          [](const RademacherHorizontal& rh) {
            if (!(rh.q0 > 2))
              throw std::invalid_argument("horizontal Rademacher operator needs q0 > 2");
            Rat b0 = Rat(1) / rh.q0;
            return line_profile({Rat(0), b0, true}, std::nullopt, {Rat(0), b0},
                                {Rat(1), b0});
          },
          [](const RademacherVertical& rv) {
            if (!(rv.p0 > 1 && rv.p0 < 2))
              throw std::invalid_argument("vertical Rademacher operator needs p0 in (1,2)");
            Rat a0 = Rat(1) / rv.p0;
            CharacteristicProfile pr;
            pr.L = MonotoneRegion::from_constraints({}, {{a0, true}});
            pr.S = pr.L;
            pr.K = MonotoneRegion::from_constraints({}, {{a0, false}});
            pr.v.push_back(VSegment{{a0, Rat(0)}, {a0, Rat(1)}, false, false});
            return pr;
          },
          [](const WeightedSum& w) { return sum_profile(w.terms, w.disjoint_parts); },
          [](const AdjointOf& adj) {
            CharacteristicProfile inner = profile(*adj.inner);
            CharacteristicProfile pr;
            pr.L = dual_region(inner.L);
            pr.K = dual_region(inner.K);
            pr.S = dual_region(inner.S);
            for (const auto& e : inner.v) pr.v.push_back(detail::dual_v(e));
            pr.assumes_uniform_norm_bound = inner.assumes_uniform_norm_bound;
            return pr;
          }},
      spec.kind);
}

// phi-conjugate descriptor. profile(dual_spec(s)) is the phi-image of
// profile(s); for catalog operators whose V avoids R = {alpha < beta < 1/2}
// this is exactly the adjoint's profile.
inline OperatorSpec dual_spec(const OperatorSpec& spec) {
  return OperatorSpec{AdjointOf{std::make_shared<const OperatorSpec>(spec)}};
}

// ---------------------------------------------------------------------------
// Line factories (the mainline construction, case by slope)

// Operator whose V-characteristic set is the given member of the family L.
inline OperatorSpec line_operator(const LineEll& ell) {
  if (!in_family(ell))
    throw std::invalid_argument("line is not in the admissible family");
  if (ell.is_vertical()) return OperatorSpec{RademacherVertical{Rat(1) / ell.anchor.a}};
  const Rat& k = *ell.slope;
  if (k == 0) return OperatorSpec{RademacherHorizontal{Rat(1) / ell.anchor.b}};
  if (k < 1) {
    // dualize: phi maps the line to one of slope 1/k above 1
    LineEll conj = LineEll::through(dual_point(ell.anchor), Rat(1) / k);
    return dual_spec(line_operator(conj));
  }
  Rat c = ell.x_intercept();  // in (0,1) for admissible lines
  if (k == 1) return OperatorSpec{RiemannLiouville{c}};
  // slope > 1: Riesz potential onto an Ahlfors (1/k)-regular target,
  // lambda = 1 - c <= 1/k by admissibility
  return OperatorSpec{RieszPotential{Rat(1) - c, Rat(1) / k}};
}

// Weighted sum realizing V = boundary of the intersection polygon of the
// given lines (slopes strictly increasing; 0 and infinity allowed at the
// ends).
inline OperatorSpec polygon_operator(const std::vector<LineEll>& lines) {
  if (lines.empty()) throw std::invalid_argument("polygon needs at least one line");
  auto slope_less = [](const LineEll& x, const LineEll& y) {
    if (x.is_vertical()) return false;
    if (y.is_vertical()) return true;
    return *x.slope < *y.slope;
  };
  for (size_t i = 0; i + 1 < lines.size(); ++i)
    if (!slope_less(lines[i], lines[i + 1]))
      throw std::invalid_argument("polygon lines need strictly increasing slopes");
  WeightedSum sum;
  for (const auto& l : lines) {
    sum.terms.push_back(line_operator(l));
    if (!is_positive_kind(sum.terms.back())) sum.disjoint_parts = true;
  }
  return OperatorSpec{std::move(sum)};
}

// Weighted sum whose V-characteristic set is dense in a convex curve; the
// emitted profile certifies exactly the sampled tangency points. K is the
// interior region: boundary membership away from the samples is not
// certified by the finite approximation.
inline std::pair<OperatorSpec, CharacteristicProfile> curve_operator(
    const std::vector<std::pair<Q2Point, Rat>>& samples) {
  if (samples.empty()) throw std::invalid_argument("curve needs at least one sample");
  WeightedSum sum;
  MonotoneRegion hull = MonotoneRegion::whole_region();
  for (const auto& [pt, slope] : samples) {
    LineEll tangent = LineEll::through(pt.pt(), slope);
    if (!in_family(tangent))
      throw std::invalid_argument("tangent line is not in the admissible family");
    sum.terms.push_back(line_operator(tangent));
    hull = intersect(hull, left_region(tangent, true));
  }
  CharacteristicProfile pr;
  pr.L = hull;
  pr.S = hull;
  for (const auto& [pt, slope] : samples) {
    (void)slope;
    if (!detail::on_chain(hull, pt.pt()))
      throw std::invalid_argument("samples are not tangency points of a convex curve");
    pr.v.push_back(VPoint{pt.pt()});
  }
  if (!hull.whole() && !hull.empty()) {
    std::vector<bool> open_flags(hull.vertices().size() - 1, false);
    pr.K = MonotoneRegion::from_chain(hull.vertices(), open_flags);
  } else {
    pr.K = hull;
  }
  pr.assumes_uniform_norm_bound = samples.size() > 1;
  return {OperatorSpec{std::move(sum)}, std::move(pr)};
}

}  // namespace charset
