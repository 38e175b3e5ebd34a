#pragma once

// Characteristic profiles: the (L, K, S, V) quadruple attached to an
// operator, plus the structural rules the calculus imposes on them.

#include "charset/region.hpp"

#include <string>
#include <variant>
#include <vector>

namespace charset {

// V-set element: a line segment with per-end closedness. Endpoints lying on
// the square boundary are never part of the set, so their flag is false by
// construction.
struct VSegment {
  RatPoint a, b;  // a lexicographically before b
  bool closed_a = false, closed_b = false;
  friend bool operator==(const VSegment&, const VSegment&) = default;
};

struct VPoint {
  RatPoint at;
  friend bool operator==(const VPoint&, const VPoint&) = default;
};

using VElement = std::variant<VSegment, VPoint>;

struct CharacteristicProfile {
  MonotoneRegion L, K, S;
  std::vector<VElement> v;
  // Proposition-level hypothesis of the weighted-sum rule, recorded but not
  // checkable from the symbolic data.
  bool assumes_uniform_norm_bound = false;
};

// ---------------------------------------------------------------------------

// (1/p_theta, 1/q_theta) for the interpolation segment between (p0,q0) and
// (p1,q1); exponents are finite and > 1, theta strictly inside (0,1).
inline Q2Point interpolation_point(const Rat& p0, const Rat& q0, const Rat& p1,
                                   const Rat& q1, const Rat& theta) {
  if (!(p0 > 1 && q0 > 1 && p1 > 1 && q1 > 1))
    throw std::invalid_argument("exponents must be finite and > 1");
  if (!(theta > 0 && theta < 1))
    throw std::invalid_argument("theta must lie in (0,1)");
  Rat a = theta / p0 + (1 - theta) / p1;
  Rat b = theta / q0 + (1 - theta) / q1;
  return Q2Point(a, b);
}

// Hypotheses under which strict singularity at one interior point of the
// interpolation segment upgrades to compactness everywhere: true iff
// min{q0/p0, q1/p1} <= 1, or the minimum exceeds 1 and (q1-q0)/(p1-p0) < 0.
inline bool extrapolation_applicable(const Rat& p0, const Rat& q0, const Rat& p1,
                                     const Rat& q1) {
  if (!(p0 > 1 && q0 > 1 && p1 > 1 && q1 > 1))
    throw std::invalid_argument("exponents must be finite and > 1");
  if (p0 == p1 || q0 == q1)
    throw std::invalid_argument("extrapolation requires p0 != p1 and q0 != q1");
  Rat r0 = q0 / p0, r1 = q1 / p1;
  Rat mn = r0 < r1 ? r0 : r1;
  if (mn <= 1) return true;
  return (q1 - q0) / (p1 - p0) < 0;
}

// ---------------------------------------------------------------------------
// S-closure: S grows to the union of all open segments between a point of S
// and a point of L. Segments inside one supporting line of L sweep the whole
// open edge, so coverage is all-or-nothing per edge: an L-edge ends up in
// the enlarged S iff it is closed in L and S touches its closed span.
inline CharacteristicProfile s_closure(const CharacteristicProfile& profile) {
  CharacteristicProfile out = profile;
  if (profile.S.empty() || profile.L.empty()) return out;
  if (profile.L.whole()) {
    out.S = MonotoneRegion::whole_region();
    return out;
  }
  const auto& verts = profile.L.vertices();
  const auto& lflags = profile.L.edge_closed();
  std::vector<bool> sflags(lflags.size());
  for (size_t i = 0; i + 1 < verts.size(); ++i)
    sflags[i] = lflags[i] && segment_meets(profile.S, verts[i], verts[i + 1]);
  out.S = MonotoneRegion::from_chain(verts, sflags);
  return out;
}

// ---------------------------------------------------------------------------
// Structural validation

struct Violation {
  std::string rule;
  std::string detail;
};

namespace detail {

inline std::string pt_str(const RatPoint& p) {
  return "(" + rat_str(p.a) + ", " + rat_str(p.b) + ")";
}

// Is p on the boundary chain of R (closed polyline, flags ignored)?
inline bool on_chain(const MonotoneRegion& R, const RatPoint& p) {
  if (R.whole() || R.empty()) return false;
  const auto& v = R.vertices();
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    const RatPoint& x = v[i];
    const RatPoint& y = v[i + 1];
    if (p.a < x.a || p.a > y.a) continue;
    if (x.a == y.a) {
      if (p.a == x.a && p.b >= x.b && p.b <= y.b) return true;
      continue;
    }
    Rat k = (y.b - x.b) / (y.a - x.a);
    if (p.b == x.b + k * (p.a - x.a)) return true;
  }
  return false;
}

struct SegView {
  RatPoint a, b;
  bool ca, cb;
};

inline SegView view(const VElement& e) {
  if (std::holds_alternative<VPoint>(e)) {
    const auto& p = std::get<VPoint>(e).at;
    return {p, p, true, true};
  }
  const auto& s = std::get<VSegment>(e);
  return {s.a, s.b, s.closed_a, s.closed_b};
}

// Feasibility of a set of linear constraints over a V-element's point set.
// Each constraint is value(t) = A + B*t >= 0 (or strict).
struct ElementClip {
  SegView s;
  RatInterval t;
  explicit ElementClip(const VElement& e) : s(view(e)) {
    t = {Rat(0), Rat(1), s.ca, s.cb};
    if (s.a == s.b) t = {Rat(0), Rat(0), s.ca && s.cb, s.ca && s.cb};
    Rat da = s.b.a - s.a.a, db = s.b.b - s.a.b;
    // open square
    t.clamp_linear(s.a.a, da, false);
    t.clamp_linear(Rat(1) - s.a.a, -da, false);
    t.clamp_linear(s.a.b, db, false);
    t.clamp_linear(Rat(1) - s.a.b, -db, false);
  }
  Rat alpha(const Rat& t0) const { return s.a.a + t0 * (s.b.a - s.a.a); }
  Rat beta(const Rat& t0) const { return s.a.b + t0 * (s.b.b - s.a.b); }
  // alpha <= x / alpha >= x / beta <= x / beta >= x
  void alpha_le(const Rat& x, bool closed) { t.clamp_linear(x - s.a.a, s.a.a - s.b.a, closed); }
  void alpha_ge(const Rat& x, bool closed) { t.clamp_linear(s.a.a - x, s.b.a - s.a.a, closed); }
  void beta_le(const Rat& x, bool closed) { t.clamp_linear(x - s.a.b, s.a.b - s.b.b, closed); }
  void beta_ge(const Rat& x, bool closed) { t.clamp_linear(s.a.b - x, s.b.b - s.a.b, closed); }
  // alpha < beta (strict) etc.
  void below_diagonal_strict() {  // beta < alpha
    t.clamp_linear(s.a.a - s.a.b, (s.b.a - s.a.a) - (s.b.b - s.a.b), false);
  }
  void above_diagonal_strict() {  // alpha < beta
    t.clamp_linear(s.a.b - s.a.a, (s.b.b - s.a.b) - (s.b.a - s.a.a), false);
  }
};

inline bool is_horizontal(const SegView& s) { return s.a.b == s.b.b && !(s.a == s.b); }
inline bool is_vertical_seg(const SegView& s) { return s.a.a == s.b.a && !(s.a == s.b); }

}  // namespace detail

// Empty result iff all structural constraints hold. Violations are data.
inline std::vector<Violation> validate_profile(const CharacteristicProfile& pr) {
  using detail::ElementClip;
  std::vector<Violation> out;
  const Rat half(1, 2);

  // ideal inclusions K <= S <= L
  if (!subset(pr.K, pr.S)) out.push_back({"K-subset-S", "K is not contained in S"});
  if (!subset(pr.S, pr.L)) out.push_back({"S-subset-L", "S is not contained in L"});

  // equal interiors when S is nonempty
  if (!pr.S.empty()) {
    if (!pr.S.same_geometry(pr.L))
      out.push_back({"equal-interiors", "S and L have different interiors"});
    if (!pr.K.same_geometry(pr.L))
      out.push_back({"equal-interiors", "K and L have different interiors"});
  }

  // V inside the boundary of L
  for (const auto& e : pr.v) {
    auto s = detail::view(e);
    bool ok;
    if (s.a == s.b) {
      ok = detail::on_chain(pr.L, s.a);
    } else {
      RatPoint mid{(s.a.a + s.b.a) / 2, (s.a.b + s.b.b) / 2};
      ok = detail::on_chain(pr.L, s.a) && detail::on_chain(pr.L, s.b) &&
           detail::on_chain(pr.L, mid);
    }
    if (!ok)
      out.push_back({"V-on-boundary-of-L",
                     "V element " + detail::pt_str(s.a) + "-" + detail::pt_str(s.b) +
                         " leaves the boundary of L"});
  }

  // V avoids the forbidden band {0 < alpha <= 1/2 <= beta < 1}
  for (const auto& e : pr.v) {
    ElementClip c(e);
    c.alpha_le(half, true);
    c.beta_ge(half, true);
    if (!c.t.is_empty())
      out.push_back({"forbidden-band", "V meets {alpha <= 1/2 <= beta}"});
  }

  // Upper-triangle ray rules. Case (1): a V point with alpha0 < beta0 <= 1/2
  // drags the whole horizontal ray {alpha <= alpha0} into V. Case (2)
  // symmetric with the vertical ray {beta >= beta0} at 1/2 <= alpha0.
  auto horizontal_cover_from_zero = [&](const Rat& beta0, const Rat& upto) {
    // is (0, upto) x {beta0} covered by horizontal V elements?
    // desk-scale: require a single horizontal element spanning it
    for (const auto& e : pr.v) {
      auto s = detail::view(e);
      if (!detail::is_horizontal(s)) continue;
      if (s.a.b != beta0) continue;
      if (s.a.a <= 0 && s.b.a >= upto) return true;
    }
    return false;
  };
  auto vertical_cover_to_one = [&](const Rat& alpha0, const Rat& from) {
    for (const auto& e : pr.v) {
      auto s = detail::view(e);
      if (!detail::is_vertical_seg(s)) continue;
      if (s.a.a != alpha0) continue;
      if (s.a.b <= from && s.b.b >= 1) return true;
    }
    return false;
  };
  for (const auto& e : pr.v) {
    auto s = detail::view(e);
    {  // case (1): zone {alpha < beta <= 1/2}
      ElementClip c(e);
      c.above_diagonal_strict();
      c.beta_le(half, true);
      if (!c.t.is_empty()) {
        if (detail::is_horizontal(s)) {
          Rat sup = c.alpha(c.t.hi);
          if (!horizontal_cover_from_zero(s.a.b, sup))
            out.push_back({"upper-triangle-ray",
                           "horizontal V piece at beta=" + rat_str(s.a.b) +
                               " does not extend to the left edge"});
        } else if (c.t.lo == c.t.hi) {
          Rat a0 = c.alpha(c.t.lo), b0 = c.beta(c.t.lo);
          if (!horizontal_cover_from_zero(b0, a0))
            out.push_back({"upper-triangle-ray",
                           "V point " + detail::pt_str({a0, b0}) +
                               " lacks its horizontal ray"});
        } else {
          out.push_back({"upper-triangle-ray",
                         "non-horizontal V piece crosses {alpha < beta <= 1/2}"});
        }
      }
    }
    {  // case (2): zone {1/2 <= alpha < beta}
      ElementClip c(e);
      c.above_diagonal_strict();
      c.alpha_ge(half, true);
      if (!c.t.is_empty()) {
        if (detail::is_vertical_seg(s)) {
          Rat inf = c.beta(c.t.lo);
          if (!vertical_cover_to_one(s.a.a, inf))
            out.push_back({"upper-triangle-ray",
                           "vertical V piece at alpha=" + rat_str(s.a.a) +
                               " does not extend to the top edge"});
        } else if (c.t.lo == c.t.hi) {
          Rat a0 = c.alpha(c.t.lo), b0 = c.beta(c.t.lo);
          if (!vertical_cover_to_one(a0, b0))
            out.push_back({"upper-triangle-ray",
                           "V point " + detail::pt_str({a0, b0}) +
                               " lacks its vertical ray"});
        } else {
          out.push_back({"upper-triangle-ray",
                         "non-vertical V piece crosses {1/2 <= alpha < beta}"});
        }
      }
    }
    {  // strictly inside the band, {alpha < 1/2 < beta}: only horizontal or
       // vertical family pieces can pass through
      ElementClip c(e);
      c.alpha_le(half, false);
      c.beta_ge(half, false);
      if (!c.t.is_empty() && !detail::is_horizontal(s) && !detail::is_vertical_seg(s)) {
        Rat a0 = c.alpha(c.t.lo), b0 = c.beta(c.t.lo);
        if (!horizontal_cover_from_zero(b0, a0) && !vertical_cover_to_one(a0, b0))
          out.push_back({"upper-triangle-ray",
                         "isolated V content at " + detail::pt_str({a0, b0}) +
                             " inside {alpha < 1/2 < beta}"});
      }
    }
  }
  return out;
}

}  // namespace charset
