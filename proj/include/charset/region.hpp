#pragma once

// Exact geometry of monotone convex regions of the open unit square in
// (1/p, 1/q) coordinates.
//
// A nonempty, non-whole region is stored by its lower-right boundary chain:
// a polyline from the bottom/left edge of the closed square to the top/right
// edge, with strictly increasing edge slopes in [0, +inf]. The region is the
// set of open-square points weakly to the upper-left of the chain; each edge
// carries a closed/excluded flag, and a chain vertex belongs to the region
// iff both adjacent edges are closed.
//
// Every region is built through one canonical constraint->envelope path
// (lines "beta >= k*alpha + c" plus at most one vertical cutoff
// "alpha <= a"), so equal point sets have identical representations.

#include "charset/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace charset {

struct RatPoint {
  Rat a;  // alpha = 1/p
  Rat b;  // beta  = 1/q
  friend bool operator==(const RatPoint& x, const RatPoint& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// Point of the open unit square; construction rejects boundary values.
struct Q2Point {
  Rat alpha, beta;
  Q2Point(Rat a, Rat b) : alpha(std::move(a)), beta(std::move(b)) {
    if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1))
      throw std::invalid_argument("Q2Point must lie in the open unit square");
  }
  RatPoint pt() const { return {alpha, beta}; }
  friend bool operator==(const Q2Point& x, const Q2Point& y) {
    return x.alpha == y.alpha && x.beta == y.beta;
  }
};

enum class Where { inside, boundary, outside };

// One half-plane constraint beta >= k*alpha + c (strict when !closed).
struct LineConstraint {
  Rat k, c;
  bool closed = true;
};

// alpha <= a (strict when !closed).
struct VerticalCut {
  Rat a;
  bool closed = true;
};

class MonotoneRegion {
 public:
  MonotoneRegion() = default;

  static MonotoneRegion empty_region() { return MonotoneRegion(); }
  static MonotoneRegion whole_region() {
    MonotoneRegion r;
    r.whole_ = true;
    return r;
  }

  // Canonical builder: intersect the given half-planes with the square.
  static MonotoneRegion from_constraints(std::vector<LineConstraint> lines,
                                         std::vector<VerticalCut> cuts);

  // Validates and canonicalizes an explicit chain (used by JSON input).
  static MonotoneRegion from_chain(const std::vector<RatPoint>& verts,
                                   const std::vector<bool>& edge_closed);

  bool empty() const { return !whole_ && verts_.empty(); }
  bool whole() const { return whole_; }
  const std::vector<RatPoint>& vertices() const { return verts_; }
  const std::vector<bool>& edge_closed() const { return closed_; }

  friend bool operator==(const MonotoneRegion& x, const MonotoneRegion& y) {
    return x.whole_ == y.whole_ && x.verts_ == y.verts_ && x.closed_ == y.closed_;
  }

  // Same underlying chain geometry, ignoring closure flags (equal interiors).
  bool same_geometry(const MonotoneRegion& o) const {
    return whole_ == o.whole_ && verts_ == o.verts_;
  }

  // Extract the half-plane view of this region (one constraint per edge).
  void constraints(std::vector<LineConstraint>& lines,
                   std::vector<VerticalCut>& cuts) const;

 private:
  bool whole_ = false;
  std::vector<RatPoint> verts_;
  std::vector<bool> closed_;
};

namespace detail {

inline Rat line_at(const LineConstraint& l, const Rat& alpha) {
  return l.k * alpha + l.c;
}

// alpha where lines l and m meet (requires l.k != m.k).
inline Rat line_cross(const LineConstraint& l, const LineConstraint& m) {
  return (m.c - l.c) / (l.k - m.k);
}

}  // namespace detail

inline void MonotoneRegion::constraints(std::vector<LineConstraint>& lines,
                                        std::vector<VerticalCut>& cuts) const {
  lines.clear();
  cuts.clear();
  if (whole_ || empty()) return;
  for (size_t i = 0; i + 1 < verts_.size(); ++i) {
    const RatPoint& p = verts_[i];
    const RatPoint& q = verts_[i + 1];
    if (p.a == q.a) {
      cuts.push_back({p.a, closed_[i]});
    } else {
      Rat k = (q.b - p.b) / (q.a - p.a);
      lines.push_back({k, p.b - k * p.a, closed_[i]});
    }
  }
}

inline MonotoneRegion MonotoneRegion::from_constraints(
    std::vector<LineConstraint> lines, std::vector<VerticalCut> cuts) {
  // Vertical cutoff: keep the strongest.
  std::optional<VerticalCut> cut;
  for (const auto& c : cuts) {
    if (c.a <= 0) return empty_region();
    if (c.a >= 1) continue;  // square already enforces alpha < 1
    if (!cut || c.a < cut->a)
      cut = c;
    else if (c.a == cut->a)
      cut->closed = cut->closed && c.closed;
  }

  // Any line with c >= 1 empties the region: monotone sets reach alpha -> 0.
  for (const auto& l : lines)
    if (l.c >= 1) return empty_region();

  // Drop lines that never bind inside the square (value <= 0 throughout).
  std::vector<LineConstraint> live;
  for (const auto& l : lines) {
    if (l.k < 0) throw std::invalid_argument("negative-slope constraint");
    if (l.c <= 0 && l.k + l.c <= 0) continue;
    live.push_back(l);
  }

  if (live.empty()) {
    if (!cut) return whole_region();
    MonotoneRegion r;
    r.verts_ = {{cut->a, Rat(0)}, {cut->a, Rat(1)}};
    r.closed_ = {cut->closed};
    return r;
  }

  // Within equal slopes only the largest intercept binds; equal lines AND
  // their closure flags (closed ∩ open = open).
  std::sort(live.begin(), live.end(), [](const LineConstraint& x, const LineConstraint& y) {
    if (x.k != y.k) return x.k < y.k;
    return x.c > y.c;
  });
  std::vector<LineConstraint> uniq;
  for (auto& l : live) {
    if (!uniq.empty() && uniq.back().k == l.k) {
      if (uniq.back().c == l.c) uniq.back().closed = uniq.back().closed && l.closed;
      continue;
    }
    uniq.push_back(l);
  }

  // Upper envelope of the lines, slopes ascending.
  struct Active {
    LineConstraint line;
    Rat start;  // alpha where this line becomes the envelope
  };
  std::vector<Active> env;
  for (const auto& l : uniq) {
    Rat start(-1);
    while (!env.empty()) {
      const Active& top = env.back();
      Rat x = detail::line_cross(top.line, l);
      if (x <= top.start) {
        env.pop_back();
        continue;
      }
      start = x;
      break;
    }
    if (env.empty()) start = Rat(-1);
    env.push_back({l, start});
  }

  const Rat A = cut ? cut->a : Rat(1);

  // Walk the envelope over alpha in (0, A], clipped to 0 <= beta <= 1.
  std::vector<RatPoint> verts;
  std::vector<bool> flags;
  auto push_edge = [&](const RatPoint& from, const RatPoint& to, bool closed) {
    if (from == to) return;
    if (verts.empty()) verts.push_back(from);
    verts.push_back(to);
    flags.push_back(closed);
  };

  // Find entry: first alpha where envelope >= 0.
  size_t i0 = 0;
  while (i0 + 1 < env.size() && env[i0 + 1].start <= 0) ++i0;
  Rat e0 = detail::line_at(env[i0].line, Rat(0));
  if (e0 >= 1) return empty_region();

  RatPoint cursor{Rat(0), e0};
  size_t idx = i0;
  bool started = e0 >= 0;
  if (!started) {
    // advance to the zero crossing
    while (true) {
      const LineConstraint& l = env[idx].line;
      Rat seg_end = (idx + 1 < env.size()) ? env[idx + 1].start : A;
      if (seg_end > A) seg_end = A;
      Rat v_end = detail::line_at(l, seg_end);
      if (v_end >= 0 && l.k > 0) {
        Rat x0 = -l.c / l.k;
        if (x0 <= A) {
          cursor = {x0, Rat(0)};
          started = true;
          break;
        }
      }
      if (idx + 1 < env.size() && env[idx + 1].start < A) {
        ++idx;
        continue;
      }
      break;
    }
    if (!started) {
      // envelope stays below the square up to the cutoff
      if (!cut) return whole_region();
      MonotoneRegion r;
      r.verts_ = {{cut->a, Rat(0)}, {cut->a, Rat(1)}};
      r.closed_ = {cut->closed};
      return r;
    }
  }

  // Emit edges until beta reaches 1 or alpha reaches A.
  while (true) {
    const LineConstraint& l = env[idx].line;
    Rat seg_end = (idx + 1 < env.size()) ? env[idx + 1].start : A;
    if (seg_end > A) seg_end = A;
    Rat v_end = detail::line_at(l, seg_end);
    if (v_end >= 1 && l.k > 0) {
      Rat x1 = (Rat(1) - l.c) / l.k;
      if (x1 >= cursor.a && x1 <= seg_end) {
        push_edge(cursor, {x1, Rat(1)}, l.closed);
        cursor = {x1, Rat(1)};
        break;
      }
    }
    push_edge(cursor, {seg_end, v_end}, l.closed);
    cursor = {seg_end, v_end};
    if (idx + 1 < env.size() && env[idx + 1].start < A) {
      ++idx;
      continue;
    }
    break;
  }

  if (cursor.b < 1 && cursor.a == A) {
    if (cut) {
      push_edge(cursor, {A, Rat(1)}, cut->closed);
    }
    // A == 1 without a cutoff: the chain legitimately ends on the right edge.
  }

  if (verts.size() < 2) {
    // Binding never materialized inside the square.
    if (!cut) return whole_region();
    MonotoneRegion r;
    r.verts_ = {{cut->a, Rat(0)}, {cut->a, Rat(1)}};
    r.closed_ = {cut->closed};
    return r;
  }

  MonotoneRegion r;
  r.verts_ = std::move(verts);
  r.closed_ = std::move(flags);
  return r;
}

inline MonotoneRegion MonotoneRegion::from_chain(const std::vector<RatPoint>& verts,
                                                 const std::vector<bool>& edge_closed) {
  if (verts.empty()) return empty_region();
  if (verts.size() < 2 || edge_closed.size() + 1 != verts.size())
    throw std::invalid_argument("chain needs n>=2 vertices and n-1 edge flags");
  std::vector<LineConstraint> lines;
  std::vector<VerticalCut> cuts;
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    const RatPoint& p = verts[i];
    const RatPoint& q = verts[i + 1];
    if (p.a > q.a || p.b > q.b || (p.a == q.a && p.b == q.b))
      throw std::invalid_argument("chain vertices must increase");
    if (p.a < 0 || q.a > 1 || p.b < 0 || q.b > 1)
      throw std::invalid_argument("chain leaves the closed square");
    if (p.a == q.a)
      cuts.push_back({p.a, edge_closed[i]});
    else {
      Rat k = (q.b - p.b) / (q.a - p.a);
      lines.push_back({k, p.b - k * p.a, edge_closed[i]});
    }
  }
  return from_constraints(std::move(lines), std::move(cuts));
}

// ---------------------------------------------------------------------------
// Membership

// Classification only; see member() for the flag-aware set membership.
// boundary means "on the chain polyline", whatever the covering edge's flag.
// The chain's envelope is nondecreasing, so a point left of the first vertex
// is inside and a point right of the last is outside.
inline Where contains(const MonotoneRegion& r, const Q2Point& p) {
  if (r.whole()) return Where::inside;
  if (r.empty()) return Where::outside;
  const auto& v = r.vertices();
  const Rat& a = p.alpha;
  const Rat& b = p.beta;
  if (a < v.front().a) return Where::inside;
  if (a > v.back().a) return Where::outside;
  bool on_chain = false;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    if (a < v[i].a || a > v[i + 1].a) continue;  // edge does not span alpha
    if (v[i].a == v[i + 1].a) {
      // vertical trailing edge at alpha == a
      if (b < v[i].b) return Where::outside;
      on_chain = true;  // everything from the joint up lies on the edge
      continue;
    }
    // division-free: sign of (dx)(b - y0) - (dy)(a - x0), dx > 0
    int sgn = cmp((v[i + 1].a - v[i].a) * (b - v[i].b),
                  (v[i + 1].b - v[i].b) * (a - v[i].a));
    if (sgn < 0) return Where::outside;
    if (sgn == 0) on_chain = true;
  }
  return on_chain ? Where::boundary : Where::inside;
}

// Flag-aware membership: a boundary point belongs iff every edge whose line
// passes through it is closed (this yields the AND rule at vertices).
inline bool member(const MonotoneRegion& r, const Q2Point& p) {
  if (r.whole()) return true;
  if (r.empty()) return false;
  Where w = contains(r, p);
  if (w == Where::inside) return true;
  if (w == Where::outside) return false;
  const auto& v = r.vertices();
  const auto& fl = r.edge_closed();
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    // does p lie on edge i (including endpoints)?
    const RatPoint& x = v[i];
    const RatPoint& y = v[i + 1];
    bool on;
    if (x.a == y.a) {
      on = (p.alpha == x.a) && (p.beta >= x.b) && (p.beta <= y.b);
    } else {
      if (p.alpha < x.a || p.alpha > y.a) {
        on = false;
      } else {
        on = (y.a - x.a) * (p.beta - x.b) == (y.b - x.b) * (p.alpha - x.a);
      }
    }
    if (on && !fl[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Region operations

inline MonotoneRegion intersect(const MonotoneRegion& x, const MonotoneRegion& y) {
  if (x.empty() || y.empty()) return MonotoneRegion::empty_region();
  if (x.whole()) return y;
  if (y.whole()) return x;
  std::vector<LineConstraint> lines, l2;
  std::vector<VerticalCut> cuts, c2;
  x.constraints(lines, cuts);
  y.constraints(l2, c2);
  lines.insert(lines.end(), l2.begin(), l2.end());
  cuts.insert(cuts.end(), c2.begin(), c2.end());
  return MonotoneRegion::from_constraints(std::move(lines), std::move(cuts));
}

inline bool subset(const MonotoneRegion& inner, const MonotoneRegion& outer) {
  return intersect(inner, outer) == inner;
}

// phi(alpha, beta) = (1 - beta, 1 - alpha); an involution of the square.
inline RatPoint dual_point(const RatPoint& p) { return {Rat(1) - p.b, Rat(1) - p.a}; }

inline MonotoneRegion dual_region(const MonotoneRegion& r) {
  if (r.whole() || r.empty()) return r;
  std::vector<LineConstraint> lines, dl;
  std::vector<VerticalCut> cuts, dc;
  r.constraints(lines, cuts);
  for (const auto& l : lines) {
    if (l.k == 0) {
      // beta >= c  ->  alpha' <= 1 - c
      dc.push_back({Rat(1) - l.c, l.closed});
    } else {
      // beta >= k*alpha + c  ->  beta' >= (1/k)*alpha' + (k + c - 1)/k
      dl.push_back({Rat(1) / l.k, (l.k + l.c - 1) / l.k, l.closed});
    }
  }
  for (const auto& c : cuts) {
    // alpha <= a  ->  beta' >= 1 - a
    dl.push_back({Rat(0), Rat(1) - c.a, c.closed});
  }
  return MonotoneRegion::from_constraints(std::move(dl), std::move(dc));
}

// Smallest monotone convex region containing the given points.
inline MonotoneRegion monotone_closure(std::vector<Q2Point> points) {
  if (points.empty()) return MonotoneRegion::empty_region();
  // Drop points dominated by another (p dominated by q when p is inside q's
  // upper-left corner: p.a <= q.a and p.b >= q.b).
  std::vector<RatPoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(p.pt());
  std::sort(pts.begin(), pts.end(), [](const RatPoint& x, const RatPoint& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<RatPoint> frontier;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      if (p.a <= q.a && p.b >= q.b) {
        // tie-break: equal points removed above, so strict somewhere
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(p);
  }
  // frontier is now strictly increasing in both coordinates; take the lower
  // convex hull so edge slopes strictly increase.
  std::vector<RatPoint> hull;
  for (const auto& p : frontier) {
    while (hull.size() >= 2) {
      const RatPoint& u = hull[hull.size() - 2];
      const RatPoint& v = hull[hull.size() - 1];
      // pop v when slope(u,v) >= slope(v,p)
      Rat lhs = (v.b - u.b) * (p.a - v.a);
      Rat rhs = (p.b - v.b) * (v.a - u.a);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<RatPoint> chain;
  std::vector<bool> flags;
  chain.push_back({Rat(0), hull.front().b});
  for (const auto& p : hull) chain.push_back(p);
  chain.push_back({hull.back().a, Rat(1)});
  flags.assign(chain.size() - 1, true);
  return MonotoneRegion::from_chain(chain, flags);
}

// ---------------------------------------------------------------------------
// Lines of the family \mathfrak{L}

struct LineEll {
  std::optional<Rat> slope;  // nullopt = vertical (slope INFINITY)
  RatPoint anchor;           // any point of the affine line

  static LineEll horizontal(Rat beta0) { return {Rat(0), {Rat(0), beta0}}; }
  static LineEll vertical(Rat alpha0) { return {std::nullopt, {alpha0, Rat(0)}}; }
  static LineEll through(RatPoint p, Rat k) { return {std::move(k), std::move(p)}; }

  bool is_vertical() const { return !slope.has_value(); }

  // beta value at alpha (finite slope only).
  Rat at(const Rat& alpha) const { return *slope * (alpha - anchor.a) + anchor.b; }

  // alpha where the line meets beta = 0 (finite positive slope only).
  Rat x_intercept() const { return anchor.a - anchor.b / *slope; }

  // Intersection with the closed unit square, ordered lower-left first.
  // Returns nullopt when the line misses the open square.
  std::optional<std::pair<RatPoint, RatPoint>> clipped() const {
    if (is_vertical()) {
      if (!(anchor.a > 0 && anchor.a < 1)) return std::nullopt;
      return std::make_pair(RatPoint{anchor.a, Rat(0)}, RatPoint{anchor.a, Rat(1)});
    }
    const Rat& k = *slope;
    if (k == 0) {
      if (!(anchor.b > 0 && anchor.b < 1)) return std::nullopt;
      return std::make_pair(RatPoint{Rat(0), anchor.b}, RatPoint{Rat(1), anchor.b});
    }
    std::vector<RatPoint> hits;
    auto consider = [&](const RatPoint& p) {
      if (p.a < 0 || p.a > 1 || p.b < 0 || p.b > 1) return;
      for (const auto& q : hits)
        if (q == p) return;
      hits.push_back(p);
    };
    consider({Rat(0), at(Rat(0))});
    consider({Rat(1), at(Rat(1))});
    consider({x_intercept(), Rat(0)});
    consider({anchor.a + (Rat(1) - anchor.b) / k, Rat(1)});
    if (hits.size() < 2) return std::nullopt;
    std::sort(hits.begin(), hits.end(), [](const RatPoint& x, const RatPoint& y) {
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
    RatPoint lo = hits.front(), hi = hits.back();
    if (lo == hi) return std::nullopt;
    // require actual open-square content: midpoint strictly inside
    Rat ma = (lo.a + hi.a) / 2, mb = (lo.b + hi.b) / 2;
    if (!(ma > 0 && ma < 1 && mb > 0 && mb < 1)) return std::nullopt;
    return std::make_pair(lo, hi);
  }
};

// Membership in the family L: slope in {0, inf} missing the closed band
// {0 < alpha <= 1/2 <= beta < 1}, or positive finite slope lying entirely
// below the diagonal within the open square.
inline bool in_family(const LineEll& line) {
  auto seg = line.clipped();
  if (!seg) return false;
  const Rat half(1, 2);
  if (line.is_vertical()) return line.anchor.a > half;
  if (*line.slope == 0) return line.anchor.b < half;
  if (*line.slope < 0) return false;
  const auto& [lo, hi] = *seg;
  // strictly below the diagonal on the open part: beta <= alpha at both
  // clipped endpoints (which sit on the square boundary) and not the
  // diagonal itself
  if (lo.b > lo.a || hi.b > hi.a) return false;
  if (lo.b == lo.a && hi.b == hi.a) return false;
  return true;
}

// Everything on the band side of the line (the closed flag controls
// whether the line itself is included).
inline MonotoneRegion left_region(const LineEll& line, bool closed) {
  if (line.is_vertical())
    return MonotoneRegion::from_constraints({}, {{line.anchor.a, closed}});
  const Rat& k = *line.slope;
  return MonotoneRegion::from_constraints({{k, line.anchor.b - k * line.anchor.a, closed}}, {});
}

// ---------------------------------------------------------------------------
// Exact one-dimensional clipping along a parametrized segment

// Parameter interval with per-end closedness flags.
struct RatInterval {
  Rat lo, hi;
  bool lo_closed = true, hi_closed = true;

  bool is_empty() const {
    if (lo > hi) return true;
    if (lo == hi) return !(lo_closed && hi_closed);
    return false;
  }
  static RatInterval empty() { return {Rat(1), Rat(0), false, false}; }

  // restrict to value(t) = A + B*t >= 0 (strict when !closed)
  void clamp_linear(const Rat& A, const Rat& B, bool closed) {
    if (B == 0) {
      if (A < 0 || (A == 0 && !closed)) *this = empty();
      return;
    }
    Rat t0 = -A / B;
    if (B > 0) {
      if (t0 > lo) { lo = t0; lo_closed = closed; }
      else if (t0 == lo) lo_closed = lo_closed && closed;
    } else {
      if (t0 < hi) { hi = t0; hi_closed = closed; }
      else if (t0 == hi) hi_closed = hi_closed && closed;
    }
  }
};

// Parameter interval of {P + t(Q-P) : t in [0,1]} lying in the member-set of
// R intersected with the open square. End closedness of the input segment is
// given by p_closed / q_closed.
inline RatInterval segment_in_region(const MonotoneRegion& R, const RatPoint& P,
                                     const RatPoint& Q, bool p_closed, bool q_closed) {
  if (R.empty()) return RatInterval::empty();
  RatInterval t{Rat(0), Rat(1), p_closed, q_closed};
  Rat da = Q.a - P.a, db = Q.b - P.b;
  // open square: 0 < alpha < 1, 0 < beta < 1
  t.clamp_linear(P.a, da, false);
  t.clamp_linear(Rat(1) - P.a, -da, false);
  t.clamp_linear(P.b, db, false);
  t.clamp_linear(Rat(1) - P.b, -db, false);
  if (R.whole() || t.is_empty()) return t;
  std::vector<LineConstraint> lines;
  std::vector<VerticalCut> cuts;
  R.constraints(lines, cuts);
  for (const auto& l : lines) {
    // beta - k*alpha - c >= 0
    t.clamp_linear(P.b - l.k * P.a - l.c, db - l.k * da, l.closed);
    if (t.is_empty()) return t;
  }
  for (const auto& c : cuts) {
    // a - alpha >= 0
    t.clamp_linear(c.a - P.a, -da, c.closed);
    if (t.is_empty()) return t;
  }
  return t;
}

// Does the closed segment [P,Q] meet the member-set of R (within the open
// square)?
inline bool segment_meets(const MonotoneRegion& R, const RatPoint& P, const RatPoint& Q) {
  return !segment_in_region(R, P, Q, true, true).is_empty();
}

}  // namespace charset
