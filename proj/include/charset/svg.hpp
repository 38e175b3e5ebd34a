#pragma once

// Static SVG rendering of characteristic profiles: unit square, diagonal,
// the band {alpha <= 1/2 <= beta}, the L-region shaded, V stroked bold.
// Coordinates map the unit square to a 500x500 viewbox with the beta axis
// pointing up; numbers are printed with 6 significant digits so output is
// byte-stable.

#include "charset/profile.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace charset {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string svg_xy(const RatPoint& p) {
  double x = 40.0 + 500.0 * rat_to_double(p.a);
  double y = 540.0 - 500.0 * rat_to_double(p.b);
  return svg_num(x) + "," + svg_num(y);
}

}  // namespace detail

inline std::string profile_to_svg(const CharacteristicProfile& pr) {
  using detail::svg_num;
  using detail::svg_xy;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 580 580\">\n";
  s += "<rect x=\"40\" y=\"40\" width=\"500\" height=\"500\" fill=\"white\" "
       "stroke=\"black\" stroke-width=\"1.5\"/>\n";
  // band {0 < alpha <= 1/2 <= beta < 1}
  s += "<rect x=\"40\" y=\"40\" width=\"250\" height=\"250\" fill=\"#eef3fb\"/>\n";
  // diagonal
  s += "<line x1=\"40\" y1=\"540\" x2=\"540\" y2=\"40\" stroke=\"#999999\" "
       "stroke-width=\"0.8\"/>\n";

  // L-region shaded: chain plus the upper-left square boundary
  if (pr.L.whole()) {
    s += "<rect x=\"40\" y=\"40\" width=\"500\" height=\"500\" fill=\"#cddcf3\" "
         "fill-opacity=\"0.55\"/>\n";
  } else if (!pr.L.empty()) {
    const auto& v = pr.L.vertices();
    std::string pts;
    for (const auto& p : v) pts += svg_xy(p) + " ";
    const RatPoint& last = v.back();
    const RatPoint& first = v.front();
    // close around the upper-left: right-edge exits pass through (1,1),
    // then (0,1), then (0,0) when the chain entered through the bottom edge
    if (last.b != 1) pts += svg_xy({Rat(1), Rat(1)}) + " ";
    pts += svg_xy({Rat(0), Rat(1)}) + " ";
    if (first.b == 0 && first.a != 0) pts += svg_xy({Rat(0), Rat(0)}) + " ";
    s += "<polygon points=\"" + pts + "\" fill=\"#cddcf3\" fill-opacity=\"0.55\" "
         "stroke=\"#5b7db1\" stroke-width=\"1\"/>\n";
  }

  // V bold
  for (const auto& e : pr.v) {
    if (std::holds_alternative<VSegment>(e)) {
      const auto& seg = std::get<VSegment>(e);
      auto a = svg_xy(seg.a), b = svg_xy(seg.b);
      auto comma_a = a.find(','), comma_b = b.find(',');
      s += "<line x1=\"" + a.substr(0, comma_a) + "\" y1=\"" + a.substr(comma_a + 1) +
           "\" x2=\"" + b.substr(0, comma_b) + "\" y2=\"" + b.substr(comma_b + 1) +
           "\" stroke=\"black\" stroke-width=\"4\"/>\n";
    } else {
      const auto& p = std::get<VPoint>(e).at;
      double x = 40.0 + 500.0 * rat_to_double(p.a);
      double y = 540.0 - 500.0 * rat_to_double(p.b);
      s += "<circle cx=\"" + svg_num(x) + "\" cy=\"" + svg_num(y) +
           "\" r=\"4\" fill=\"black\"/>\n";
    }
  }

  // axis labels
  s += "<text x=\"548\" y=\"545\" font-size=\"14\">1/p</text>\n";
  s += "<text x=\"18\" y=\"34\" font-size=\"14\">1/q</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace charset
