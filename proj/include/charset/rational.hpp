#pragma once

// Exact rational scalars for the region calculus. Everything geometric in
// this library runs on mpq_class; floating point only enters at the
// numerics layer (analysis.hpp and friends).

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace charset {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p/q" or a bare integer "p".
inline Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

// Always emits the "p/q" form, including "3/1" for integers, so the JSON
// schema stays uniform.
inline std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Best rational approximation of x with |x - p/q| <= tol, by continued
// fractions. Used for the CLI's documented float-to-rational snap.
inline Rat snap_rat(double x, double tol = 1e-12) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot snap non-finite value");
  const bool neg = x < 0;
  const double target = neg ? -x : x;
  double r = target;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents
  for (int iter = 0; iter < 64; ++iter) {
    double a_floor = std::floor(r);
    mpz_class a(a_floor);
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rat approx(p1, q1);
    approx.canonicalize();
    if (std::abs(approx.get_d() - target) <= tol) break;
    double frac = r - a_floor;
    if (frac <= 1e-18) break;
    r = 1.0 / frac;
    if (!std::isfinite(r)) break;
  }
  Rat out(p1, q1);
  out.canonicalize();
  if (neg) out = -out;
  if (std::abs(out.get_d() - x) > tol)
    throw std::invalid_argument("float does not snap to a rational within tolerance");
  return out;
}

}  // namespace charset
