#pragma once
// Independent helpers for tests: evaluation of scalars at rational points
// (a ring homomorphism, so it checks arithmetic without trusting the
// normal form) and seeded random inputs.

#include <array>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "qloop/coeffs.hpp"
#include "qloop/matrix.hpp"

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using Point = std::array<Rat, qloop::kVars>;

inline Rat rpow(const Rat& x, int e) {
  Rat r = 1, b = e < 0 ? Rat(1 / x) : x;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= b;
  return r;
}

inline Rat eval(const qloop::Poly& p, const Point& pt) {
  Rat s = 0;
  for (const auto& t : p.terms()) {
    Rat m = Rat(t.c);
    for (int v = 0; v < qloop::kVars; ++v) m *= rpow(pt[v], t.m.exp(v));
    s += m;
  }
  return s;
}

inline bool defined_at(const qloop::Scalar& x, const Point& pt) { return eval(x.den(), pt) != 0; }

inline Rat eval(const qloop::Scalar& x, const Point& pt) { return eval(x.num(), pt) / eval(x.den(), pt); }

inline Point point(int k) {
  // Fixed points avoiding small roots of unity and +-1.
  static const long vals[][4] = {{3, 5, 7, 11}, {-2, 13, 4, 9}, {5, -3, 17, 2}, {7, 2, -5, 3}};
  Point p;
  for (int v = 0; v < qloop::kVars; ++v) p[v] = Rat(vals[k % 4][v]) / Rat(1 + k);
  return p;
}

inline qloop::Poly random_poly(std::mt19937& g, int nterms, int nvars, int emin, int emax) {
  std::uniform_int_distribution<int> ce(-4, 4), ee(emin, emax);
  qloop::Poly p;
  for (int k = 0; k < nterms; ++k) {
    std::array<int, qloop::kVars> e{};
    for (int v = 0; v < nvars; ++v) e[v] = ee(g);
    p += qloop::Poly::monomial(qloop::Mono::from_exps(e), ce(g));
  }
  return p;
}

inline qloop::Scalar random_scalar(std::mt19937& g, int nvars = 2) {
  qloop::Poly n = random_poly(g, 3, nvars, -2, 2);
  qloop::Poly d = random_poly(g, 2, nvars, 0, 2);
  if (d.is_zero()) d = qloop::Poly(1);
  return qloop::Scalar(n, d);
}

}  // namespace oracle
