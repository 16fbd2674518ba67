#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qloop/coeffs.hpp"
#include "qloop/sampling.hpp"

using namespace qloop;

namespace {
Scalar q = Scalar::q();
Scalar qi = Scalar::q(-1);
}  // namespace

TEST_CASE("qint small values") {
  CHECK(qint(1) == Scalar(1));
  CHECK(qint(3) == q * q + 1 + qi * qi);
  CHECK(qint(-2) == -(q + qi));
  CHECK(qint(0).is_zero());
}

TEST_CASE("qint times q - q^-1") {
  for (int n = -20; n <= 20; ++n) CHECK(qint(n) * (q - qi) == Scalar::q(n) - Scalar::q(-n));
}

TEST_CASE("field operations commute with evaluation") {
  std::mt19937 g(7);
  for (int it = 0; it < 200; ++it) {
    Scalar x = oracle::random_scalar(g), y = oracle::random_scalar(g);
    for (int k = 0; k < 3; ++k) {
      auto pt = oracle::point(k);
      if (!oracle::defined_at(x, pt) || !oracle::defined_at(y, pt)) continue;
      CHECK(oracle::eval(x + y, pt) == oracle::eval(x, pt) + oracle::eval(y, pt));
      CHECK(oracle::eval(x * y, pt) == oracle::eval(x, pt) * oracle::eval(y, pt));
      if (!y.is_zero() && oracle::eval(y, pt) != 0)
        CHECK(oracle::eval(x / y, pt) == oracle::eval(x, pt) / oracle::eval(y, pt));
    }
    if (!x.is_zero()) CHECK((x * x.inv()).is_one());
    CHECK((x - x).is_zero());
  }
}

TEST_CASE("canonical form is unique") {
  std::mt19937 g(11);
  for (int it = 0; it < 100; ++it) {
    Poly n = oracle::random_poly(g, 3, 3, 0, 3), d = oracle::random_poly(g, 3, 3, 0, 2);
    Poly h = oracle::random_poly(g, 2, 3, -1, 2);
    if (d.is_zero() || h.is_zero()) continue;
    // Same fraction written with a common factor.
    CHECK(Scalar(n, d) == Scalar(n * h, d * h));
    if (!n.is_zero()) {
      Scalar x(n, d);
      CHECK(x.den().terms().back().c > 0);
      // gcd(num, den) = 1: the polynomial gcd oracle says no common factor.
      Poly g2 = poly_gcd_z(x.num().times(Mono::one() / x.num().min_mono()), x.den());
      CHECK(g2.is_constant());
    }
  }
}

TEST_CASE("multivariate gcd recovers a planted factor") {
  std::mt19937 g(3);
  for (int it = 0; it < 60; ++it) {
    Poly f = oracle::random_poly(g, 3, 3, 0, 2) + Poly(1);
    Poly a = oracle::random_poly(g, 3, 3, 0, 2) + Poly(2);
    Poly b = oracle::random_poly(g, 3, 3, 0, 2) + Poly(3);
    Poly gg = poly_gcd_z(f * a, f * b);
    CHECK((f * a).try_divexact(gg).has_value());
    CHECK((f * b).try_divexact(gg).has_value());
    // f divides the gcd up to a monomial unit.
    Poly s = gg.times(Mono::one() / gg.min_mono());
    Poly fs = f.times(Mono::one() / f.min_mono());
    CHECK(s.try_divexact(fs).has_value());
  }
}

TEST_CASE("substitution and serialization") {
  Scalar x = (q - qi) / (q + qi);
  CHECK(oracle::eval(x.subs(VQ, Scalar(2)), oracle::point(0)) == oracle::Rat(3, 5));
  Scalar a = Scalar::var(VA);
  Scalar y = (a * q + 1) / (q * q - a);
  CHECK(parse_scalar(y.str()) == y);
  CHECK(parse_scalar(x.str()) == x);
  CHECK(parse_scalar("q^-1") == qi);
  CHECK(parse_scalar("3/2") == Scalar::rational(3, 2));
  CHECK(parse_scalar("\xE2\x88\x92" "2") == Scalar(-2));
  CHECK(Scalar::q(-1).str() == "(1)/(q)");
  CHECK_THROWS(parse_scalar("q+"));
}

TEST_CASE("polynomials in z") {
  ZPoly one_mz({1, -1}), one_mqz({Scalar(1), -q});
  CHECK(poly_gcd(one_mz, one_mz * one_mqz) == one_mz);
  CHECK(poly_coprime(one_mz, one_mqz));
  ZPoly p({Scalar(1), q, Scalar(3)});
  CHECK_FALSE(poly_coprime(p, p));
  CHECK_THROWS(poly_gcd(ZPoly(), ZPoly()));
  auto [qt, r] = (p * one_mqz + one_mz).divmod(one_mqz);
  CHECK(qt * one_mqz + r == p * one_mqz + one_mz);
  CHECK(r.degree() < 1);
}

TEST_CASE("gcd in z with parameter coefficients") {
  Rng g(5);
  auto lin = [](const Scalar& r) { return ZPoly({Scalar(1), -r}); };
  Scalar a = Scalar::var(VA), b = Scalar::var(VB);
  ZPoly common = lin(q * a) * lin(q.pow(-2) * b);
  for (int it = 0; it < 4; ++it) {
    ZPoly x = common, y = common;
    for (int k = 0; k < 3; ++k) {
      x = x * lin(random_qmonomial(g) * a);
      y = y * lin(random_qmonomial(g) * b + Scalar(2 + k));
    }
    ZPoly d = poly_gcd(x, y);
    // The planted factor divides the result and nothing bigger survives
    // at a rational point.
    CHECK(d.degree() >= 2);
    CHECK(d.divmod(common).second.is_zero());
    CHECK(x.divmod(d).second.is_zero());
    CHECK(y.divmod(d).second.is_zero());
  }
  // Degree-6 coprime pair: must come back as 1 quickly.
  ZPoly u = lin(a) * lin(q * a) * lin(q * q * a) * lin(b) * lin(q * b) * lin(a * b);
  ZPoly v = lin(Scalar(2) * a) * lin(q * b * b) * lin(q.pow(3)) * lin(Scalar(5)) * lin(a + b) * lin(q - a);
  CHECK(poly_gcd(u, v) == ZPoly::one());
  CHECK(poly_gcd(u * v, v * lin(q)) == normalize_const1(v));
}

TEST_CASE("expand_ratio examples") {
  ZSeries s = expand_ratio(1, ZPoly::one(), ZPoly::one(), Dir::plus, 5);
  for (int k = 0; k <= 5; ++k) CHECK(s.at(k) == Scalar(k == 0 ? 1 : 0));
  ZPoly Q({Scalar(1), -Scalar::q(-2)}), P({1, -1});
  ZSeries p = expand_ratio(q, Q, P, Dir::plus, 3);
  CHECK(p.at(0) == q);
  for (int k = 1; k <= 3; ++k) CHECK(p.at(k) == q - qi);
  ZSeries m = expand_ratio(q, Q, P, Dir::minus, 3);
  CHECK(m.at(0) == qi);
  for (int k = 1; k <= 3; ++k) CHECK(m.at(k) == -(q - qi));
  CHECK_THROWS_AS(expand_ratio(q, Q, ZPoly({2, 1}), Dir::plus, 3), NotExpandable);
  CHECK_THROWS_AS(expand_ratio(q, ZPoly::one(), P, Dir::minus, 3), NotExpandable);
}

TEST_CASE("expand_ratio times P is c Q") {
  std::mt19937 g(5);
  for (int it = 0; it < 20; ++it) {
    std::vector<Scalar> pc{1}, qc{1};
    for (int k = 0; k < 3; ++k) {
      pc.push_back(oracle::random_scalar(g, 1));
      qc.push_back(oracle::random_scalar(g, 1));
    }
    ZPoly P(pc), Q(qc);
    Scalar c = q * q + 1;
    const int N = 8;
    ZSeries s = expand_ratio(c, Q, P, Dir::plus, N);
    ZSeries ps(Dir::plus, N);
    for (int k = 0; k <= N; ++k) ps.at(k) = P.coeff(k);
    ZSeries prod = s * ps;
    for (int k = 0; k <= N; ++k) CHECK(prod.at(k) == c * Q.coeff(k));
  }
}
