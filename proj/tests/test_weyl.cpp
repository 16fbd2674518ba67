#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "qloop/sampling.hpp"
#include "qloop/weyl.hpp"

using namespace qloop;

namespace {

const Scalar q = Scalar::q(1), qi = Scalar::q(-1);

using oracle::Rat;

// Long division of C(z)/P(z) in z (plus) or z^-1 (minus) over Q, with
// every coefficient evaluated at a rational point first.
std::vector<Rat> long_div(const std::vector<Rat>& C, const std::vector<Rat>& P, bool plus, int order) {
  std::vector<Rat> num = C, den = P, out;
  if (!plus) {
    std::reverse(num.begin(), num.end());
    std::reverse(den.begin(), den.end());
  }
  num.resize(size_t(order) + num.size() + 1);
  for (int k = 0; k <= order; ++k) {
    Rat t = num[size_t(k)] / den[0];
    out.push_back(t);
    for (size_t j = 0; j < den.size(); ++j) num[size_t(k) + j] -= t * den[j];
  }
  return out;
}

std::vector<Rat> at(const ZPoly& p, const oracle::Point& pt) {
  std::vector<Rat> r;
  for (const auto& c : p.coeffs()) r.push_back(oracle::eval(c, pt));
  return r;
}

TorsionTriple worked() { return {q, ZPoly({Scalar(1), -Scalar::q(-2)}), ZPoly({1, -1})}; }

}  // namespace

TEST_CASE("torsion_to_series examples") {
  auto id = torsion_to_series(TorsionTriple::identity(), 6);
  CHECK(id.f.is_zero());
  auto w = torsion_to_series(worked(), 6);
  for (int n = -6; n <= 6; ++n) CHECK(w.f.at(n) == Scalar(1));
}

TEST_CASE("f window agrees with rational long division") {
  Rng g(11);
  auto pt = oracle::point(0);
  Rat h = oracle::eval(q - qi, pt);
  for (int it = 0; it < 6; ++it) {
    TorsionTriple t = random_torsion(g, 1 + it % 4);
    const int T = 7;
    auto s = torsion_to_series(t, T);
    std::vector<Rat> cq = at(t.Q * t.c, pt), P = at(t.P, pt);
    auto plus = long_div(cq, P, true, T), minus = long_div(cq, P, false, T);
    CHECK(oracle::eval(s.f.at(0), pt) == (plus[0] - minus[0]) / h);
    for (int n = 1; n <= T; ++n) {
      CHECK(oracle::eval(s.f.at(n), pt) == plus[size_t(n)] / h);
      CHECK(oracle::eval(s.f.at(-n), pt) == -minus[size_t(n)] / h);
    }
  }
}

TEST_CASE("f_0 and annihilation") {
  Rng g(3);
  for (int it = 0; it < 10; ++it) {
    TorsionTriple t = random_torsion(g, it % 5);
    auto s = torsion_to_series(t, 9);
    CHECK(s.f.at(0) == (t.c - t.c.inv()) / (q - qi));
    CHECK(annihilates(t.P, s.f));
  }
}

TEST_CASE("series_to_torsion examples and errors") {
  FWindow zero(5);
  CHECK(series_to_torsion(zero, 1, 2) == TorsionTriple::identity());
  FWindow ones(5);
  for (auto& x : ones.f) x = 1;
  CHECK(series_to_torsion(ones, q, 2) == worked());
  CHECK_THROWS_AS(series_to_torsion(ones, q, 6), std::invalid_argument);
  // f_n = n has annihilator (1-z)^2 only.
  FWindow lin(6);
  for (int n = -6; n <= 6; ++n) lin.at(n) = n;
  CHECK_THROWS_AS(series_to_torsion(lin, 1, 1), NoAnnihilator);
}

TEST_CASE("roundtrip on random coprime triples") {
  Rng g(2024);
  for (int it = 0; it < 20; ++it) {
    TorsionTriple t = random_torsion(g, it % 5);
    REQUIRE(t.invariant_error().empty());
    auto s = torsion_to_series(t, 9);
    CHECK(series_to_torsion(s.f, t.c, 4) == t);
  }
}

TEST_CASE("monoid laws and star product") {
  Rng g(77);
  for (int it = 0; it < 8; ++it) {
    TorsionTriple a = random_torsion(g, it % 3), b = random_torsion(g, 1 + it % 3), c = random_torsion(g, 1);
    TorsionTriple ab = torsion_product(a, b);
    CHECK(ab.invariant_error().empty());
    CHECK(torsion_product(ab, c) == torsion_product(a, torsion_product(b, c)));
    CHECK(torsion_product(a, TorsionTriple::identity()) == a);
    CHECK(ab == torsion_product(b, a));
    const int T = 8;
    auto fa = torsion_to_series(a, T).f, fb = torsion_to_series(b, T).f;
    CHECK(star_product(fa, a.c, fb, b.c) == torsion_to_series(ab, T).f);
  }
}

TEST_CASE("gcd reduction in the product") {
  // (1 - z) cancels between the two factors.
  TorsionTriple a{1, ZPoly({Scalar(1), -Scalar::q(2)}), ZPoly({Scalar(1), -Scalar::q(2)})};
  CHECK(!a.invariant_error().empty());
  TorsionTriple x{q, ZPoly({Scalar(1), -Scalar::q(-2)}), ZPoly({1, -1})};
  TorsionTriple y{qi, ZPoly({1, -1}), ZPoly({Scalar(1), -Scalar::q(-2)})};
  CHECK(torsion_product(x, y) == TorsionTriple::identity());
}

TEST_CASE("hw monoid identity") {
  auto h = hw_identity(2, 1);
  h.P[1] = ZPoly({Scalar(1), -q * Scalar::var(VA)});
  CHECK(monoid_product(h, hw_identity(2, 1)).same_weight(h));
}

TEST_CASE("odd slice examples") {
  Scalar a1 = Scalar(5) * q;
  auto s = weyl_odd_slice(ZPoly({Scalar(1), a1}), ZPoly::one());
  CHECK(s.d == 1);
  CHECK(s.theta.is_zero());
  CHECK(s.hM1(0, 0) == -a1);
  CHECK(theta_of(ZPoly({1, -3})) == Scalar(3));
  auto z = weyl_odd_slice(ZPoly::one(), ZPoly::one());
  CHECK(z.d == 0);
  CHECK_THROWS(weyl_odd_slice(ZPoly({2, 1}), ZPoly::one()));
}

TEST_CASE("odd slice spectrum") {
  Rng g(9);
  for (int it = 0; it < 20; ++it) {
    int d = 1 + it % 5;
    std::vector<Scalar> b;
    ZPoly Q = random_factored(g, d, &b);
    ZPoly Pp = random_poly_const1(g, it % 4);
    auto s = weyl_odd_slice(Q, Pp);
    CHECK(s.d == d);
    // prod (z - theta - b_i), built from the roots directly.
    ZPoly expect = ZPoly::one();
    for (const auto& r : b) expect = expect * ZPoly({-s.theta - r, Scalar(1)});
    CHECK(charpoly(s.hM1) == expect);
    CHECK(charpoly(s.shift) == Q.reversed(d));
    CHECK(charpoly(s.hM1) == shift_arg(Q.reversed(d), -s.theta));
  }
}
