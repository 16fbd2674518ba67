#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qloop/matrix.hpp"

using namespace qloop;

namespace {
Matrix random_matrix(std::mt19937& g, int n, int vars = 1) {
  std::uniform_int_distribution<int> z(0, 2);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (z(g)) m(i, j) = oracle::random_scalar(g, vars);
  return m;
}
}  // namespace

TEST_CASE("charpoly matches det(zI - A) at sample points") {
  std::mt19937 g(1);
  for (int n = 1; n <= 5; ++n) {
    Matrix a = random_matrix(g, n);
    ZPoly cp = charpoly(a);
    CHECK(cp.degree() == n);
    CHECK(cp.lead().is_one());
    for (int z = -2; z <= 3; ++z) {
      Matrix m = Matrix::identity(n) * Scalar(z) - a;
      CHECK(cp.eval(Scalar(z)) == det(m));
    }
  }
}

TEST_CASE("companion matrix charpoly") {
  // Columns: S e_k = e_{k+1}, S e_{d-1} = -sum a_{d-s} e_s.
  std::vector<Scalar> a{1, Scalar::q(), Scalar(-3), Scalar::q(-2)};
  int d = 3;
  Matrix s(d, d);
  for (int k = 0; k + 1 < d; ++k) s(k + 1, k) = 1;
  for (int t = 0; t < d; ++t) s(t, d - 1) = -a[size_t(d - t)];
  ZPoly cp = charpoly(s);
  for (int k = 0; k <= d; ++k) CHECK(cp.coeff(k) == a[size_t(d - k)]);
}

TEST_CASE("nullspace, solve, inverse, rank") {
  std::mt19937 g(2);
  for (int it = 0; it < 10; ++it) {
    Matrix a = random_matrix(g, 4, 2);
    for (const auto& v : nullspace(a)) {
      Vec r = a.apply(v);
      for (const auto& x : r) CHECK(x.is_zero());
    }
    if (!det(a).is_zero()) {
      CHECK(a * inverse(a) == Matrix::identity(4));
      Vec b{1, 2, Scalar::q(), 0};
      auto x = solve(a, b);
      REQUIRE(x);
      CHECK(a.apply(*x) == b);
    }
  }
  Vec v1{1, Scalar::q(), 0}, v2{0, 1, 1};
  Vec v3 = v1;
  for (size_t k = 0; k < 3; ++k) v3[k] = v1[k] * Scalar::q() - v2[k];
  CHECK(rank_of({v1, v2, v3}) == 2);
  RowSpace rs(3);
  rs.add(v1);
  rs.add(v2);
  CHECK(rs.contains(v3));
  CHECK_FALSE(rs.contains(Vec{0, 0, 1}));
}

TEST_CASE("kron is multiplicative") {
  std::mt19937 g(4);
  Matrix a = random_matrix(g, 2), b = random_matrix(g, 3), c = random_matrix(g, 2), d = random_matrix(g, 3);
  CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
}
