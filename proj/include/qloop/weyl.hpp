#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qloop/coeffs.hpp"
#include "qloop/matrix.hpp"

namespace qloop {

// Odd-node highest weight data: f(z) = (i+ - i-)(c Q/P) / (q - q^-1).
struct TorsionTriple {
  Scalar c = Scalar(1);
  ZPoly Q = ZPoly::one();
  ZPoly P = ZPoly::one();

  static TorsionTriple identity() { return {}; }
  bool operator==(const TorsionTriple& o) const { return c == o.c && Q == o.Q && P == o.P; }
  bool operator!=(const TorsionTriple& o) const { return !(*this == o); }
  // Empty string when Q(0) = P(0) = 1, Q and P coprime, deg Q = deg P and
  // lead Q = c^-2 lead P; otherwise the first violated condition.
  std::string invariant_error() const;
  std::string str() const;
};

// f_n for -order <= n <= order, stored at f[n + order].
struct FWindow {
  int order = 0;
  std::vector<Scalar> f;

  FWindow() = default;
  explicit FWindow(int ord) : order(ord), f(size_t(2 * ord + 1)) {}
  const Scalar& at(int n) const { return f[size_t(n + order)]; }
  Scalar& at(int n) { return f[size_t(n + order)]; }
  bool is_zero() const;
  bool operator==(const FWindow& o) const { return order == o.order && f == o.f; }
};

struct TorsionSeries {
  ZSeries plus, minus;
  FWindow f;
};

TorsionSeries torsion_to_series(const TorsionTriple& t, int order);

struct NoAnnihilator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal P with P(0) = 1 killing the window, then Q = c^-1 (P f^+) cut at
// degree deg P.  Throws NoAnnihilator if nothing of degree <= bound works,
// std::invalid_argument if the window is too short for the bound.
TorsionTriple series_to_torsion(const FWindow& f, const Scalar& c, int degree_bound);

// sum_s p_s f_{n-s} over every n the window can see.
bool annihilates(const ZPoly& P, const FWindow& f);

// Highest weight of a loop module: P[i] for even nodes (P[0] and P[M]
// unused), eps[i] the sign of the K_i eigenvalue, and the odd-node triple.
struct HighestWeightData {
  int M = 0, N = 0;
  std::vector<ZPoly> P;
  std::vector<int> eps;
  TorsionTriple torsion;
  std::optional<Scalar> K0_eigen;
  FWindow f;  // measured odd-node window (empty when built by monoid_product)

  bool same_weight(const HighestWeightData& o) const;
  std::string str() const;
};

HighestWeightData hw_identity(int M, int N);

// Product of two triples, reduced by gcd(QQ', PP').
TorsionTriple torsion_product(const TorsionTriple& a, const TorsionTriple& b);
HighestWeightData monoid_product(const HighestWeightData& a, const HighestWeightData& b);
// (f+ g+ - f- g-)/(q - q^-1) on windows, with f+- = c^+-1 +- (q - q^-1) sum f_{+-s} z^{+-s}.
FWindow star_product(const FWindow& f, const Scalar& c, const FWindow& g, const Scalar& d);

struct WeylOddSlice {
  int d = 0;
  Matrix shift;  // w_n -> w_{n+1}
  Matrix hM1;    // shift + theta I
  Scalar theta;
};

// theta = -(coefficient of z in P_{M-1}).
Scalar theta_of(const ZPoly& Pprev);
// Q must have Q(0) = 1.
WeylOddSlice weyl_odd_slice(const ZPoly& Q, const ZPoly& Pprev);

// P(z + s).
ZPoly shift_arg(const ZPoly& P, const Scalar& s);

}  // namespace qloop
