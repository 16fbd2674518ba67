#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qloop {

using Int = boost::multiprecision::cpp_int;

// Indeterminates. q is the quantum parameter, a and b are evaluation
// points, w is a spare generic variable for randomized tests.
enum Var : int { VQ = 0, VA = 1, VB = 2, VW = 3 };
constexpr int kVars = 4;

// A Laurent monomial packed into 64 bits: four biased 16-bit exponents,
// q in the most significant slot.  Integer order on keys is lex order on
// exponent vectors, and multiplication is key addition minus the bias.
struct Mono {
  static constexpr uint64_t kBias = 0x8000800080008000ULL;
  uint64_t key = kBias;

  static Mono one() { return {}; }
  static Mono var(int v, int e = 1);
  int exp(int v) const {
    return int((key >> (16 * (3 - v))) & 0xFFFF) - 0x8000;
  }
  Mono operator*(Mono o) const { return Mono{key + o.key - kBias}; }
  Mono operator/(Mono o) const { return Mono{key - o.key + kBias}; }
  bool operator==(Mono o) const { return key == o.key; }
  bool operator<(Mono o) const { return key < o.key; }
  bool is_one() const { return key == kBias; }
  static Mono from_exps(const std::array<int, kVars>& e);
  std::array<int, kVars> exps() const;
};

// Sparse Laurent polynomial over Z, terms sorted by decreasing monomial.
class Poly {
 public:
  struct Term {
    Mono m;
    Int c;
  };

  Poly() = default;
  Poly(long v);
  explicit Poly(const Int& v);
  static Poly monomial(Mono m, const Int& c = 1);
  static Poly var(int v, int e = 1) { return monomial(Mono::var(v, e)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1; }
  bool is_monomial() const { return t_.size() == 1; }
  Int constant_value() const;  // requires is_constant()
  const std::vector<Term>& terms() const { return t_; }
  size_t size() const { return t_.size(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly times(Mono m) const;
  Poly times(const Int& c) const;
  Poly divexact_int(const Int& c) const;

  // Minimum exponent of every variable over all terms (zero poly: all 0).
  Mono min_mono() const;
  bool uses_var(int v) const;
  int max_var() const;  // -1 for constants
  bool is_polynomial() const;  // no negative exponents
  Int int_content() const;  // positive gcd of the coefficients

  // Exact division of polynomials (nonnegative exponents only).
  std::optional<Poly> try_divexact(const Poly& d) const;

  // Coefficients with respect to one variable; r[k] multiplies v^(emin+k).
  std::vector<Poly> split(int v, int* emin = nullptr) const;
  static Poly join(const std::vector<Poly>& cs, int v, int emin = 0);

  std::string str() const;
  size_t hash() const;

  friend class Scalar;

 private:
  std::vector<Term> t_;
  void canonicalize();
};

// gcd in Z[vars] of two polynomials, up to sign, including integer content.
Poly poly_gcd_z(const Poly& a, const Poly& b);

// Canonical fraction num/den.  den is a polynomial with no monomial
// factor, the coefficient of its lowest monomial is positive, and
// gcd(num, den) = 1 in Z[vars].  Laurent powers live in num.  An empty
// den stands for 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : num_(v) {}
  Scalar(const Int& v) : num_(v) {}
  Scalar(const Poly& p) : num_(p) {}
  Scalar(const Poly& n, const Poly& d);
  static Scalar q(int e = 1) { return Scalar(Poly::var(VQ, e)); }
  static Scalar var(int v, int e = 1) { return Scalar(Poly::var(v, e)); }
  static Scalar rational(const Int& n, const Int& d) { return Scalar(Poly(n), Poly(d)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_zero() && num_.is_one(); }
  bool is_laurent() const { return den_.is_zero(); }
  const Poly& num() const { return num_; }
  Poly den() const { return den_.is_zero() ? Poly(1) : den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inv() const;
  Scalar pow(int e) const;
  // Substitute var v by value.
  Scalar subs(int v, const Scalar& value) const;
  bool uses_var(int v) const { return num_.uses_var(v) || den_.uses_var(v); }
  // Is this ±q^k?  Returns (sign, k).
  std::optional<std::pair<int, int>> as_signed_qpower() const;

  // Serialization: "num/den" with both sides ordinary polynomials.
  std::string str() const;
  size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  Poly num_;
  Poly den_;
  void normalize();
};

// Parse an expression over integers and q, a, b, w with + - * / ^ ( ).
Scalar parse_scalar(const std::string& s);

// [n]_q = (q^n - q^-n)/(q - q^-1), as a Laurent polynomial.
Scalar qint(int n);
// q_i-style power: (q^l)^e = q^(l*e).
inline Scalar qpow(int e) { return Scalar::q(e); }

// Polynomials in z over the Scalar field, constant term first.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }
  ZPoly(std::initializer_list<Scalar> c) : c_(c) { trim(); }
  ZPoly(const Scalar& s) : c_{s} { trim(); }
  static ZPoly one() { return ZPoly(Scalar(1)); }
  static ZPoly z() { return ZPoly(std::vector<Scalar>{0, 1}); }

  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : Scalar(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar lead() const { return c_.empty() ? Scalar() : c_.back(); }

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly operator*(const Scalar& s) const;
  bool operator==(const ZPoly& o) const { return c_ == o.c_; }
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  Scalar eval(const Scalar& x) const;
  ZPoly scale_z(const Scalar& lambda) const;  // P(lambda z)
  ZPoly reversed(int d) const;  // z^d P(1/z)
  ZPoly truncated(int order) const;
  // Quotient and remainder.
  std::pair<ZPoly, ZPoly> divmod(const ZPoly& d) const;
  std::string str() const;

 private:
  std::vector<Scalar> c_;
  void trim();
};

ZPoly poly_mul(const ZPoly& a, const ZPoly& b);
// Normalized to constant term 1 when it is nonzero, else monic.
ZPoly poly_gcd(const ZPoly& a, const ZPoly& b);
bool poly_coprime(const ZPoly& a, const ZPoly& b);
ZPoly normalize_const1(const ZPoly& p);

enum class Dir { plus, minus };

// Truncated series in z (plus) or z^-1 (minus): coeffs[k] multiplies z^(+-k).
struct ZSeries {
  Dir dir = Dir::plus;
  int order = 0;
  std::vector<Scalar> coeffs;

  ZSeries() = default;
  ZSeries(Dir d, int ord) : dir(d), order(ord), coeffs(size_t(ord + 1)) {}
  const Scalar& at(int k) const;
  Scalar& at(int k);
  ZSeries operator*(const ZSeries& o) const;
  bool operator==(const ZSeries& o) const {
    return dir == o.dir && order == o.order && coeffs == o.coeffs;
  }
};

struct NotExpandable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Truncated expansion of c Q(z)/P(z) around z = 0 (plus) or z = infinity.
ZSeries expand_ratio(const Scalar& c, const ZPoly& Q, const ZPoly& P, Dir dir, int order);

}  // namespace qloop
