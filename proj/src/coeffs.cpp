#include "qloop/coeffs.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <sstream>

namespace qloop {

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

Int igcd(const Int& a, const Int& b) {
  Int x = iabs(a), y = iabs(b);
  while (y != 0) {
    Int r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Mono mono_inverse(Mono m) { return Mono::one() / m; }

const char* kVarNames[kVars] = {"q", "a", "b", "w"};

}  // namespace

// ---------------------------------------------------------------- Mono

Mono Mono::var(int v, int e) {
  std::array<int, kVars> ex{};
  ex[v] = e;
  return from_exps(ex);
}

Mono Mono::from_exps(const std::array<int, kVars>& e) {
  uint64_t k = 0;
  for (int v = 0; v < kVars; ++v) {
    if (e[v] < -0x7000 || e[v] > 0x7000) throw std::overflow_error("exponent out of range");
    k |= uint64_t(uint16_t(e[v] + 0x8000)) << (16 * (3 - v));
  }
  return Mono{k};
}

std::array<int, kVars> Mono::exps() const {
  std::array<int, kVars> e{};
  for (int v = 0; v < kVars; ++v) e[v] = exp(v);
  return e;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long v) {
  if (v != 0) t_.push_back({Mono::one(), Int(v)});
}

Poly::Poly(const Int& v) {
  if (v != 0) t_.push_back({Mono::one(), v});
}

Poly Poly::monomial(Mono m, const Int& c) {
  Poly p;
  if (c != 0) p.t_.push_back({m, c});
  return p;
}

Int Poly::constant_value() const {
  if (t_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("not a constant");
  return t_[0].c;
}

void Poly::canonicalize() {
  std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return y.m < x.m; });
  size_t w = 0;
  for (size_t r = 0; r < t_.size();) {
    size_t s = r + 1;
    Int c = t_[r].c;
    while (s < t_.size() && t_[s].m == t_[r].m) c += t_[s++].c;
    if (c != 0) {
      t_[w].m = t_[r].m;
      t_[w].c = std::move(c);
      ++w;
    }
    r = s;
  }
  t_.resize(w);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return o;
  Poly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    if (o.t_[j].m < t_[i].m) {
      r.t_.push_back(t_[i++]);
    } else if (t_[i].m < o.t_[j].m) {
      r.t_.push_back(o.t_[j++]);
    } else {
      Int c = t_[i].c + o.t_[j].c;
      if (c != 0) r.t_.push_back({t_[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  while (i < t_.size()) r.t_.push_back(t_[i++]);
  while (j < o.t_.size()) r.t_.push_back(o.t_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (t_.empty() || o.t_.empty()) return {};
  if (o.t_.size() == 1) return times(o.t_[0].m).times(o.t_[0].c);
  if (t_.size() == 1) return o.times(t_[0].m).times(t_[0].c);
  Poly r;
  r.t_.reserve(t_.size() * o.t_.size());
  for (const auto& x : t_)
    for (const auto& y : o.t_) r.t_.push_back({x.m * y.m, x.c * y.c});
  r.canonicalize();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

Poly Poly::times(Mono m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.t_) t.m = t.m * m;
  return r;
}

Poly Poly::times(const Int& c) const {
  if (c == 0) return {};
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.t_) t.c *= c;
  return r;
}

Poly Poly::divexact_int(const Int& c) const {
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.t_) t.c /= c;
  return r;
}

Mono Poly::min_mono() const {
  if (t_.empty()) return Mono::one();
  std::array<int, kVars> e = t_[0].m.exps();
  for (const auto& t : t_)
    for (int v = 0; v < kVars; ++v) e[v] = std::min(e[v], t.m.exp(v));
  return Mono::from_exps(e);
}

bool Poly::uses_var(int v) const {
  for (const auto& t : t_)
    if (t.m.exp(v) != 0) return true;
  return false;
}

int Poly::max_var() const {
  for (int v = kVars - 1; v >= 0; --v)
    if (uses_var(v)) return v;
  return -1;
}

bool Poly::is_polynomial() const {
  for (const auto& t : t_)
    for (int v = 0; v < kVars; ++v)
      if (t.m.exp(v) < 0) return false;
  return true;
}

Int Poly::int_content() const {
  Int g = 0;
  for (const auto& t : t_) {
    g = igcd(g, t.c);
    if (g == 1) break;
  }
  return g;
}

std::optional<Poly> Poly::try_divexact(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Poly();
  if (d.t_.size() == 1) {
    Mono inv = mono_inverse(d.t_[0].m);
    Poly r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      Mono m = t.m * inv;
      for (int v = 0; v < kVars; ++v)
        if (m.exp(v) < 0) return std::nullopt;
      if (t.c % d.t_[0].c != 0) return std::nullopt;
      r.t_.push_back({m, t.c / d.t_[0].c});
    }
    return r;
  }
  // Degree bounds per variable keep the loop finite on non-divisible input.
  std::array<int, kVars> bound{};
  for (int v = 0; v < kVars; ++v) {
    int a = 0, b = 0;
    for (const auto& t : t_) a = std::max(a, t.m.exp(v));
    for (const auto& t : d.t_) b = std::max(b, t.m.exp(v));
    bound[v] = a - b;
    if (bound[v] < 0) return std::nullopt;
  }
  Poly rem = *this, quot;
  const Term& ld = d.t_[0];
  while (!rem.is_zero()) {
    const Term& lt = rem.t_[0];
    Mono m = lt.m / ld.m;
    for (int v = 0; v < kVars; ++v)
      if (m.exp(v) < 0 || m.exp(v) > bound[v]) return std::nullopt;
    if (lt.c % ld.c != 0) return std::nullopt;
    Int c = lt.c / ld.c;
    quot.t_.push_back({m, c});
    rem = rem - d.times(m).times(c);
  }
  return quot;
}

std::vector<Poly> Poly::split(int v, int* emin_out) const {
  int emin = 0, emax = 0;
  bool first = true;
  for (const auto& t : t_) {
    int e = t.m.exp(v);
    if (first) {
      emin = emax = e;
      first = false;
    } else {
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  }
  if (emin_out) *emin_out = emin;
  std::vector<Poly> r(t_.empty() ? 0 : size_t(emax - emin + 1));
  for (const auto& t : t_) {
    int e = t.m.exp(v);
    r[size_t(e - emin)].t_.push_back({t.m / Mono::var(v, e), t.c});
  }
  return r;
}

Poly Poly::join(const std::vector<Poly>& cs, int v, int emin) {
  Poly r;
  for (size_t k = 0; k < cs.size(); ++k) {
    Mono m = Mono::var(v, emin + int(k));
    for (const auto& t : cs[k].t_) r.t_.push_back({t.m * m, t.c});
  }
  r.canonicalize();
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : t_) {
    Int c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    bool unit = t.m.is_one();
    if (c != 1 || unit) {
      os << c;
      if (!unit) os << "*";
    }
    bool firstv = true;
    for (int v = 0; v < kVars; ++v) {
      int e = t.m.exp(v);
      if (e == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << kVarNames[v];
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

size_t Poly::hash() const {
  size_t h = 1469598103934665603ULL;
  for (const auto& t : t_) {
    h ^= std::hash<uint64_t>()(t.m.key) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<long>()(static_cast<long>(t.c % 1000003)) + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------- gcd

namespace {

Poly strip_mono(const Poly& p) { return p.times(mono_inverse(p.min_mono())); }

Poly gcd_rec(Poly A, Poly B);

Poly content_of(const std::vector<Poly>& cs) {
  Poly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? strip_mono(c) : gcd_rec(g, c);
    if (g.is_one()) break;
  }
  return g;
}

void trim_vec(std::vector<Poly>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

std::vector<Poly> prem(std::vector<Poly> r, const std::vector<Poly>& b) {
  const Poly& lc = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t k = r.size() - b.size();
    Poly lr = r.back();
    for (auto& x : r) x = x * lc;
    for (size_t j = 0; j < b.size(); ++j) r[j + k] -= lr * b[j];
    trim_vec(r);
  }
  return r;
}

void divide_all(std::vector<Poly>& v, const Poly& c) {
  if (c.is_one()) return;
  for (auto& x : v) {
    auto d = x.try_divexact(c);
    if (!d) throw std::logic_error("gcd: content division failed");
    x = std::move(*d);
  }
}

Int max_abs(const Poly& p) {
  Int m = 0;
  for (const auto& t : p.terms()) m = std::max<Int>(m, abs(t.c));
  return m;
}

// p with v := x.
Poly eval_at(const Poly& p, int v, const Int& x) {
  Poly r;
  std::vector<Int> pw{Int(1)};
  for (const auto& t : p.terms()) {
    int e = t.m.exp(v);
    while (int(pw.size()) <= e) pw.push_back(pw.back() * x);
    r += Poly::monomial(t.m / Mono::var(v, e), t.c * pw[size_t(e)]);
  }
  return r;
}

// Inverse of eval_at for coefficients in the symmetric range mod x.
Poly interpolate(Poly h, int v, const Int& x) {
  Poly out;
  Int half = x / 2;
  for (int k = 0; !h.is_zero(); ++k) {
    Poly g;
    for (const auto& t : h.terms()) {
      Int r = t.c % x;
      if (r < 0) r += x;
      if (r > half) r -= x;
      if (r != 0) g += Poly::monomial(t.m, r);
    }
    out += g.times(Mono::var(v, k));
    h = (h - g).divexact_int(x);
  }
  return out;
}

struct Heu {
  Poly h, cf, cg;
};

// Heuristic gcd: evaluate the top variable at a large integer, recurse,
// and lift by x-adic interpolation.  Every answer is checked by division,
// so a failure only means falling back to the remainder sequence.
std::optional<Heu> heu_gcd(const Poly& f, const Poly& g) {
  if (f.is_constant() || g.is_constant()) {
    Int c = igcd(f.int_content(), g.int_content());
    return Heu{Poly(c), f.divexact_int(c), g.divexact_int(c)};
  }
  Int c = igcd(f.int_content(), g.int_content());
  Poly F = f.divexact_int(c), G = g.divexact_int(c);
  int v = std::max(F.max_var(), G.max_var());
  Int fn = max_abs(F), gn = max_abs(G);
  Int b = 2 * std::min(fn, gn) + 29;
  Int x = std::max<Int>(std::min<Int>(b, 99 * sqrt(b)),
                        2 * std::min<Int>(fn / abs(F.terms()[0].c), gn / abs(G.terms()[0].c)) + 2);
  auto lift = [&](const Poly& p) {
    Poly r = interpolate(p, v, x);
    if (r.is_zero()) return r;
    r = r.divexact_int(r.int_content());
    return r;
  };
  for (int it = 0; it < 6; ++it) {
    Poly ff = eval_at(F, v, x), gg = eval_at(G, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto r = heu_gcd(ff, gg)) {
        Poly h = lift(r->h);
        if (!h.is_zero())
          if (auto a = F.try_divexact(h))
            if (auto bq = G.try_divexact(h)) return Heu{h.times(c), *a, *bq};
        Poly cf = lift(r->cf);
        if (!cf.is_zero())
          if (auto hh = F.try_divexact(cf))
            if (auto bq = G.try_divexact(*hh)) return Heu{hh->times(c), cf, *bq};
        Poly cg = lift(r->cg);
        if (!cg.is_zero())
          if (auto hh = G.try_divexact(cg))
            if (auto a = F.try_divexact(*hh)) return Heu{hh->times(c), *a, cg};
      }
    }
    x = Int(73794 * x * Int(sqrt(Int(sqrt(x))))) / 27011;
  }
  return std::nullopt;
}

Poly gcd_rec(Poly A, Poly B) {
  A = strip_mono(A);
  B = strip_mono(B);
  if (A.is_constant() || B.is_constant()) return Poly(igcd(A.int_content(), B.int_content()));
  if (A == B || A == -B) return A;
  if (auto r = heu_gcd(A, B)) return r->h;
  int v = std::max(A.max_var(), B.max_var());
  if (!A.uses_var(v)) return gcd_rec(A, content_of(B.split(v)));
  if (!B.uses_var(v)) return gcd_rec(content_of(A.split(v)), B);
  // Fast path: one divides the other.
  if (A.size() <= B.size()) {
    if (B.try_divexact(A)) return A;
  } else if (A.try_divexact(B)) {
    return B;
  }
  std::vector<Poly> a = A.split(v), b = B.split(v);
  Poly ca = content_of(a), cb = content_of(b);
  Poly g = gcd_rec(ca, cb);
  divide_all(a, ca);
  divide_all(b, cb);
  if (a.size() < b.size()) std::swap(a, b);
  for (;;) {
    std::vector<Poly> r = prem(a, b);
    if (r.empty()) break;
    if (r.size() == 1) {
      b = {Poly(1)};
      break;
    }
    divide_all(r, content_of(r));
    a = std::move(b);
    b = std::move(r);
  }
  Poly res = strip_mono(Poly::join(b, v));
  return strip_mono(res * g);
}

}  // namespace

Poly poly_gcd_z(const Poly& a, const Poly& b) {
  if (a.is_zero()) return strip_mono(b);
  if (b.is_zero()) return strip_mono(a);
  return gcd_rec(a, b);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Poly& n, const Poly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly();
    return;
  }
  if (den_.is_zero()) return;
  Mono md = den_.min_mono();
  Mono imd = mono_inverse(md);
  den_ = den_.times(imd);
  num_ = num_.times(imd);
  if (den_.is_constant()) {
    Int dc = den_.constant_value();
    Int g = igcd(num_.int_content(), dc);
    if (dc < 0) g = -g;
    num_ = num_.divexact_int(g);
    dc /= g;
    den_ = dc == 1 ? Poly() : Poly(dc);
    return;
  }
  Mono mn = num_.min_mono();
  Poly np = num_.times(mono_inverse(mn));
  Poly g = gcd_rec(np, den_);
  if (!g.is_one()) {
    auto a = np.try_divexact(g);
    auto b = den_.try_divexact(g);
    if (!a || !b) throw std::logic_error("normalize: gcd does not divide");
    np = std::move(*a);
    den_ = std::move(*b);
  }
  num_ = np.times(mn);
  if (den_.terms().back().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_.is_one()) den_ = Poly();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_zero() && o.den_.is_zero()) {
    Scalar r;
    r.num_ = num_ + o.num_;
    return r;
  }
  Scalar r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else if (den_.is_zero()) {
    r.num_ = num_ * o.den_ + o.num_;
    r.den_ = o.den_;
    return r;  // already coprime
  } else if (o.den_.is_zero()) {
    r.num_ = num_ + o.num_ * den_;
    r.den_ = den_;
    return r;
  } else {
    Poly g = gcd_rec(den_, o.den_);
    if (g.is_one()) {
      r.num_ = num_ * o.den_ + o.num_ * den_;
      r.den_ = den_ * o.den_;
      return r;  // coprime denominators keep the sum reduced
    }
    Poly d1 = *den_.try_divexact(g), d2 = *o.den_.try_divexact(g);
    r.num_ = num_ * d2 + o.num_ * d1;
    r.den_ = den_ * d2;
  }
  r.normalize();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return {};
  Scalar r;
  if (den_.is_zero() && o.den_.is_zero()) {
    r.num_ = num_ * o.num_;
    return r;
  }
  // Cross-cancel, then the product is already reduced.
  Poly n1 = num_, n2 = o.num_, d1 = den(), d2 = o.den();
  auto cancel = [](Poly& n, Poly& d) {
    if (d.is_one()) return;
    Mono mn = n.min_mono();
    Poly np = n.times(mono_inverse(mn));
    Poly g = d.is_constant() ? Poly(igcd(np.int_content(), d.constant_value())) : gcd_rec(np, d);
    if (g.is_one()) return;
    np = *np.try_divexact(g);
    d = *d.try_divexact(g);
    n = np.times(mn);
  };
  cancel(n1, d2);
  cancel(n2, d1);
  r.num_ = n1 * n2;
  r.den_ = d1 * d2;
  if (r.den_.terms().back().c < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  if (r.den_.is_one()) r.den_ = Poly();
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar r;
  r.num_ = den();
  r.den_ = num_;
  r.normalize();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

namespace {

Scalar subs_poly(const Poly& p, int v, const Scalar& value) {
  int emin = 0;
  std::vector<Poly> cs = p.split(v, &emin);
  Scalar r;
  Scalar vp = cs.empty() ? Scalar(1) : value.pow(emin);
  for (const auto& c : cs) {
    if (!c.is_zero()) r += Scalar(c) * vp;
    vp *= value;
  }
  return r;
}

}  // namespace

Scalar Scalar::subs(int v, const Scalar& value) const {
  if (!uses_var(v)) return *this;
  Scalar n = subs_poly(num_, v, value);
  if (den_.is_zero()) return n;
  Scalar d = subs_poly(den_, v, value);
  if (d.is_zero()) throw std::domain_error("substitution makes the denominator vanish");
  return n / d;
}

std::optional<std::pair<int, int>> Scalar::as_signed_qpower() const {
  if (!den_.is_zero() || num_.size() != 1) return std::nullopt;
  const auto& t = num_.terms()[0];
  if (t.c != 1 && t.c != -1) return std::nullopt;
  for (int v = 1; v < kVars; ++v)
    if (t.m.exp(v) != 0) return std::nullopt;
  return std::make_pair(t.c > 0 ? 1 : -1, t.m.exp(VQ));
}

std::string Scalar::str() const {
  Mono m = num_.min_mono();
  std::array<int, kVars> e = m.exps();
  for (auto& x : e) x = std::min(x, 0);
  Mono shift = mono_inverse(Mono::from_exps(e));
  Poly n = num_.times(shift);
  Poly d = den().times(shift);
  if (d.is_one()) return n.str();
  return "(" + n.str() + ")/(" + d.str() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
  std::string s;
  size_t p = 0;

  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(char c) {
    ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("cannot parse scalar '" + s + "': " + what);
  }
  Scalar expr() {
    Scalar r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  Scalar term() {
    Scalar r = unary();
    for (;;) {
      if (eat('*'))
        r *= unary();
      else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else
        return r;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  long integer() {
    ws();
    bool neg = false;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) neg = s[p++] == '-';
    if (eat('(')) {
      long v = integer();
      if (!eat(')')) fail("expected )");
      return neg ? -v : v;
    }
    ws();
    size_t st = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (st == p) fail("expected integer exponent");
    long v = std::stol(s.substr(st, p - st));
    return neg ? -v : v;
  }
  Scalar power() {
    Scalar b = atom();
    if (eat('^')) return b.pow(int(integer()));
    return b;
  }
  Scalar atom() {
    ws();
    if (p >= s.size()) fail("unexpected end");
    if (eat('(')) {
      Scalar r = expr();
      if (!eat(')')) fail("expected )");
      return r;
    }
    char c = s[p];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = p;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
      return Scalar(Int(s.substr(st, p - st)));
    }
    for (int v = 0; v < kVars; ++v)
      if (c == kVarNames[v][0]) {
        ++p;
        return Scalar::var(v);
      }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Scalar parse_scalar(const std::string& in) {
  // Accept the typographic minus sign.
  std::string s;
  for (size_t i = 0; i < in.size(); ++i) {
    if (i + 2 < in.size() && (unsigned char)in[i] == 0xE2 && (unsigned char)in[i + 1] == 0x88 &&
        (unsigned char)in[i + 2] == 0x92) {
      s += '-';
      i += 2;
    } else {
      s += in[i];
    }
  }
  Parser ps{s};
  Scalar r = ps.expr();
  ps.ws();
  if (ps.p != s.size()) ps.fail("trailing input");
  return r;
}

Scalar qint(int n) {
  int m = n < 0 ? -n : n;
  Poly p;
  for (int k = 0; k < m; ++k) p += Poly::var(VQ, m - 1 - 2 * k);
  return Scalar(n < 0 ? -p : p);
}

// ---------------------------------------------------------------- ZPoly

void ZPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) - o.coeff(int(i));
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const Scalar& s) const {
  std::vector<Scalar> r = c_;
  for (auto& x : r) x *= s;
  return ZPoly(std::move(r));
}

Scalar ZPoly::eval(const Scalar& x) const {
  Scalar r;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

ZPoly ZPoly::scale_z(const Scalar& lambda) const {
  std::vector<Scalar> r = c_;
  Scalar p(1);
  for (auto& x : r) {
    x *= p;
    p *= lambda;
  }
  return ZPoly(std::move(r));
}

ZPoly ZPoly::reversed(int d) const {
  if (degree() > d) throw std::invalid_argument("reversed: degree exceeds d");
  std::vector<Scalar> r(size_t(d + 1));
  for (int k = 0; k <= d; ++k) r[size_t(k)] = coeff(d - k);
  return ZPoly(std::move(r));
}

ZPoly ZPoly::truncated(int order) const {
  std::vector<Scalar> r;
  for (int k = 0; k <= std::min(order, degree()); ++k) r.push_back(c_[size_t(k)]);
  return ZPoly(std::move(r));
}

std::pair<ZPoly, ZPoly> ZPoly::divmod(const ZPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Scalar> r = c_;
  int dd = d.degree();
  if (degree() < dd) return {ZPoly(), *this};
  std::vector<Scalar> qt(size_t(degree() - dd + 1));
  Scalar il = d.lead().inv();
  for (int k = degree(); k >= dd; --k) {
    Scalar f = r[size_t(k)] * il;
    qt[size_t(k - dd)] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) r[size_t(k - dd + j)] -= f * d.c_[size_t(j)];
  }
  r.resize(size_t(dd));
  return {ZPoly(std::move(qt)), ZPoly(std::move(r))};
}

std::string ZPoly::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].str() + ")";
    if (k == 1) s += "*z";
    if (k > 1) s += "*z^" + std::to_string(k);
  }
  return s;
}

ZPoly poly_mul(const ZPoly& a, const ZPoly& b) { return a * b; }

ZPoly normalize_const1(const ZPoly& p) {
  if (p.is_zero()) return p;
  Scalar c = p.coeff(0);
  if (c.is_zero()) c = p.lead();
  return p * c.inv();
}

namespace {

using Rat = boost::multiprecision::cpp_rational;

Rat eval_at(const Poly& p, const std::array<Rat, kVars>& pt) {
  Rat s = 0;
  for (const auto& t : p.terms()) {
    Rat m = Rat(t.c);
    for (int v = 0; v < kVars; ++v) {
      int e = t.m.exp(v);
      for (int k = 0; k < (e < 0 ? -e : e); ++k) m = e > 0 ? Rat(m * pt[size_t(v)]) : Rat(m / pt[size_t(v)]);
    }
    s += m;
  }
  return s;
}

// z-coefficients at a rational point; nullopt if a denominator or the
// leading coefficient vanishes there.
std::optional<std::vector<Rat>> specialize(const ZPoly& p, const std::array<Rat, kVars>& pt) {
  std::vector<Rat> r;
  for (const auto& c : p.coeffs()) {
    Rat d = eval_at(c.den(), pt);
    if (d == 0) return std::nullopt;
    r.push_back(eval_at(c.num(), pt) / d);
  }
  if (!r.empty() && r.back() == 0) return std::nullopt;
  return r;
}

int rat_gcd_degree(std::vector<Rat> x, std::vector<Rat> y) {
  auto trim = [](std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(x), trim(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    while (x.size() >= y.size()) {
      Rat f = x.back() / y.back();
      size_t off = x.size() - y.size();
      for (size_t k = 0; k < y.size(); ++k) x[off + k] -= f * y[k];
      x.pop_back();
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return int(x.size()) - 1;
}

}  // namespace

ZPoly poly_gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  if (a.degree() > 0 && b.degree() > 0) {
    // Specializing can only raise the gcd degree, so degree 0 at a point
    // where both leading coefficients survive proves coprimality.
    static const long pts[][kVars] = {{7, 11, 13, 17}, {-5, 19, 23, 3}, {29, -2, 31, 37}};
    for (const auto& row : pts) {
      std::array<Rat, kVars> pt;
      for (int v = 0; v < kVars; ++v) pt[size_t(v)] = Rat(row[v]) / Rat(3 + v);
      auto x = specialize(a, pt), y = specialize(b, pt);
      if (!x || !y) continue;
      if (rat_gcd_degree(*x, *y) == 0) return ZPoly::one();
      break;
    }
  }
  ZPoly x = a, y = b;
  while (!y.is_zero()) {
    ZPoly r = x.divmod(y).second;
    x = std::move(y);
    // Monic remainders keep the coefficients small.
    y = r.is_zero() ? r : r * r.lead().inv();
  }
  return normalize_const1(x);
}

bool poly_coprime(const ZPoly& a, const ZPoly& b) { return poly_gcd(a, b).degree() == 0; }

// ---------------------------------------------------------------- ZSeries

const Scalar& ZSeries::at(int k) const {
  if (k < 0 || k > order) throw std::out_of_range("series index beyond order");
  return coeffs[size_t(k)];
}

Scalar& ZSeries::at(int k) {
  if (k < 0 || k > order) throw std::out_of_range("series index beyond order");
  return coeffs[size_t(k)];
}

ZSeries ZSeries::operator*(const ZSeries& o) const {
  if (dir != o.dir) throw std::invalid_argument("series directions differ");
  ZSeries r(dir, std::min(order, o.order));
  for (int n = 0; n <= r.order; ++n)
    for (int k = 0; k <= n; ++k) r.at(n) += at(k) * o.at(n - k);
  return r;
}

namespace {

ZSeries divide_series(const Scalar& c, const std::vector<Scalar>& num,
                      const std::vector<Scalar>& den, Dir dir, int order) {
  ZSeries s(dir, order);
  Scalar i0 = den[0].inv();
  for (int n = 0; n <= order; ++n) {
    Scalar v = n < int(num.size()) ? c * num[size_t(n)] : Scalar();
    for (int k = 1; k <= n && k < int(den.size()); ++k) v -= den[size_t(k)] * s.at(n - k);
    s.at(n) = v * i0;
  }
  return s;
}

}  // namespace

ZSeries expand_ratio(const Scalar& c, const ZPoly& Q, const ZPoly& P, Dir dir, int order) {
  if (order < 0) throw NotExpandable("negative order");
  if (P.is_zero()) throw NotExpandable("P is zero");
  if (dir == Dir::plus) {
    if (!P.coeff(0).is_one()) throw NotExpandable("P(0) must be 1 for expansion in z");
    std::vector<Scalar> q = Q.coeffs(), p = P.coeffs();
    if (q.empty()) q = {Scalar()};
    return divide_series(c, q, p, dir, order);
  }
  if (Q.degree() != P.degree() || Q.is_zero())
    throw NotExpandable("expansion in z^-1 needs deg Q = deg P with nonzero leading terms");
  int d = P.degree();
  return divide_series(c, Q.reversed(d).coeffs(), P.reversed(d).coeffs(), dir, order);
}

}  // namespace qloop
