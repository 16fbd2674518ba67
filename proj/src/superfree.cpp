#include "qloop/superfree.hpp"

#include <sstream>
#include <stdexcept>

namespace qloop {

// ---------------------------------------------------------------- Signature

Signature::Signature(int m, int n, bool k0) : M(m), N(n), includes_K0(k0) {
  if (m < 1 || n < 0 || m + n < 2) throw std::invalid_argument("signature needs M >= 1, N >= 0, M+N >= 2");
}

namespace {

// Node k as a vector in the epsilon basis (length M+N); node 0 is -theta.
std::vector<int> eps_of_node(const Signature& s, int k) {
  std::vector<int> v(size_t(s.M + s.N), 0);
  if (k == 0) {
    v.front() = -1;
    v.back() += 1;
  } else {
    v[size_t(k - 1)] = 1;
    v[size_t(k)] = -1;
  }
  return v;
}

}  // namespace

int Signature::c(int i, int j) const {
  if (i < 0 || j < 0 || i > rank() || j > rank()) throw std::out_of_range("Cartan index");
  auto a = eps_of_node(*this, i), b = eps_of_node(*this, j);
  int r = 0;
  for (size_t k = 0; k < a.size(); ++k) r += a[k] * b[k] * l(int(k) + 1);
  return r;
}

int Signature::form(const std::vector<int>& a, const std::vector<int>& b) const {
  int r = 0;
  for (int i = 1; i <= rank(); ++i) {
    if (!a[size_t(i - 1)]) continue;
    for (int j = 1; j <= rank(); ++j)
      if (b[size_t(j - 1)]) r += a[size_t(i - 1)] * b[size_t(j - 1)] * c(i, j);
  }
  return r;
}

int Signature::parity(const std::vector<int>& w) const {
  if (M > rank()) return 0;
  return std::abs(w[size_t(M - 1)]) % 2;
}

// ---------------------------------------------------------------- GenSym

std::string GenSym::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Xp: os << "X+[" << node << "," << index << "]"; break;
    case Kind::Xm: os << "X-[" << node << "," << index << "]"; break;
    case Kind::K: os << "K[" << node << "]"; break;
    case Kind::Kinv: os << "Kinv[" << node << "]"; break;
    case Kind::H: os << "h[" << node << "," << index << "]"; break;
    case Kind::Ep: os << "E+[" << node << "]"; break;
    case Kind::Em: os << "E-[" << node << "]"; break;
    case Kind::KC: os << "KC[" << node << "]"; break;
    case Kind::KCinv: os << "KCinv[" << node << "]"; break;
  }
  return os.str();
}

int sym_parity(const Signature& sig, const GenSym& g) {
  switch (g.kind) {
    case Kind::Xp:
    case Kind::Xm: return g.node == sig.M ? 1 : 0;
    case Kind::Ep:
    case Kind::Em: return sig.odd_node(g.node) ? 1 : 0;
    default: return 0;
  }
}

std::vector<int> sym_weight(const Signature& sig, const GenSym& g) {
  std::vector<int> w(size_t(sig.rank()), 0);
  int s = 0;
  if (g.kind == Kind::Xp || g.kind == Kind::Ep) s = 1;
  if (g.kind == Kind::Xm || g.kind == Kind::Em) s = -1;
  if (!s) return w;
  if (g.node == 0) {
    for (auto& x : w) x = -s;
  } else {
    w[size_t(g.node - 1)] = s;
  }
  return w;
}

int sym_degree(const GenSym& g) {
  switch (g.kind) {
    case Kind::Xp:
    case Kind::Xm:
    case Kind::H: return g.index;
    case Kind::Ep: return g.node == 0 ? 1 : 0;
    case Kind::Em: return g.node == 0 ? -1 : 0;
    default: return 0;
  }
}

void validate(const Signature& sig, const GenSym& g) {
  int r = sig.rank();
  auto bad = [&](const char* why) { throw std::invalid_argument(g.str() + ": " + why); };
  switch (g.kind) {
    case Kind::Xp:
    case Kind::Xm:
      if (g.node < 1 || g.node > r) bad("node out of range");
      break;
    case Kind::K:
    case Kind::Kinv:
      if (g.node == 0 && !sig.includes_K0) bad("K_0 needs the enlarged algebra");
      if (g.node < 0 || g.node > r) bad("node out of range");
      break;
    case Kind::H:
      if (g.node < 1 || g.node > r) bad("node out of range");
      if (g.index == 0) bad("h index must be nonzero");
      if (std::abs(g.index) > kMaxH) bad("h index above bound");
      break;
    default:
      if (g.node < 0 || g.node > r) bad("node out of range");
      if (sig.M == sig.N) bad("Chevalley generators need M != N");
  }
}

// ---------------------------------------------------------------- Elem

Elem::Elem(const Scalar& s) {
  if (!s.is_zero()) t_.emplace(Word{}, s);
}

Elem::Elem(const Word& w, const Scalar& c) {
  if (!c.is_zero()) t_.emplace(w, c);
}

Scalar Elem::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? Scalar() : it->second;
}

void Elem::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

Elem& Elem::operator+=(const Elem& o) {
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

Elem Elem::operator+(const Elem& o) const {
  Elem r = *this;
  return r += o;
}

Elem Elem::operator-() const {
  Elem r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const {
  Elem r;
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

Elem Elem::operator*(const Scalar& s) const {
  if (s.is_zero()) return {};
  Elem r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, c * s);
  return r;
}

std::optional<int> Elem::parity(const Signature& sig) const {
  std::optional<int> p;
  for (const auto& [w, c] : t_) {
    int x = 0;
    for (const auto& g : w) x ^= sym_parity(sig, g);
    if (p && *p != x) return std::nullopt;
    p = x;
  }
  return p ? p : 0;
}

std::optional<std::vector<int>> Elem::weight(const Signature& sig) const {
  std::optional<std::vector<int>> wt;
  for (const auto& [w, c] : t_) {
    std::vector<int> x(size_t(sig.rank()), 0);
    for (const auto& g : w) {
      auto gw = sym_weight(sig, g);
      for (size_t k = 0; k < x.size(); ++k) x[k] += gw[k];
    }
    if (wt && *wt != x) return std::nullopt;
    wt = std::move(x);
  }
  if (!wt) return std::vector<int>(size_t(sig.rank()), 0);
  return wt;
}

std::optional<int> Elem::degree() const {
  std::optional<int> d;
  for (const auto& [w, c] : t_) {
    int x = 0;
    for (const auto& g : w) x += sym_degree(g);
    if (d && *d != x) return std::nullopt;
    d = x;
  }
  return d ? d : 0;
}

std::string Elem::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")";
    for (const auto& g : w) os << "*" << g.str();
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- brackets

Elem qbracket(const Signature& sig, const Elem& x, const Elem& y, const Scalar& u) {
  auto px = x.parity(sig), py = y.parity(sig);
  if (!px || !py) throw std::invalid_argument("qbracket: parity-inhomogeneous argument");
  Scalar f = (*px & *py) ? -u : u;
  return x * y - (y * x) * f;
}

namespace {

std::vector<int> weight_of(const Signature& sig, const Elem& e) {
  auto w = e.weight(sig);
  if (!w) throw std::invalid_argument("bracket: weight-inhomogeneous argument");
  return *w;
}

}  // namespace

Elem floor_bracket(const Signature& sig, const std::vector<Elem>& us) {
  if (us.empty()) throw std::invalid_argument("floor_bracket: empty list");
  Elem acc = us.back();
  for (size_t k = us.size() - 1; k-- > 0;) {
    int e = sig.form(weight_of(sig, us[k]), weight_of(sig, acc));
    acc = qbracket(sig, us[k], acc, Scalar::q(-e));
  }
  return acc;
}

Elem ceil_bracket(const Signature& sig, const std::vector<Elem>& us) {
  if (us.empty()) throw std::invalid_argument("ceil_bracket: empty list");
  Elem acc = us.front();
  for (size_t k = 1; k < us.size(); ++k) {
    int e = sig.form(weight_of(sig, acc), weight_of(sig, us[k]));
    acc = qbracket(sig, acc, us[k], Scalar::q(e));
  }
  return acc;
}

Elem phi_coeff(const Signature& sig, int i, int sign, int n) {
  if (sign > 0 ? n < 0 : n > 0) throw std::invalid_argument("phi_coeff: index has the wrong sign");
  int m = std::abs(n);
  if (m > kMaxH) throw std::invalid_argument("phi_coeff: index above bound");
  Scalar c = sig.q_i(i) - sig.q_i(i).inv();
  if (sign < 0) c = -c;
  // exp(sum_k c h_k z^k): E_m = (1/m) sum_k k c h_k E_{m-k}.
  std::vector<Elem> E{Elem::one()};
  for (int t = 1; t <= m; ++t) {
    Elem acc;
    for (int k = 1; k <= t; ++k) acc += Elem(GenSym::H(i, sign * k)) * E[size_t(t - k)] * (c * Scalar(k));
    E.push_back(acc * Scalar::rational(1, t));
  }
  return Elem(sign > 0 ? GenSym::K(i) : GenSym::Kinv(i)) * E.back();
}

Matrix evaluate(const Elem& e, const std::function<const Matrix&(const GenSym&)>& rho, int dim) {
  Matrix total(dim, dim);
  // Words come sorted, so neighbours share prefixes; keep prefix products.
  std::vector<Matrix> pre{Matrix::identity(dim)};
  const Word* prev = nullptr;
  for (const auto& [w, c] : e.terms()) {
    size_t common = 0;
    if (prev)
      while (common < w.size() && common < prev->size() && w[common] == (*prev)[common]) ++common;
    pre.resize(common + 1);
    for (size_t k = common; k < w.size(); ++k) pre.push_back(pre.back() * rho(w[k]));
    total += pre.back() * c;
    prev = &w;
  }
  return total;
}

// ---------------------------------------------------------------- relations

const char* family_name(Family f) {
  switch (f) {
    case Family::cartan_inv: return "cartan-inv";
    case Family::cartan_kk: return "cartan-kk";
    case Family::cartan_kh: return "cartan-kh";
    case Family::cartan_hh: return "cartan-hh";
    case Family::kx: return "kx";
    case Family::hx: return "hx";
    case Family::pm_mixed: return "pm-mixed";
    case Family::deg2_zero: return "deg2-zero";
    case Family::deg2_shift: return "deg2-shift";
    case Family::serre3: return "serre3";
    case Family::oscillation4: return "oscillation4";
    case Family::k0x: return "k0x";
    case Family::k0_comm: return "k0-comm";
    case Family::ch_kinv: return "chevalley-kinv";
    case Family::ch_kk: return "chevalley-kk";
    case Family::ch_ke: return "chevalley-ke";
    case Family::ch_pm: return "chevalley-pm";
    case Family::ch_zero: return "chevalley-zero";
    case Family::ch_serre: return "chevalley-serre";
    case Family::ch_osc: return "chevalley-osc";
    case Family::ch_deg5: return "chevalley-deg5";
  }
  return "?";
}

std::string RelRule::str() const {
  std::ostringstream os;
  os << family_name(family) << (sign > 0 ? "+" : "-") << "(";
  for (size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
  os << ")";
  return os.str();
}

namespace {

Elem X(int s, int i, int n) { return Elem(GenSym::X(s, i, n)); }
Elem E(int s, int i) { return Elem(GenSym::E(s, i)); }
Elem word(std::initializer_list<GenSym> gs) { return Elem(Word(gs)); }

void need(bool ok, const RelRule& r, const char* why) {
  if (!ok) throw std::invalid_argument(r.str() + ": " + why);
}

// Leading word: the first summand's word, fixed by each template below.
Relation make(const Signature& sig, Elem elem, const Elem& lead_term) {
  (void)sig;
  Word lead = lead_term.terms().begin()->first;
  if (elem.coeff(lead).is_zero()) throw std::logic_error("relation: leading word cancelled");
  return {std::move(elem), std::move(lead)};
}

}  // namespace

Relation relation(const Signature& sig, const RelRule& rule) {
  const auto& v = rule.idx;
  const int s = rule.sign > 0 ? 1 : -1;
  const int r = sig.rank();
  auto node = [&](int i) { need(i >= 1 && i <= r, rule, "node out of range"); };
  auto anode = [&](int i) { need(i >= 0 && i <= r, rule, "node out of range"); };
  auto hidx = [&](int t) { need(t != 0 && std::abs(t) <= kMaxH, rule, "bad h index"); };
  auto arity = [&](size_t k) { need(v.size() == k, rule, "wrong number of indices"); };
  auto chev = [&] { need(sig.M != sig.N, rule, "Chevalley relations need M != N"); };
  auto modn = [&](int i) { return ((i % (r + 1)) + (r + 1)) % (r + 1); };

  switch (rule.family) {
    case Family::cartan_inv: {
      arity(2);
      need(v[0] >= 0 && v[0] <= r && (v[0] > 0 || sig.includes_K0), rule, "node out of range");
      Elem w = v[1] == 0 ? word({GenSym::K(v[0]), GenSym::Kinv(v[0])}) : word({GenSym::Kinv(v[0]), GenSym::K(v[0])});
      return make(sig, w - Elem::one(), w);
    }
    case Family::cartan_kk: {
      arity(2);
      node(v[0]), node(v[1]);
      Elem w = word({GenSym::K(v[0]), GenSym::K(v[1])});
      return make(sig, w - word({GenSym::K(v[1]), GenSym::K(v[0])}), w);
    }
    case Family::cartan_kh: {
      arity(3);
      node(v[0]), node(v[1]), hidx(v[2]);
      Elem w = word({GenSym::K(v[0]), GenSym::H(v[1], v[2])});
      return make(sig, w - word({GenSym::H(v[1], v[2]), GenSym::K(v[0])}), w);
    }
    case Family::cartan_hh: {
      arity(4);
      node(v[0]), node(v[1]), hidx(v[2]), hidx(v[3]);
      Elem w = word({GenSym::H(v[0], v[2]), GenSym::H(v[1], v[3])});
      return make(sig, w - word({GenSym::H(v[1], v[3]), GenSym::H(v[0], v[2])}), w);
    }
    case Family::kx: {
      arity(3);
      node(v[0]), node(v[1]);
      Elem w = word({GenSym::K(v[0]), GenSym::X(s, v[1], v[2]), GenSym::Kinv(v[0])});
      return make(sig, w - X(s, v[1], v[2]) * Scalar::q(s * sig.c(v[0], v[1])), w);
    }
    case Family::hx: {
      arity(4);
      node(v[0]), node(v[1]), hidx(v[2]);
      int i = v[0], j = v[1], t = v[2], n = v[3];
      // [t l_i c_ij]_{q_i} / t, with q_i = q^{l_i}
      int e = t * sig.l(i) * sig.c(i, j) * sig.qexp(i);
      Scalar k = (Scalar::q(e) - Scalar::q(-e)) / (sig.q_i(i) - sig.q_i(i).inv()) / Scalar(t);
      Elem w = word({GenSym::H(i, t), GenSym::X(s, j, n)});
      Elem br = qbracket(sig, Elem(GenSym::H(i, t)), X(s, j, n));
      return make(sig, br - X(s, j, n + t) * (k * Scalar(s)), w);
    }
    case Family::pm_mixed: {
      arity(4);
      node(v[0]), node(v[1]);
      int i = v[0], j = v[1], m = v[2], n = v[3];
      Elem br = qbracket(sig, X(1, i, m), X(-1, j, n));
      if (i == j) {
        int t = m + n;
        Elem phi;
        if (t >= 0) phi += phi_coeff(sig, i, 1, t);
        if (t <= 0) phi -= phi_coeff(sig, i, -1, t);
        br -= phi * (sig.q_i(i) - sig.q_i(i).inv()).inv();
      }
      return make(sig, br, word({GenSym::Xp(i, m), GenSym::Xm(j, n)}));
    }
    case Family::deg2_zero: {
      arity(4);
      node(v[0]), node(v[1]);
      need(sig.c(v[0], v[1]) == 0, rule, "needs c_ij = 0");
      return make(sig, qbracket(sig, X(s, v[0], v[2]), X(s, v[1], v[3])),
                  word({GenSym::X(s, v[0], v[2]), GenSym::X(s, v[1], v[3])}));
    }
    case Family::deg2_shift: {
      arity(4);
      node(v[0]), node(v[1]);
      int i = v[0], j = v[1], m = v[2], n = v[3];
      int c = sig.c(i, j);
      need(c != 0, rule, "needs c_ij != 0");
      Scalar u = Scalar::q(s * c);
      Elem lead = X(s, i, m + 1) * X(s, j, n);
      Elem el = lead - X(s, j, n) * X(s, i, m + 1) * u - X(s, i, m) * X(s, j, n + 1) * u + X(s, j, n + 1) * X(s, i, m);
      return make(sig, el, lead);
    }
    case Family::serre3: {
      arity(5);
      node(v[0]), node(v[1]);
      int i = v[0], j = v[1];
      need(i != sig.M, rule, "needs i != M");
      need(std::abs(sig.c(i, j)) == 1, rule, "needs c_ij = +-1");
      auto term = [&](int m, int n) {
        return qbracket(sig, X(s, i, m), qbracket(sig, X(s, i, n), X(s, j, v[4]), Scalar::q(-1)), Scalar::q(1));
      };
      Elem el = term(v[2], v[3]) + term(v[3], v[2]);
      return make(sig, el, X(s, i, v[2]) * X(s, i, v[3]) * X(s, j, v[4]));
    }
    case Family::oscillation4: {
      arity(4);
      need(sig.M > 1 && sig.N > 1, rule, "needs M, N > 1");
      int M = sig.M;
      auto term = [&](int n, int u) {
        Elem a = qbracket(sig, X(s, M - 1, v[0]), X(s, M, n), Scalar::q(-1));
        Elem b = qbracket(sig, a, X(s, M + 1, v[2]), Scalar::q(1));
        return qbracket(sig, b, X(s, M, u));
      };
      Elem el = term(v[1], v[3]) + term(v[3], v[1]);
      return make(sig, el, X(s, M - 1, v[0]) * X(s, M, v[1]) * X(s, M + 1, v[2]) * X(s, M, v[3]));
    }
    case Family::k0x: {
      arity(2);
      need(sig.includes_K0, rule, "needs the enlarged algebra");
      node(v[0]);
      Elem w = word({GenSym::K(0), GenSym::X(s, v[0], v[1]), GenSym::Kinv(0)});
      return make(sig, w - X(s, v[0], v[1]) * Scalar::q(v[0] == 1 ? s : 0), w);
    }
    case Family::k0_comm: {
      arity(2);
      need(sig.includes_K0, rule, "needs the enlarged algebra");
      node(v[0]);
      GenSym g = v[1] == 0 ? GenSym::K(v[0]) : GenSym::H(v[0], v[1]);
      if (v[1]) hidx(v[1]);
      Elem w = word({GenSym::K(0), g});
      return make(sig, w - word({g, GenSym::K(0)}), w);
    }
    case Family::ch_kinv: {
      arity(1);
      chev(), anode(v[0]);
      Elem w = word({GenSym::KC(v[0]), GenSym::KC(v[0], true)});
      return make(sig, w - Elem::one(), w);
    }
    case Family::ch_kk: {
      arity(2);
      chev(), anode(v[0]), anode(v[1]);
      Elem w = word({GenSym::KC(v[0]), GenSym::KC(v[1])});
      return make(sig, w - word({GenSym::KC(v[1]), GenSym::KC(v[0])}), w);
    }
    case Family::ch_ke: {
      arity(2);
      chev(), anode(v[0]), anode(v[1]);
      Elem w = word({GenSym::KC(v[0]), GenSym::E(s, v[1]), GenSym::KC(v[0], true)});
      return make(sig, w - E(s, v[1]) * Scalar::q(s * sig.c(v[0], v[1])), w);
    }
    case Family::ch_pm: {
      arity(2);
      chev(), anode(v[0]), anode(v[1]);
      int i = v[0], j = v[1];
      Elem br = qbracket(sig, E(1, i), E(-1, j));
      if (i == j)
        br -= (Elem(GenSym::KC(i)) - Elem(GenSym::KC(i, true))) * (sig.q_i(i) - sig.q_i(i).inv()).inv();
      return make(sig, br, word({GenSym::E(1, i), GenSym::E(-1, j)}));
    }
    case Family::ch_zero: {
      arity(2);
      chev(), anode(v[0]), anode(v[1]);
      need(sig.c(v[0], v[1]) == 0, rule, "needs c_ij = 0");
      return make(sig, qbracket(sig, E(s, v[0]), E(s, v[1])), word({GenSym::E(s, v[0]), GenSym::E(s, v[1])}));
    }
    case Family::ch_serre: {
      arity(2);
      chev(), anode(v[0]), anode(v[1]);
      int i = v[0], j = v[1];
      need(i != 0 && i != sig.M, rule, "needs i != 0, M");
      need(std::abs(sig.c(i, j)) == 1, rule, "needs c_ij = +-1");
      Elem el = qbracket(sig, E(s, i), qbracket(sig, E(s, i), E(s, j), Scalar::q(-1)), Scalar::q(1));
      return make(sig, el, word({GenSym::E(s, i), GenSym::E(s, i), GenSym::E(s, j)}));
    }
    case Family::ch_osc: {
      arity(1);
      chev();
      need(sig.M + sig.N > 3, rule, "needs M+N > 3");
      int c = v[0] == 0 ? sig.M : 0;
      int a = modn(c - 1), b = modn(c + 1);
      Elem x = qbracket(sig, E(s, a), E(s, c), Scalar::q(-1));
      x = qbracket(sig, x, E(s, b), Scalar::q(1));
      x = qbracket(sig, x, E(s, c));
      return make(sig, x, word({GenSym::E(s, a), GenSym::E(s, c), GenSym::E(s, b), GenSym::E(s, c)}));
    }
    case Family::ch_deg5: {
      arity(0);
      need(sig.M == 2 && sig.N == 1, rule, "only for (2,1)");
      auto side = [&](int x, int y) {
        Elem t = qbracket(sig, E(s, y), E(s, 1), Scalar::q(1));
        t = qbracket(sig, E(s, x), t);
        t = qbracket(sig, E(s, y), t);
        return qbracket(sig, E(s, x), t, Scalar::q(-1));
      };
      Elem el = side(0, 2) - side(2, 0);
      return make(sig, el, word({GenSym::E(s, 0), GenSym::E(s, 2), GenSym::E(s, 0), GenSym::E(s, 2), GenSym::E(s, 1)}));
    }
  }
  throw std::invalid_argument("unknown family");
}

std::vector<RelRule> catalog(const Signature& sig, const CatalogOptions& opt) {
  std::vector<RelRule> out;
  const int r = sig.rank(), W = opt.window;
  std::vector<int> win, hwin;
  for (int n = -W; n <= W; ++n) {
    win.push_back(n);
    if (n) hwin.push_back(n);
  }
  auto add = [&](Family f, int s, std::vector<int> idx) { out.push_back({f, s, std::move(idx)}); };
  if (opt.drinfeld) {
    for (int i = sig.includes_K0 ? 0 : 1; i <= r; ++i)
      for (int o : {0, 1}) add(Family::cartan_inv, 1, {i, o});
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        if (i < j) add(Family::cartan_kk, 1, {i, j});
        if (opt.cartan_h)
          for (int t : hwin) {
            add(Family::cartan_kh, 1, {i, j, t});
            for (int u : hwin)
              if (std::make_pair(i, t) < std::make_pair(j, u)) add(Family::cartan_hh, 1, {i, j, t, u});
          }
      }
    for (int s : {1, -1})
      for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
          for (int n : win) add(Family::kx, s, {i, j, n});
          for (int t : hwin)
            for (int n : win) add(Family::hx, s, {i, j, t, n});
          for (int m : win)
            for (int n : win) {
              if (sig.c(i, j) == 0) {
                add(Family::deg2_zero, s, {i, j, m, n});
              } else if (m < W) {
                add(Family::deg2_shift, s, {i, j, m, n});
              }
            }
          if (i != sig.M && std::abs(sig.c(i, j)) == 1)
            for (int m : win)
              for (int n : win)
                if (m <= n)
                  for (int k : win) add(Family::serre3, s, {i, j, m, n, k});
        }
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j)
        for (int m : win)
          for (int n : win) add(Family::pm_mixed, 1, {i, j, m, n});
    if (sig.M > 1 && sig.N > 1)
      for (int s : {1, -1})
        for (int m : win)
          for (int n : win)
            for (int k : win)
              for (int u : win)
                if (n <= u) add(Family::oscillation4, s, {m, n, k, u});
    if (sig.includes_K0)
      for (int i = 1; i <= r; ++i) {
        for (int s : {1, -1})
          for (int n : win) add(Family::k0x, s, {i, n});
        add(Family::k0_comm, 1, {i, 0});
        if (opt.cartan_h)
          for (int t : hwin) add(Family::k0_comm, 1, {i, t});
      }
  }
  if (opt.chevalley && sig.M != sig.N) {
    for (int i = 0; i <= r; ++i) {
      add(Family::ch_kinv, 1, {i});
      for (int j = 0; j <= r; ++j) {
        if (i < j) add(Family::ch_kk, 1, {i, j});
        add(Family::ch_pm, 1, {i, j});
        for (int s : {1, -1}) {
          add(Family::ch_ke, s, {i, j});
          if (sig.c(i, j) == 0 && i <= j) add(Family::ch_zero, s, {i, j});
          if (i != 0 && i != sig.M && std::abs(sig.c(i, j)) == 1) add(Family::ch_serre, s, {i, j});
        }
      }
    }
    for (int s : {1, -1}) {
      if (sig.M + sig.N > 3)
        for (int which : {0, 1}) add(Family::ch_osc, s, {which});
      if (sig.M == 2 && sig.N == 1) add(Family::ch_deg5, s, {});
    }
  }
  return out;
}

// ---------------------------------------------------------------- rewriting

Elem apply_relation_at(const Signature& sig, const Elem& e, const RelRule& rule, size_t pos, const Word* target,
                       const Scalar& portion) {
  Relation rel = relation(sig, rule);
  auto matches = [&](const Word& w, const Word& lead) {
    if (pos + lead.size() > w.size()) return false;
    return std::equal(lead.begin(), lead.end(), w.begin() + long(pos));
  };
  // The designated leading word is preferred; any other word of the
  // relation found at pos orients the rule the other way.
  auto lead_for = [&](const Word& w) -> const Word* {
    if (matches(w, rel.lead)) return &rel.lead;
    for (const auto& [x, c] : rel.elem.terms())
      if (!x.empty() && matches(w, x)) return &x;
    return nullptr;
  };
  Elem out;
  bool hit = false;
  for (const auto& [w, c] : e.terms()) {
    const Word* lead = (target && w != *target) ? nullptr : lead_for(w);
    if (!lead) {
      out.add(w, c);
      continue;
    }
    hit = true;
    Scalar lam = rel.elem.coeff(*lead);
    Elem repl = (rel.elem - Elem(*lead, lam)) * (-lam.inv());
    Scalar moved = c * portion;
    out.add(w, c - moved);
    Elem pre(Word(w.begin(), w.begin() + long(pos)));
    Elem post(Word(w.begin() + long(pos + lead->size()), w.end()));
    out += pre * repl * post * moved;
  }
  if (!hit) throw std::invalid_argument("apply_relation_at: " + rule.str() + " leading word not found");
  return out;
}

std::vector<Elem> phi_push_past(const Signature& sig, int i, const Elem& e, int order) {
  if (order < 0) throw std::invalid_argument("phi_push_past: negative order");
  // K_i h_i(z) X_{j,n} = q^{c_ij} sum_m g_m z^m X_{j,n+m} K_i h_i(z), where
  // sum g_m z^m = exp(sum_s (q^{s c_ij} - q^{-s c_ij}) z^s / s).
  auto coeffs = [&](int j) {
    int c = sig.c(i, j);
    std::vector<Scalar> g{Scalar(1)};
    for (int m = 1; m <= order; ++m) {
      Scalar acc;
      for (int k = 1; k <= m; ++k) acc += (Scalar::q(k * c) - Scalar::q(-k * c)) * g[size_t(m - k)];
      g.push_back(acc * Scalar::rational(1, m));
    }
    for (auto& x : g) x *= Scalar::q(c);
    return g;
  };
  std::vector<Elem> out(size_t(order) + 1);
  for (const auto& [w, c0] : e.terms()) {
    std::vector<Elem> S(size_t(order) + 1);
    S[0] = Elem(Scalar(c0));
    for (const auto& g : w) {
      if (g.kind != Kind::Xp) throw std::invalid_argument("phi_push_past: expects X^+ words");
      auto gm = coeffs(g.node);
      std::vector<Elem> T(size_t(order) + 1);
      for (int k = 0; k <= order; ++k)
        for (int m = 0; m <= k; ++m) {
          if (S[size_t(k - m)].is_zero() || gm[size_t(m)].is_zero()) continue;
          T[size_t(k)] += S[size_t(k - m)] * Elem(GenSym::Xp(g.node, g.index + m)) * gm[size_t(m)];
        }
      S = std::move(T);
    }
    for (int k = 0; k <= order; ++k) out[size_t(k)] += S[size_t(k)];
  }
  return out;
}

bool in_ideal(const Elem& e, const std::vector<Elem>& gens, const std::vector<GenSym>& letters) {
  if (e.is_zero()) return true;
  size_t L = e.terms().begin()->first.size();
  for (const auto& [w, c] : e.terms())
    if (w.size() != L) throw std::invalid_argument("in_ideal: element not length-homogeneous");
  // All words of each length over the letters.
  std::vector<std::vector<Word>> words{{Word{}}};
  for (size_t k = 1; k <= L; ++k) {
    std::vector<Word> nx;
    for (const auto& w : words.back())
      for (const auto& g : letters) {
        Word x = w;
        x.push_back(g);
        nx.push_back(std::move(x));
      }
    words.push_back(std::move(nx));
  }
  std::vector<Elem> span;
  for (const auto& g : gens) {
    // Split g by word length; only the length that fits contributes.
    for (size_t a = 0; a <= L; ++a)
      for (size_t b = 0; a + b <= L; ++b) {
        Elem part;
        for (const auto& [w, c] : g.terms())
          if (w.size() + a + b == L) part.add(w, c);
        if (part.is_zero()) continue;
        for (const auto& u : words[a])
          for (const auto& v : words[b]) span.push_back(Elem(u) * part * Elem(v));
      }
  }
  std::map<Word, size_t> index;
  for (const auto& x : span)
    for (const auto& [w, c] : x.terms()) index.emplace(w, index.size());
  for (const auto& [w, c] : e.terms())
    if (!index.count(w)) return false;
  RowSpace rs(index.size());
  auto vec = [&](const Elem& x) {
    Vec v(index.size());
    for (const auto& [w, c] : x.terms()) v[index.at(w)] = c;
    return v;
  };
  for (const auto& x : span) rs.add(vec(x));
  return rs.contains(vec(e));
}

}  // namespace qloop
