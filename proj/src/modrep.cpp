#include "qloop/modrep.hpp"

#include <sstream>
#include <stdexcept>

#include "qloop/pbw.hpp"

namespace qloop {

namespace {

Scalar qd(const Signature& sig, int i) { return sig.q_i(i) - sig.q_i(i).inv(); }

Matrix parity_matrix(const std::vector<int>& parity) {
  Vec d;
  for (int p : parity) d.push_back(p ? Scalar(-1) : Scalar(1));
  return Matrix::diag(d);
}

Matrix mpow(const Matrix& m, const Matrix& minv, int e) {
  Matrix r = Matrix::identity(m.rows());
  for (int k = 0; k < std::abs(e); ++k) r = r * (e > 0 ? m : minv);
  return r;
}

}  // namespace

Matrix sbracket(const Op& x, const Op& y, const Scalar& u) {
  Matrix yx = y.m * x.m * u;
  return (x.parity && y.parity) ? x.m * y.m + yx : x.m * y.m - yx;
}

std::optional<int> matrix_parity(const Matrix& m, const std::vector<int>& parity) {
  bool even = false, odd = false;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) ((parity[size_t(r)] + parity[size_t(c)]) % 2 ? odd : even) = true;
  if (even && odd) return std::nullopt;
  return odd ? 1 : 0;
}

// ---------------------------------------------------------------- gl(M,N)

GLModule gl_trivial(int M, int N) {
  GLModule g;
  g.M = M, g.N = N, g.dim = 1;
  g.parity = {0};
  g.t.assign(size_t(M + N + 1), Matrix::identity(1));
  g.tinv = g.t;
  g.ep.assign(size_t(M + N), Matrix(1, 1));
  g.em = g.ep;
  return g;
}

GLModule fundamental(int M, int N) {
  if (M < 1 || N < 1) throw std::invalid_argument("fundamental: needs M, N >= 1");
  GLModule g;
  const int D = M + N;
  g.M = M, g.N = N, g.dim = D;
  for (int k = 1; k <= D; ++k) g.parity.push_back(k <= M ? 0 : 1);
  g.t.assign(size_t(D + 1), Matrix());
  g.tinv = g.t;
  for (int i = 1; i <= D; ++i) {
    Vec d(size_t(D), Scalar(1)), di = d;
    d[size_t(i - 1)] = Scalar::q(1);
    di[size_t(i - 1)] = Scalar::q(-1);
    g.t[size_t(i)] = Matrix::diag(d);
    g.tinv[size_t(i)] = Matrix::diag(di);
  }
  g.ep.assign(size_t(D), Matrix());
  g.em = g.ep;
  for (int j = 1; j < D; ++j) {
    g.ep[size_t(j)] = Matrix::unit(D, j - 1, j);
    g.em[size_t(j)] = Matrix::unit(D, j, j - 1);
  }
  for (const auto& r : check_gl_relations(g))
    if (!r.pass) throw RelationFailure("fundamental(" + std::to_string(M) + "," + std::to_string(N) + "): " + r.name + " " + r.detail);
  return g;
}

std::vector<CheckResult> check_gl_relations(const GLModule& m) {
  std::vector<CheckResult> out;
  const int D = m.M + m.N, r = D - 1, M = m.M;
  auto l = [&](int i) { return i <= M ? 1 : -1; };
  auto add = [&](std::string name, const Matrix& x) {
    bool ok = x.is_zero();
    out.push_back({std::move(name), ok, ok ? "" : x.str()});
  };
  auto e = [&](int s, int j) { return Op{s > 0 ? m.ep[size_t(j)] : m.em[size_t(j)], j == M ? 1 : 0}; };
  auto nm = [](const char* f, std::initializer_list<int> xs) {
    std::ostringstream os;
    os << f << "(";
    bool first = true;
    for (int x : xs) os << (first ? "" : ",") << x, first = false;
    os << ")";
    return os.str();
  };
  Matrix I = Matrix::identity(m.dim);

  for (int j = 1; j <= r; ++j)
    for (int s : {1, -1}) {
      auto p = matrix_parity(e(s, j).m, m.parity);
      out.push_back({nm("grading", {s, j}), p && (*p == e(s, j).parity || e(s, j).m.is_zero()), ""});
    }
  for (int i = 1; i <= D; ++i) {
    add(nm("t-inv", {i, 0}), m.t[size_t(i)] * m.tinv[size_t(i)] - I);
    add(nm("t-inv", {i, 1}), m.tinv[size_t(i)] * m.t[size_t(i)] - I);
    for (int k = i + 1; k <= D; ++k)
      add(nm("t-comm", {i, k}), m.t[size_t(i)] * m.t[size_t(k)] - m.t[size_t(k)] * m.t[size_t(i)]);
    for (int j = 1; j <= r; ++j) {
      // l_i (eps_i, eps_j - eps_{j+1}) with (eps_i, eps_k) = l_i delta_ik.
      int ex = l(i) * (l(i) * (i == j) - l(i) * (i == j + 1));
      for (int s : {1, -1})
        add(nm("t-e", {s, i, j}), m.t[size_t(i)] * e(s, j).m * m.tinv[size_t(i)] - e(s, j).m * Scalar::q(s * ex));
    }
  }
  for (int j = 1; j <= r; ++j) {
    Matrix K = mpow(m.t[size_t(j)], m.tinv[size_t(j)], l(j)) * mpow(m.t[size_t(j + 1)], m.tinv[size_t(j + 1)], -l(j + 1));
    Matrix Ki = mpow(m.t[size_t(j)], m.tinv[size_t(j)], -l(j)) * mpow(m.t[size_t(j + 1)], m.tinv[size_t(j + 1)], l(j + 1));
    Scalar qj = Scalar::q(l(j));
    for (int k = 1; k <= r; ++k) {
      Matrix br = sbracket(e(1, j), e(-1, k));
      if (j == k) br -= (K - Ki) * (qj - qj.inv()).inv();
      add(nm("pm", {j, k}), br);
    }
  }
  for (int s : {1, -1})
    for (int j = 1; j <= r; ++j)
      for (int k = 1; k <= r; ++k) {
        // Not in the printed list but part of the standard presentation.
        if (std::abs(j - k) > 1 || (j == k && j == M))
          if (j <= k) add(nm("zero", {s, j, k}), sbracket(e(s, j), e(s, k)));
        if (std::abs(j - k) == 1 && j != M) {
          Op in{sbracket(e(s, j), e(s, k), Scalar::q(-1)), e(s, j).parity ^ e(s, k).parity};
          add(nm("serre", {s, j, k}), sbracket(e(s, j), in, Scalar::q(1)));
        }
      }
  if (M > 1 && m.N > 1)
    for (int s : {1, -1}) {
      Op a{sbracket(e(s, M - 1), e(s, M), Scalar::q(1)), 1};
      Op b{sbracket(a, e(s, M + 1), Scalar::q(-1)), 1};
      add(nm("osc4", {s}), sbracket(b, e(s, M)));
    }
  return out;
}

// ---------------------------------------------------------------- loop modules

LoopModule::LoopModule(Signature sig, std::vector<int> parity, std::vector<Matrix> Ep, std::vector<Matrix> Em,
                       std::vector<Matrix> KC, std::optional<Matrix> K0ext)
    : sig_(sig), dim_(int(parity.size())), parity_(std::move(parity)), Ep_(std::move(Ep)), Em_(std::move(Em)),
      KC_(std::move(KC)), K0ext_(std::move(K0ext)) {
  const size_t n = size_t(sig_.rank() + 1);
  if (Ep_.size() != n || Em_.size() != n || KC_.size() != n) throw std::invalid_argument("LoopModule: need matrices for nodes 0..rank");
  for (const auto& k : KC_) KCinv_.push_back(inverse(k));
  if (sig_.includes_K0) {
    if (!K0ext_) throw std::invalid_argument("LoopModule: enlarged signature needs the extra K_0");
    K0extinv_ = inverse(*K0ext_);
  }
}

int LoopModule::preferred_neighbor(int j) const {
  if (sig_.c(j, j) != 0) return j;
  for (int i : ladder_neighbors(j)) return i;
  throw std::logic_error("no ladder neighbour for node " + std::to_string(j));
}

std::vector<int> LoopModule::ladder_neighbors(int j) const {
  std::vector<int> r;
  for (int i = 1; i <= sig_.rank(); ++i)
    if (sig_.c(i, j) != 0) r.push_back(i);
  return r;
}

const Matrix& LoopModule::rho(const GenSym& g) {
  const int r = sig_.rank();
  auto node = [&](int lo) {
    if (g.node < lo || g.node > r) throw std::out_of_range("rho: node out of range in " + g.str());
  };
  switch (g.kind) {
    case Kind::Ep: node(0); return Ep_[size_t(g.node)];
    case Kind::Em: node(0); return Em_[size_t(g.node)];
    case Kind::KC: node(0); return KC_[size_t(g.node)];
    case Kind::KCinv: node(0); return KCinv_[size_t(g.node)];
    case Kind::K:
    case Kind::Kinv:
      if (g.node == 0) {
        if (!K0ext_) throw std::invalid_argument("rho: module has no extra K_0");
        return g.kind == Kind::K ? *K0ext_ : *K0extinv_;
      }
      node(1);
      return g.kind == Kind::K ? KC_[size_t(g.node)] : KCinv_[size_t(g.node)];
    case Kind::Xp:
    case Kind::Xm:
      node(1);
      if (g.index == 0) return g.kind == Kind::Xp ? Ep_[size_t(g.node)] : Em_[size_t(g.node)];
      break;
    case Kind::H:
      node(1);
      if (g.index == 0 || std::abs(g.index) > kMaxH) throw std::invalid_argument("rho: bad h index");
      break;
  }
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  if (frozen_) throw std::logic_error("rho: module is frozen and " + g.str() + " is not cached");
  Matrix m = derive(g);
  return cache_.emplace(g, std::move(m)).first->second;
}

Matrix LoopModule::derive(const GenSym& g) {
  if (g.kind == Kind::H) return std::abs(g.index) == 1 ? h_word(g.node, g.index) : h_from_phi(g.node, g.index);
  return ladder(g.kind == Kind::Xp ? 1 : -1, g.node, g.index, preferred_neighbor(g.node));
}

Matrix LoopModule::eval(const Elem& e) {
  return evaluate(e, [this](const GenSym& g) -> const Matrix& { return rho(g); }, dim_);
}

Matrix LoopModule::ladder(int sign, int j, int n, int via) {
  if (n == 0) return rho(GenSym::X(sign, j, 0));
  if (sig_.c(via, j) == 0) throw std::invalid_argument("ladder: node has c_ij = 0");
  int step = n > 0 ? 1 : -1;
  // [h_{i,+-1}, X^{sign}_{j,m}] = sign [l_i c_ij]_{q_i} X^{sign}_{j,m+-1}.
  int e = sig_.l(via) * sig_.c(via, j) * sig_.qexp(via);
  Scalar k = (Scalar::q(e) - Scalar::q(-e)) / qd(sig_, via) * Scalar(sign);
  const Matrix& h = rho(GenSym::H(via, step));
  const Matrix& prev = rho(GenSym::X(sign, j, n - step));
  return (h * prev - prev * h) * k.inv();
}

Matrix LoopModule::h_word(int i, int s) {
  const int r = sig_.rank(), M = sig_.M;
  int lam = i <= M ? (i % 2 ? -1 : 1) : ((i - 1) % 2 ? -1 : 1);
  std::vector<Elem> us;
  if (s > 0) {
    for (int k = i; k >= 1; --k) us.push_back(Elem(GenSym::Xp(k, 0)));
    for (int k = i + 1; k <= r; ++k) us.push_back(Elem(GenSym::Xp(k, 0)));
    us.push_back(Elem(GenSym::E(1, 0)));
    return eval(floor_bracket(sig_, us) * Scalar(lam));
  }
  us.push_back(Elem(GenSym::E(-1, 0)));
  for (int k = r; k > i; --k) us.push_back(Elem(GenSym::Xm(k, 0)));
  for (int k = 1; k <= i; ++k) us.push_back(Elem(GenSym::Xm(k, 0)));
  return eval(ceil_bracket(sig_, us) * Scalar(-lam));
}

Matrix LoopModule::phi(int i, int sign, int n) {
  if (n == 0) return rho(sign > 0 ? GenSym::K(i) : GenSym::Kinv(i));
  if (sign * n < 0) return Matrix(dim_, dim_);
  int p = i == sig_.M ? 1 : 0;
  if (sign > 0) return sbracket({rho(GenSym::Xp(i, n)), p}, {rho(GenSym::Xm(i, 0)), p}) * qd(sig_, i);
  return sbracket({rho(GenSym::Xp(i, 0)), p}, {rho(GenSym::Xm(i, n)), p}) * (-qd(sig_, i));
}

Matrix LoopModule::h_from_phi(int i, int s) {
  int sign = s > 0 ? 1 : -1, m = std::abs(s);
  // K_i^{-+1} phi^{+-}(z) = exp(g(z)), g_k = +-(q_i - q_i^-1) h_{i,+-k}; n g_n = n u_n - sum k g_k u_{n-k}.
  const Matrix& Kc = rho(sign > 0 ? GenSym::Kinv(i) : GenSym::K(i));
  std::vector<Matrix> u(size_t(m + 1)), g(size_t(m + 1));
  for (int k = 1; k <= m; ++k) u[size_t(k)] = Kc * phi(i, sign, sign * k);
  for (int n = 1; n <= m; ++n) {
    Matrix acc(dim_, dim_);
    for (int k = 1; k < n; ++k) acc += g[size_t(k)] * u[size_t(n - k)] * Scalar(k);
    g[size_t(n)] = u[size_t(n)] - acc * Scalar(n).inv();
  }
  return g[size_t(m)] * (qd(sig_, i) * Scalar(sign)).inv();
}

void LoopModule::freeze(int window) {
  const int r = sig_.rank();
  for (int i = 1; i <= r; ++i) {
    for (int n = -2 * window - 1; n <= 2 * window + 1; ++n) {
      rho(GenSym::Xp(i, n));
      rho(GenSym::Xm(i, n));
    }
    for (int s = 1; s <= std::min(2 * window, kMaxH); ++s) {
      rho(GenSym::H(i, s));
      rho(GenSym::H(i, -s));
    }
  }
  frozen_ = true;
}

LoopModule evaluation_pullback(const GLModule& m, const Scalar& a, bool enlarged) {
  if (m.M == m.N) throw std::invalid_argument("evaluation_pullback: needs M != N");
  if (a.is_zero()) throw std::invalid_argument("evaluation_pullback: a = 0");
  Signature sig(m.M, m.N, enlarged);
  const int r = sig.rank(), D = m.M + m.N;
  auto l = [&](int i) { return sig.l(i); };
  auto t = [&](int i, int e) { return mpow(m.t[size_t(i)], m.tinv[size_t(i)], e); };
  std::vector<Matrix> Ep(size_t(r + 1)), Em(size_t(r + 1)), KC(size_t(r + 1));
  for (int j = 1; j <= r; ++j) {
    Ep[size_t(j)] = m.ep[size_t(j)];
    Em[size_t(j)] = m.em[size_t(j)];
    KC[size_t(j)] = t(j, l(j)) * t(j + 1, -l(j + 1));
  }
  KC[0] = t(1, -1) * t(D, -1);
  // Nested [..[e_1, e_2]_{q_2}, ..., e_r]_{q_r}.
  auto nested = [&](int s) {
    Op x{s > 0 ? m.ep[1] : m.em[1], m.M == 1 ? 1 : 0};
    for (int k = 2; k <= r; ++k) {
      Op y{s > 0 ? m.ep[size_t(k)] : m.em[size_t(k)], k == m.M ? 1 : 0};
      x = {sbracket(x, y, sig.q_i(k)), x.parity ^ y.parity};
    }
    return x.m;
  };
  int k = m.N - m.M;
  Scalar pre = -Scalar::q(k) * Scalar(k % 2 ? -1 : 1);  // -(-q)^{N-M}
  Ep[0] = nested(-1) * t(1, 1) * t(D, -1) * (pre * a);
  Em[0] = t(1, -1) * t(D, 1) * nested(1) * a.inv();
  std::optional<Matrix> K0;
  if (enlarged) K0 = m.t[1];
  LoopModule lm(sig, m.parity, Ep, Em, KC, K0);
  lm.label = "ev_a fundamental(" + std::to_string(m.M) + "," + std::to_string(m.N) + ")";
  return lm;
}

namespace {

// Phi(E_0^+-) as a word in the Drinfel'd generators.
Elem phi_E0(const Signature& sig, int sign) {
  const int r = sig.rank();
  Elem Kall = Elem::one(), Kinv = Elem::one();
  for (int i = 1; i <= r; ++i) {
    Kall = Kall * Elem(GenSym::K(i));
    Kinv = Elem(GenSym::Kinv(i)) * Kinv;
  }
  if (sign > 0) {
    Elem x(GenSym::Xm(1, 1));
    for (int k = 2; k <= r; ++k) x = qbracket(sig, x, Elem(GenSym::Xm(k, 0)), sig.q_i(k));
    int e = sig.N - sig.M;
    Scalar c = Scalar::q(e) * Scalar((r % 2) ? -1 : 1);
    return x * Kinv * c;
  }
  Elem x(GenSym::Xp(1, -1));
  for (int k = 2; k <= r; ++k) x = qbracket(sig, x, Elem(GenSym::Xp(k, 0)), sig.q_i(k));
  return Kall * x;
}

}  // namespace

LoopModule pi_pullback(LoopModule& src, std::optional<Matrix> K0ext) {
  const Signature& s = src.sig();
  if (s.N < 1) throw std::invalid_argument("pi_pullback: needs MN > 0");
  Signature sig(s.N, s.M, K0ext.has_value());
  const int r = sig.rank(), top = sig.M + sig.N;
  std::vector<Matrix> Ep(size_t(r + 1)), Em(size_t(r + 1)), KC(size_t(r + 1));
  Matrix Kprod = Matrix::identity(src.dim());
  for (int i = 1; i <= r; ++i) {
    int odd = i == sig.M ? -1 : 1;
    Ep[size_t(i)] = src.rho(GenSym::Xp(top - i, 0));
    Em[size_t(i)] = src.rho(GenSym::Xm(top - i, 0)) * Scalar(odd);
    KC[size_t(i)] = src.rho(GenSym::Kinv(top - i));
    Kprod = Kprod * src.rho(GenSym::K(top - i));
  }
  // Phi(K_0) = (K_1 ... K_r)^-1, and pi(K_i^-1) = K_{top-i}.
  KC[0] = Kprod;
  Ep[0] = src.eval(pi_MN(sig, phi_E0(sig, 1)));
  Em[0] = src.eval(pi_MN(sig, phi_E0(sig, -1)));
  LoopModule lm(sig, src.parity(), Ep, Em, KC, std::move(K0ext));
  lm.label = "pi^* " + src.label;
  return lm;
}

LoopModule fundamental_evaluation(int M, int N, const Scalar& a, bool enlarged) {
  if (M >= 2) return evaluation_pullback(fundamental(M, N), a, enlarged);
  if (M != 1 || N < 2) throw std::invalid_argument("fundamental_evaluation: needs M != N");
  GLModule g = fundamental(N, M);
  LoopModule src = evaluation_pullback(g, a);
  std::optional<Matrix> K0;
  // Plays the role of t_1 after relabelling: q^{+-1} on X_{1,n}, trivial elsewhere.
  if (enlarged) K0 = g.tinv[size_t(N + M)];
  return pi_pullback(src, K0);
}

LoopModule loop_trivial(const Signature& sig) {
  const size_t n = size_t(sig.rank() + 1);
  std::vector<Matrix> z(n, Matrix(1, 1)), k(n, Matrix::identity(1));
  std::optional<Matrix> K0;
  if (sig.includes_K0) K0 = Matrix::identity(1);
  LoopModule lm(sig, {0}, z, z, k, K0);
  lm.label = "trivial";
  return lm;
}

Matrix stensor(const Op& x, const Op& y, const std::vector<int>& parity1) {
  if (!y.parity) return kron(x.m, y.m);
  return kron(x.m * parity_matrix(parity1), y.m);
}

LoopModule tensor(LoopModule& a, LoopModule& b) {
  if (!(a.sig() == b.sig())) throw std::invalid_argument("tensor: signature mismatch");
  const Signature& sig = a.sig();
  const int r = sig.rank();
  const auto& pa = a.parity();
  Matrix Ia = Matrix::identity(a.dim()), Ib = Matrix::identity(b.dim());
  std::vector<Matrix> Ep(size_t(r + 1)), Em(size_t(r + 1)), KC(size_t(r + 1));
  for (int i = 0; i <= r; ++i) {
    int p = sig.odd_node(i) ? 1 : 0;
    const Matrix& Ka = a.rho(GenSym::KC(i));
    const Matrix& Kbi = b.rho(GenSym::KC(i, true));
    // E+ -> 1 (x) E + E (x) K^-1,  E- -> K (x) E + E (x) 1,  K -> K (x) K.
    Ep[size_t(i)] = stensor({Ia, 0}, {b.rho(GenSym::E(1, i)), p}, pa) + stensor({a.rho(GenSym::E(1, i)), p}, {Kbi, 0}, pa);
    Em[size_t(i)] = stensor({Ka, 0}, {b.rho(GenSym::E(-1, i)), p}, pa) + stensor({a.rho(GenSym::E(-1, i)), p}, {Ib, 0}, pa);
    KC[size_t(i)] = kron(Ka, b.rho(GenSym::KC(i)));
  }
  std::optional<Matrix> K0;
  if (sig.includes_K0) K0 = kron(*a.K0ext(), *b.K0ext());
  std::vector<int> par;
  for (int x : pa)
    for (int y : b.parity()) par.push_back((x + y) % 2);
  LoopModule lm(sig, par, Ep, Em, KC, K0);
  lm.label = "(" + a.label + ") (x) (" + b.label + ")";
  return lm;
}

RelationReport check_relations(LoopModule& lm, const CatalogOptions& opt, size_t max_failures) {
  RelationReport rep;
  for (const auto& rule : catalog(lm.sig(), opt)) {
    ++rep.checked;
    if (!lm.eval(relation_elem(lm.sig(), rule)).is_zero()) {
      rep.failures.push_back(rule.str());
      if (rep.failures.size() >= max_failures) break;
    }
  }
  return rep;
}

RankPair pbw_rank(LoopModule& lm, const std::vector<int>& weight, const std::vector<int>& window) {
  auto flat = [](const Matrix& m) {
    Vec v;
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
    return v;
  };
  const size_t n = size_t(lm.dim() * lm.dim());
  RowSpace a(n), b(n);
  for (const auto& m : enumerate_pbw(lm.sig(), weight, window)) a.add(flat(lm.eval(pbw_elem(lm.sig(), m))));
  for (const auto& w : xplus_words(lm.sig(), weight, window)) {
    b.add(flat(lm.eval(Elem(w))));
  }
  return {a.rank(), b.rank()};
}

// ---------------------------------------------------------------- highest weight

std::vector<Vec> hw_kernel(LoopModule& lm, int window, int* used_window) {
  const int r = lm.sig().rank(), d = lm.dim();
  auto kernel = [&](int W) {
    std::vector<Matrix> ms;
    for (int i = 1; i <= r; ++i)
      for (int n = -W; n <= W; ++n) ms.push_back(lm.rho(GenSym::Xp(i, n)));
    Matrix A(int(ms.size()) * d, d);
    for (size_t k = 0; k < ms.size(); ++k)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) A(int(k) * d + x, y) = ms[k](x, y);
    return nullspace(A);
  };
  int W = std::max(window, 0);
  auto cur = kernel(W);
  for (;;) {
    auto next = kernel(W + 1);
    if (next.size() == cur.size()) break;
    cur = std::move(next);
    ++W;
  }
  if (used_window) *used_window = W;
  return cur;
}

namespace {

Scalar eigen_on(const Matrix& A, const Vec& v) {
  Vec w = A.apply(v);
  size_t p = 0;
  while (v[p].is_zero()) ++p;
  Scalar lam = w[p] / v[p];
  for (size_t k = 0; k < v.size(); ++k)
    if (w[k] != lam * v[k]) throw HighestWeightError("highest_weight: vector is not an eigenvector");
  return lam;
}

}  // namespace

HighestWeightData highest_weight(LoopModule& lm, const HWOptions& opt) {
  const Signature& sig = lm.sig();
  const int r = sig.rank(), T = opt.order;
  auto ker = hw_kernel(lm, opt.window);
  if (ker.size() != 1)
    throw HighestWeightError("highest_weight: joint kernel has dimension " + std::to_string(ker.size()));
  const Vec& v = ker[0];
  HighestWeightData h = hw_identity(sig.M, sig.N);
  for (int i = 1; i <= r; ++i) {
    Scalar k = eigen_on(lm.rho(GenSym::K(i)), v);
    if (i == sig.M) {
      FWindow f(T);
      for (int n = -T; n <= T; ++n) {
        Scalar x;
        if (n >= 0) x += eigen_on(lm.phi(i, 1, n), v);
        if (n <= 0) x -= eigen_on(lm.phi(i, -1, n), v);
        f.at(n) = x / qd(sig, i);
      }
      h.f = f;
      h.torsion = series_to_torsion(f, k, opt.degree_bound);
      h.eps[size_t(i)] = 1;
      continue;
    }
    auto sp = k.as_signed_qpower();
    if (!sp || sp->second % sig.qexp(i) != 0)
      throw HighestWeightError("highest_weight: K_" + std::to_string(i) + " eigenvalue " + k.str() + " is not +-q_i^d");
    int eps = sp->first, d = sp->second / sig.qexp(i);
    if (d < 0) throw HighestWeightError("highest_weight: negative degree at node " + std::to_string(i));
    h.eps[size_t(i)] = eps;
    // eps q_i^d P(z/q_i) = g(z) P(z q_i), solved order by order.
    Scalar qi = sig.q_i(i), lead = Scalar(eps) * qi.pow(d);
    std::vector<Scalar> g(size_t(T + 1)), p(size_t(T + 1));
    for (int n = 0; n <= T; ++n) g[size_t(n)] = eigen_on(lm.phi(i, 1, n), v);
    if (g[0] != lead) throw HighestWeightError("highest_weight: phi_0 disagrees with K");
    p[0] = 1;
    for (int n = 1; n <= T; ++n) {
      Scalar acc;
      for (int j = 0; j < n; ++j) acc += g[size_t(n - j)] * qi.pow(j) * p[size_t(j)];
      p[size_t(n)] = acc / (lead * (qi.pow(-n) - qi.pow(n)));
    }
    for (int n = d + 1; n <= T; ++n)
      if (!p[size_t(n)].is_zero())
        throw HighestWeightError("highest_weight: P_" + std::to_string(i) + " is not a polynomial of degree " + std::to_string(d) +
                                 " up to order " + std::to_string(T));
    ZPoly P(std::vector<Scalar>(p.begin(), p.begin() + d + 1));
    if (P.degree() != d) throw HighestWeightError("highest_weight: degree of P_" + std::to_string(i) + " below the K weight");
    // The phi^- side must be the expansion at infinity of the same ratio.
    ZSeries minus = expand_ratio(lead, P.scale_z(qi.inv()), P.scale_z(qi), Dir::minus, T);
    for (int n = 0; n <= T; ++n)
      if (eigen_on(lm.phi(i, -1, -n), v) != minus.at(n))
        throw HighestWeightError("highest_weight: phi^- of node " + std::to_string(i) + " disagrees at order " + std::to_string(n));
    h.P[size_t(i)] = P;
  }
  if (lm.K0ext()) h.K0_eigen = eigen_on(*lm.K0ext(), v);
  return h;
}

HighestWeightData pi_relabel(const HighestWeightData& h) {
  const int top = h.M + h.N;
  HighestWeightData o = hw_identity(h.N, h.M);
  for (int i = 1; i < top; ++i) {
    if (i == h.M) continue;
    const ZPoly& P = h.P[size_t(i)];
    o.P[size_t(top - i)] = normalize_const1(P.reversed(P.degree()));
    o.eps[size_t(top - i)] = h.eps[size_t(i)];
  }
  // f'(z) = -f(1/z): c -> c^-1 and Q, P reversed.
  const auto& t = h.torsion;
  o.torsion = {t.c.inv(), normalize_const1(t.Q.reversed(t.Q.degree())), normalize_const1(t.P.reversed(t.P.degree()))};
  if (!h.f.f.empty()) {
    o.f = FWindow(h.f.order);
    for (int n = -h.f.order; n <= h.f.order; ++n) o.f.at(n) = -h.f.at(-n);
  }
  return o;
}

}  // namespace qloop
