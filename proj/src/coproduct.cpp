#include <algorithm>
#include <sstream>

#include "qloop/modrep.hpp"

namespace qloop {

namespace {

Vec flat(const Matrix& m) {
  Vec v;
  v.reserve(size_t(m.rows() * m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

// Homogeneous basis of a graded subspace of End(V).
struct Graded {
  std::vector<Op> basis;
  size_t size() const { return basis.size(); }
};

Graded span_of(const std::vector<Op>& ops, int dim) {
  RowSpace even(size_t(dim * dim)), odd(size_t(dim * dim));
  Graded g;
  for (const auto& o : ops)
    if ((o.parity ? odd : even).add(flat(o.m))) g.basis.push_back(o);
  return g;
}

Graded products(const Graded& a, const Graded& b, int dim) {
  std::vector<Op> ops;
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) ops.push_back({x.m * y.m, x.parity ^ y.parity});
  return span_of(ops, dim);
}

// rho(U) as the closure of the Chevalley generators.
Graded algebra_span(LoopModule& lm) {
  const Signature& s = lm.sig();
  std::vector<Op> gens;
  for (int i = 0; i <= s.rank(); ++i) {
    int p = s.odd_node(i) ? 1 : 0;
    gens.push_back({lm.rho(GenSym::E(1, i)), p});
    gens.push_back({lm.rho(GenSym::E(-1, i)), p});
    gens.push_back({lm.rho(GenSym::KC(i)), 0});
    gens.push_back({lm.rho(GenSym::KC(i, true)), 0});
  }
  Graded cur = span_of({{Matrix::identity(lm.dim()), 0}}, lm.dim());
  for (;;) {
    std::vector<Op> ops = cur.basis;
    for (const auto& x : cur.basis)
      for (const auto& g : gens) ops.push_back({x.m * g.m, x.parity ^ g.parity});
    Graded next = span_of(ops, lm.dim());
    if (next.size() == cur.size()) return cur;
    cur = std::move(next);
  }
}

// Span of the X^{sign}_{k,n}, widened until it stops growing.
Graded current_span(LoopModule& lm, int sign, int window = 3) {
  const Signature& s = lm.sig();
  auto build = [&](int W) {
    std::vector<Op> ops;
    for (int k = 1; k <= s.rank(); ++k)
      for (int n = -W; n <= W; ++n) ops.push_back({lm.rho(GenSym::X(sign, k, n)), k == s.M ? 1 : 0});
    return span_of(ops, lm.dim());
  };
  Graded cur = build(window);
  for (int W = window + 1;; ++W) {
    Graded next = build(W);
    if (next.size() == cur.size()) return cur;
    cur = std::move(next);
  }
}

struct Spaces {
  Graded UXm, UXm2, UXp, UXp2;
};

Spaces spaces(LoopModule& lm) {
  Graded U = algebra_span(lm), Xm = current_span(lm, -1), Xp = current_span(lm, 1);
  Spaces s;
  s.UXm = products(U, Xm, lm.dim());
  s.UXm2 = products(s.UXm, Xm, lm.dim());
  s.UXp = products(U, Xp, lm.dim());
  s.UXp2 = products(s.UXp, Xp, lm.dim());
  return s;
}

void add_tensor_span(RowSpace& rs, const Graded& a, const Graded& b, const std::vector<int>& parity1) {
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) rs.add(flat(stensor(x, y, parity1)));
}

struct Pair {
  LoopModule& m1;
  LoopModule& m2;
  LoopModule T;
  Spaces s1, s2;
  Matrix I1, I2;
  Pair(LoopModule& a, LoopModule& b)
      : m1(a), m2(b), T(tensor(a, b)), s1(spaces(a)), s2(spaces(b)),
        I1(Matrix::identity(a.dim())), I2(Matrix::identity(b.dim())) {}
  Matrix t(const Op& x, const Op& y) const { return stensor(x, y, m1.parity()); }
  size_t dim() const { return size_t(T.dim() * T.dim()); }
};

std::string sname(const char* what, int j, int n) {
  std::ostringstream os;
  os << "Delta " << what << "_{" << j << "," << n << "}";
  return os.str();
}

}  // namespace

std::vector<CoproductCheck> check_coproduct_formula(int j, int n, LoopModule& a, LoopModule& b) {
  Pair P(a, b);
  const Signature& sig = a.sig();
  const int p = j == sig.M ? 1 : 0, m = std::abs(n);
  auto X = [&](LoopModule& lm, int s, int k) { return Op{lm.rho(GenSym::X(s, j, k)), p}; };
  auto K = [&](LoopModule& lm, int e) {
    Matrix r = Matrix::identity(lm.dim());
    for (int k = 0; k < std::abs(e); ++k) r = r * lm.rho(e > 0 ? GenSym::K(j) : GenSym::Kinv(j));
    return Op{r, 0};
  };
  auto phi = [&](LoopModule& lm, int sgn, int k) { return lm.phi(j, sgn, k); };
  std::vector<CoproductCheck> out;

  auto judge = [&](std::string name, const Matrix& lhs, const Matrix& rhs, RowSpace* W, std::string extra = {}) {
    Vec d = flat(lhs - rhs);
    bool ok = W ? W->contains(d) : (lhs == rhs);
    out.push_back({std::move(name), ok, ok ? extra : "difference outside the correction space" + extra});
  };

  // (a) X^+ modulo U X^- (x) U (X^+)^2.
  {
    RowSpace W(P.dim());
    add_tensor_span(W, P.s1.UXm, P.s2.UXp2, a.parity());
    Matrix lhs = P.T.rho(GenSym::Xp(j, n));
    // e is the power of K_j on the first factor of the X_{n} (or X_{-m}) term.
    auto rhs_with = [&](int e) {
      if (n >= 0) {
        Matrix r = P.t(K(a, e), X(b, 1, n)) + P.t(X(a, 1, n), K(b, -1));
        for (int s = 1; s <= n; ++s) r += P.t({a.rho(GenSym::Kinv(j)) * phi(a, 1, s), 0}, X(b, 1, n - s));
        return r;
      }
      Matrix r = P.t(K(a, e), X(b, 1, n)) + P.t(X(a, 1, n), K(b, -1));
      for (int s = 1; s < m; ++s) r += P.t({a.rho(GenSym::Kinv(j)) * phi(a, -1, -s), 0}, X(b, 1, n + s));
      return r;
    };
    int printed = n >= 0 ? 0 : -2;
    std::string extra;
    if (!W.contains(flat(lhs - rhs_with(printed))))
      for (int e = -3; e <= 3; ++e)
        if (e != printed && W.contains(flat(lhs - rhs_with(e)))) extra = "; holds with K^" + std::to_string(e) + " on the first factor";
    judge(sname("X+", j, n), lhs, rhs_with(printed), n == 0 ? nullptr : &W, extra);
  }
  // (b) X^- modulo U (X^-)^2 (x) U X^+.
  {
    RowSpace W(P.dim());
    add_tensor_span(W, P.s1.UXm2, P.s2.UXp, a.parity());
    Matrix lhs = P.T.rho(GenSym::Xm(j, n));
    auto rhs_with = [&](int e) {
      Matrix r = P.t(K(a, 1), X(b, -1, n));
      if (n > 0) {
        r += P.t(X(a, -1, n), K(b, e));
        for (int s = 1; s < n; ++s) r += P.t(X(a, -1, s), {b.rho(GenSym::K(j)) * phi(b, 1, n - s), 0});
      } else {
        r += P.t(X(a, -1, n), K(b, e));
        for (int s = 1; s <= m; ++s) r += P.t(X(a, -1, n + s), {b.rho(GenSym::K(j)) * phi(b, -1, -s), 0});
      }
      return r;
    };
    int printed = n > 0 ? 2 : 0;
    std::string extra;
    if (!W.contains(flat(lhs - rhs_with(printed))))
      for (int e = -3; e <= 3; ++e)
        if (e != printed && W.contains(flat(lhs - rhs_with(e)))) extra = "; holds with K^" + std::to_string(e) + " on the second factor";
    judge(sname("X-", j, n), lhs, rhs_with(printed), n == 0 ? nullptr : &W, extra);
  }
  // (c) phi^{+-}_{+-m} modulo U X^- (x) U X^+ + U X^+ (x) U X^-.
  {
    RowSpace W(P.dim());
    add_tensor_span(W, P.s1.UXm, P.s2.UXp, a.parity());
    add_tensor_span(W, P.s1.UXp, P.s2.UXm, a.parity());
    for (int sgn : {1, -1}) {
      Matrix lhs = P.T.phi(j, sgn, sgn * m);
      Matrix rhs(P.T.dim(), P.T.dim());
      for (int s = 0; s <= m; ++s) rhs += P.t({phi(a, sgn, sgn * s), 0}, {phi(b, sgn, sgn * (m - s)), 0});
      judge(sname(sgn > 0 ? "phi+" : "phi-", j, sgn * m), lhs, rhs, &W);
    }
  }
  return out;
}

std::vector<CoproductCheck> check_h_coproduct(int i, LoopModule& a, LoopModule& b) {
  Pair P(a, b);
  const Signature& sig = a.sig();
  RowSpace W(P.dim());
  add_tensor_span(W, P.s1.UXm2, P.s2.UXp2, a.parity());
  std::vector<CoproductCheck> out;
  for (int s : {1, -1}) {
    Matrix D = P.T.rho(GenSym::H(i, s)) - P.t({a.rho(GenSym::H(i, s)), 0}, {P.I2, 0}) -
               P.t({P.I1, 0}, {b.rho(GenSym::H(i, s)), 0});
    std::vector<int> ks;
    std::vector<Vec> cols;
    for (int k = i - 1; k <= i + 1; ++k) {
      if (k < 1 || k > sig.rank()) continue;
      int p = k == sig.M ? 1 : 0;
      Matrix A = s > 0 ? P.t({a.rho(GenSym::Xm(k, 1)) * a.rho(GenSym::Kinv(k)), p}, {b.rho(GenSym::K(k)) * b.rho(GenSym::Xp(k, 0)), p})
                       : P.t({a.rho(GenSym::Xm(k, 0)) * a.rho(GenSym::Kinv(k)), p}, {b.rho(GenSym::K(k)) * b.rho(GenSym::Xp(k, -1)), p});
      ks.push_back(k);
      cols.push_back(W.reduce(flat(A)));
    }
    Vec rd = W.reduce(flat(D));
    Matrix sys(int(rd.size()), int(cols.size()));
    for (size_t r = 0; r < rd.size(); ++r)
      for (size_t c = 0; c < cols.size(); ++c) sys(int(r), int(c)) = cols[c][r];
    auto sol = solve(sys, rd);
    std::ostringstream os;
    std::string name = "Delta h_{" + std::to_string(i) + "," + std::to_string(s) + "}";
    if (!sol) {
      out.push_back({name, false, "no combination of the A_k matches"});
      continue;
    }
    bool unique = rank_of(cols) == cols.size();
    Scalar want = (sig.q_i(i) - sig.q_i(i).inv()) * Scalar(s);
    const char* letters[] = {"x", "y", "z"};
    for (size_t c = 0; c < ks.size(); ++c) os << (c ? ", " : "") << letters[ks[c] - i + 1] << "=" << (*sol)[c].str();
    bool ok = true;
    if (i + 1 <= sig.rank()) {
      // Is z = want consistent on its own, whatever the others are?
      size_t zc = ks.size() - 1;
      Vec rest = rd;
      for (size_t r = 0; r < rest.size(); ++r) rest[r] -= want * cols[zc][r];
      Matrix sub(int(rd.size()), int(zc));
      for (size_t r = 0; r < rd.size(); ++r)
        for (size_t c = 0; c < zc; ++c) sub(int(r), int(c)) = cols[c][r];
      ok = zc ? solve(sub, rest).has_value() : std::all_of(rest.begin(), rest.end(), [](const Scalar& v) { return v.is_zero(); });
      RowSpace others(rd.size());
      for (size_t c = 0; c < zc; ++c) others.add(cols[c]);
      bool z_fixed = !others.contains(cols[zc]) && !std::all_of(cols[zc].begin(), cols[zc].end(), [](const Scalar& v) { return v.is_zero(); });
      os << (z_fixed ? "; z determined" : "; z not determined by this module");
    }
    if (!unique) os << " (solution not unique)";
    out.push_back({name, ok, os.str()});
  }
  return out;
}

}  // namespace qloop
