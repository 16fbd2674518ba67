// Replay of the degree-4 oscillation computation for sl(2,2).

#include <sstream>
#include <stdexcept>

#include "qloop/superfree.hpp"

namespace qloop {

namespace {

Elem X(int i, int n) { return Elem(GenSym::Xp(i, n)); }

void need22(const Signature& sig) {
  if (sig.M != 2 || sig.N != 2) throw std::invalid_argument("appendix computation needs (M,N) = (2,2)");
}

// a_s = q^-s - q^{-s+2}, b_s = q^s - q^{s-2}; a_0 = b_0 = 1 is not used.
Scalar a_(int s) { return Scalar::q(-s) - Scalar::q(-s + 2); }
Scalar b_(int s) { return Scalar::q(s) - Scalar::q(s - 2); }

// Sentinel indices marking the two X_2 slots before they are resolved.
constexpr int kTagZ = 1 << 20;
constexpr int kTagW = (1 << 20) + 1;

}  // namespace

Elem oscillation_R1(const Signature& sig, int a, int b, int c, int d) {
  need22(sig);
  return X(1, a) * X(2, b) * X(3, c) * X(2, d) + X(3, c) * X(2, b) * X(1, a) * X(2, d) +
         X(2, b) * X(1, a) * X(2, d) * X(3, c) + X(2, b) * X(3, c) * X(2, d) * X(1, a) -
         X(2, b) * X(1, a) * X(3, c) * X(2, d) * (Scalar::q(1) + Scalar::q(-1));
}

Elem oscillation_R(const Signature& sig, int a, int b, int c, int d) {
  return oscillation_R1(sig, a, b, c, d) + oscillation_R1(sig, a, d, c, b);
}

Elem appendix_lambda(const Signature& sig, int n, int b, int c) {
  need22(sig);
  if (n < 0) return {};
  // The X_1 letter commutes to phi_1^+(z); the others commute with X^-_{1,0}.
  Elem out;
  Elem r = oscillation_R1(sig, 0, b, c, b);
  for (const auto& [w, k] : r.terms()) {
    size_t p = 0;
    while (w[p].node != 1) ++p;
    Elem pre(Word(w.begin(), w.begin() + long(p)));
    Elem post(Word(w.begin() + long(p) + 1, w.end()));
    out += pre * phi_push_past(sig, 1, post, n)[size_t(n)] * k;
  }
  return out;
}

Elem appendix_mu(const Signature& sig, int a, int c, int n, int d) {
  need22(sig);
  if (n < 0) return {};
  Elem out;
  Elem r = oscillation_R(sig, a, kTagZ, c, kTagW);
  for (const auto& [w, k] : r.terms()) {
    // [w, X^-_{2,0}]: the letter at p is replaced, with the Koszul sign of
    // moving the odd X^- past the odd letters to its right.
    for (size_t p = 0; p < w.size(); ++p) {
      // Only the z-slot: the w-slot terms form the mirror image G(w,z).
      if (w[p].node != 2 || w[p].index != kTagZ) continue;
      int odd_after = 0;
      for (size_t t = p + 1; t < w.size(); ++t) odd_after += w[t].node == 2;
      // The surviving X_2 is the w-slot, read at X_{2,d}.
      Word rest(w.begin(), w.end());
      for (auto& g : rest)
        if (g.node == 2) g.index = d;
      Elem pre(Word(rest.begin(), rest.begin() + long(p)));
      Elem post(Word(rest.begin() + long(p) + 1, rest.end()));
      Scalar sgn = odd_after % 2 ? Scalar(-1) : Scalar(1);
      out += pre * phi_push_past(sig, 2, post, n)[size_t(n)] * (k * sgn);
    }
  }
  return out;
}

Elem appendix_lambda_printed(const Signature& sig, int n, int b, int c) {
  need22(sig);
  Scalar q1 = Scalar::q(-1), q2 = Scalar::q(-2), an = a_(n);
  Elem e = X(2, b) * X(3, c) * X(2, b + n) * (q2 * an) + X(2, b + n) * X(3, c) * X(2, b) * (q2 * an) +
           X(3, c) * X(2, b) * X(2, b + n) * (q1 * an) + X(2, b) * X(2, b + n) * X(3, c) * (q1 * an) -
           X(2, b) * X(3, c) * X(2, b + n) * ((Scalar(1) + q2) * an);
  for (int s = 1; s < n; ++s) e += X(2, b + s) * X(3, c) * X(2, b + n - s) * (q2 * a_(s) * a_(n - s));
  return e;
}

Elem appendix_mu_printed(const Signature& sig, int a, int c, int n, int d) {
  need22(sig);
  Scalar q = Scalar::q(1), qi = Scalar::q(-1), an = a_(n), bn = b_(n);
  Elem e = -X(1, a) * X(3, c + n) * X(2, d) * (q * bn) - X(3, c) * X(1, a + n) * X(2, d) * (qi * an) +
           X(2, d) * X(1, a) * X(3, c + n) * (q * bn) - X(1, a) * X(2, d) * X(3, c + n) * bn -
           X(1, a + n) * X(2, d) * X(3, c) * an - X(3, c) * X(2, d) * X(1, a + n) * an -
           X(3, c + n) * X(2, d) * X(1, a) * bn + X(2, d) * X(3, c) * X(1, a + n) * (qi * an) +
           X(1, a) * X(3, c + n) * X(2, d) * ((q + qi) * bn) + X(1, a + n) * X(3, c) * X(2, d) * ((q + qi) * an);
  for (int s = 1; s < n; ++s) {
    Scalar ab = a_(s) * b_(n - s);
    e += X(1, a + s) * X(3, c + n - s) * X(2, d) * ((q + qi) * ab);
    e -= X(1, a + s) * X(2, d) * X(3, c + n - s) * ab;
    e -= X(3, c + n - s) * X(2, d) * X(1, a + s) * ab;
  }
  return e;
}

Elem rewrite_guided(const Signature& sig, Elem e,
                    const std::function<std::optional<RelRule>(const Word&, size_t)>& pick,
                    std::vector<GuidedStep>* steps, size_t max_steps) {
  for (size_t n = 0;; ++n) {
    bool found = false;
    for (const auto& [w, c] : e.terms()) {
      for (size_t p = 0; p < w.size() && !found; ++p)
        if (auto r = pick(w, p)) {
          Word target = w;
          if (steps) steps->push_back({*r, p, target});
          e = apply_relation_at(sig, e, *r, p, &target);
          found = true;
        }
      if (found) break;
    }
    if (!found) return e;
    if (n >= max_steps) throw std::runtime_error("rewrite_guided: step bound reached");
  }
}

bool AppendixReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

bool is(const GenSym& g, int node) { return g.kind == Kind::Xp && g.node == node; }

// X_2 X_2 pairs to ascending order (odd node, so they anticommute).
std::optional<RelRule> sort_x2(const Word& w, size_t p) {
  if (p + 1 < w.size() && is(w[p], 2) && is(w[p + 1], 2) && w[p].index >= w[p + 1].index)
    return RelRule{Family::deg2_zero, 1, {2, 2, w[p].index, w[p + 1].index}};
  return std::nullopt;
}

// X_{2,x} X_{3,c} -> q X_{3,c} X_{2,x} + (terms with X_{3,c+1}).
auto push_x3(int c) {
  return [c](const Word& w, size_t p) -> std::optional<RelRule> {
    if (p + 1 < w.size() && is(w[p], 2) && is(w[p + 1], 3) && w[p + 1].index == c)
      return RelRule{Family::deg2_shift, 1, {2, 3, w[p].index - 1, c}};
    return sort_x2(w, p);
  };
}

// Middle words Y X_{2,d} Z: pair X_{2,d} with the neighbour whose index
// carries the shift (both shifted: the right one), as the hand derivation does.
auto pair_x2(int a, int c, int d) {
  return [a, c, d](const Word& w, size_t p) -> std::optional<RelRule> {
    if (w.size() != 3 || !is(w[1], 2) || w[1].index != d) return std::nullopt;
    auto outer = [](const GenSym& g) { return is(g, 1) || is(g, 3); };
    if (!outer(w[0]) || !outer(w[2])) return std::nullopt;
    auto shifted = [&](const GenSym& g) { return g.index != (g.node == 1 ? a : c); };
    size_t pos = shifted(w[2]) ? 1 : 0;
    const GenSym& g = pos ? w[2] : w[0];
    if (p != pos || !shifted(g)) return std::nullopt;
    return RelRule{Family::deg2_shift, 1, {g.node, 2, g.index - 1, d}};
  };
}

// X_3 X_1 -> X_1 X_3: a normal form for [X1,X3] = 0 on the words here.
std::optional<RelRule> sort_x13(const Word& w, size_t p) {
  if (p + 1 < w.size() && is(w[p], 3) && is(w[p + 1], 1))
    return RelRule{Family::deg2_zero, 1, {1, 3, w[p + 1].index, w[p].index}};
  return std::nullopt;
}

}  // namespace

AppendixReport appendixA_check(const Signature& sig, int n_max, const std::vector<int>& window) {
  need22(sig);
  if (n_max < 1) throw std::invalid_argument("appendixA_check: n_max must be >= 1");
  AppendixReport rep;
  auto name = [](const char* f, std::initializer_list<int> xs) {
    std::ostringstream os;
    os << f << "(";
    bool first = true;
    for (int x : xs) {
      os << (first ? "" : ",") << x;
      first = false;
    }
    os << ")";
    return os.str();
  };
  auto x2anti = [&](int x, int y) { return relation_elem(sig, {Family::deg2_zero, 1, {2, 2, x, y}}); };

  for (int b : window)
    for (int c : window) {
      Elem l0 = appendix_lambda(sig, 0, b, c);
      bool ok = in_ideal(l0, {x2anti(b, b)}, {GenSym::Xp(2, b), GenSym::Xp(3, c)});
      rep.checks.push_back({name("lambda0", {b, c}), ok, ok ? "zero modulo X2 anticommutation" : l0.str(), 0});
      for (int n = 1; n <= n_max; ++n) {
        Elem mech = appendix_lambda(sig, n, b, c);
        bool same = mech == appendix_lambda_printed(sig, n, b, c);
        rep.checks.push_back({name("lambda_printed", {n, b, c}), same, same ? "" : (mech - appendix_lambda_printed(sig, n, b, c)).str(), 0});
        std::vector<GuidedStep> steps;
        Elem diff = mech - appendix_lambda(sig, n - 1, b, c + 1);
        Elem res = rewrite_guided(sig, diff, push_x3(c), &steps);
        rep.checks.push_back({name("lambda_step", {n, b, c}), res.is_zero(), res.is_zero() ? "" : res.str(), steps.size()});
      }
    }

  for (int a : window)
    for (int c : window)
      for (int d : window) {
        Elem m0 = appendix_mu(sig, a, c, 0, d);
        Elem comm13 = relation_elem(sig, {Family::deg2_zero, 1, {1, 3, a, c}});
        bool ok = in_ideal(m0, {comm13}, {GenSym::Xp(1, a), GenSym::Xp(2, d), GenSym::Xp(3, c)});
        rep.checks.push_back({name("mu0", {a, c, d}), ok, ok ? "zero modulo [X1,X3] = 0" : m0.str(), 0});
        for (int n = 1; n <= n_max; ++n) {
          Elem mech = appendix_mu(sig, a, c, n, d);
          Elem pr = appendix_mu_printed(sig, a, c, n, d);
          rep.checks.push_back({name("mu_printed", {a, c, n, d}), mech == pr, mech == pr ? "" : (mech - pr).str(), 0});
          std::vector<GuidedStep> steps;
          Elem diff = mech - appendix_mu(sig, a, c, n - 1, d + 1);
          Elem res = rewrite_guided(sig, diff, pair_x2(a, c, d), &steps);
          res = rewrite_guided(sig, res, sort_x13, &steps);
          rep.checks.push_back({name("mu_step", {a, c, n, d}), res.is_zero(), res.is_zero() ? "" : res.str(), steps.size()});
        }
      }
  return rep;
}

}  // namespace qloop
