#include "qloop/pbw.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qloop {

std::vector<int> Root::weight(const Signature& sig) const {
  std::vector<int> w(size_t(sig.rank()), 0);
  for (int k = i; k <= j; ++k) w[size_t(k - 1)] = 1;
  return w;
}

std::vector<Root> positive_roots(const Signature& sig) {
  std::vector<Root> r;
  for (int i = 1; i <= sig.rank(); ++i)
    for (int j = i; j <= sig.rank(); ++j) r.push_back({i, j});
  return r;
}

Elem root_vector(const Signature& sig, const Root& b, int n) {
  if (b.i < 1 || b.j < b.i || b.j > sig.rank()) throw std::invalid_argument("root_vector: invalid root");
  Elem e(GenSym::Xp(b.i, n));
  for (int k = b.i + 1; k <= b.j; ++k) e = qbracket(sig, e, Elem(GenSym::Xp(k, 0)), sig.q_i(k));
  return e;
}

std::vector<PBWMonomial> enumerate_pbw(const Signature& sig, const std::vector<int>& weight,
                                       const std::vector<int>& window) {
  std::vector<PBWMonomial> out;
  if (int(weight.size()) != sig.rank()) throw std::invalid_argument("enumerate_pbw: weight has wrong length");
  for (int x : weight)
    if (x < 0) return out;
  std::vector<PBWFactor> factors;
  for (const Root& r : positive_roots(sig))
    for (int n : window) factors.push_back({r, n});
  std::sort(factors.begin(), factors.end());
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  // Nondecreasing (strictly, for odd roots) sequences of factors whose root weights sum to weight.
  PBWMonomial cur;
  std::vector<int> rest = weight;
  std::function<void(size_t)> rec = [&](size_t from) {
    bool done = true;
    for (int x : rest) done = done && x == 0;
    if (done) {
      out.push_back(cur);
      return;
    }
    for (size_t f = from; f < factors.size(); ++f) {
      const Root& r = factors[f].root;
      bool fits = true;
      for (int k = r.i; k <= r.j; ++k) fits = fits && rest[size_t(k - 1)] > 0;
      if (!fits) continue;
      for (int k = r.i; k <= r.j; ++k) --rest[size_t(k - 1)];
      cur.push_back(factors[f]);
      // odd root vectors square to zero
      rec(r.i <= sig.M && sig.M <= r.j ? f + 1 : f);
      cur.pop_back();
      for (int k = r.i; k <= r.j; ++k) ++rest[size_t(k - 1)];
    }
  };
  rec(0);
  return out;
}

Elem pbw_elem(const Signature& sig, const PBWMonomial& m) {
  Elem e = Elem::one();
  for (const auto& f : m) e = e * root_vector(sig, f.root, f.n);
  return e;
}

std::vector<Word> xplus_words(const Signature& sig, const std::vector<int>& weight, const std::vector<int>& window) {
  std::vector<Word> out;
  std::vector<int> rest = weight;
  int len = 0;
  for (int x : weight) {
    if (x < 0) return out;
    len += x;
  }
  Word cur;
  std::function<void()> rec = [&] {
    if (int(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int i = 1; i <= sig.rank(); ++i) {
      if (!rest[size_t(i - 1)]) continue;
      --rest[size_t(i - 1)];
      for (int n : window) {
        cur.push_back(GenSym::Xp(i, n));
        rec();
        cur.pop_back();
      }
      ++rest[size_t(i - 1)];
    }
  };
  rec();
  return out;
}

std::vector<std::vector<int>> weights_up_to_height(const Signature& sig, int h) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(size_t(sig.rank()), 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == sig.rank()) {
      if (left < h) out.push_back(w);  // skips the zero weight
      return;
    }
    for (int x = 0; x <= left; ++x) {
      w[size_t(k)] = x;
      rec(k + 1, left - x);
    }
    w[size_t(k)] = 0;
  };
  rec(0, h);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int ha = 0, hb = 0;
    for (int x : a) ha += x;
    for (int x : b) hb += x;
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

namespace {

void need_xplus(const Word& w) {
  for (const auto& g : w)
    if (g.kind != Kind::Xp) throw std::invalid_argument("expected an element of the X^+ subalgebra");
}

}  // namespace

Elem tau1(const Elem& e) {
  Elem out;
  for (const auto& [w, c] : e.terms()) {
    need_xplus(w);
    Word v;
    for (const auto& g : w) v.push_back(GenSym::Xm(g.node, -g.index));
    out.add(v, c);
  }
  return out;
}

Elem tau2(const Elem& e) {
  Elem out;
  for (const auto& [w, c] : e.terms()) {
    need_xplus(w);
    Word v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) v.push_back(GenSym::Xp(it->node, -it->index));
    out.add(v, c);
  }
  return out;
}

Elem pi_MN(const Signature& sig, const Elem& e) {
  if (sig.N < 1) throw std::invalid_argument("pi_MN needs MN > 0");
  const int top = sig.M + sig.N;
  Elem out;
  for (const auto& [w, c] : e.terms()) {
    Word v;
    Scalar k = c;
    for (const auto& g : w) {
      if (g.node == 0) throw std::invalid_argument("pi_MN: K_0 has no image");
      int odd = g.node == sig.M ? -1 : 1;
      switch (g.kind) {
        case Kind::Xp: v.push_back(GenSym::Xp(top - g.node, -g.index)); break;
        case Kind::Xm:
          v.push_back(GenSym::Xm(top - g.node, -g.index));
          k *= Scalar(odd);
          break;
        case Kind::H:
          v.push_back(GenSym::H(top - g.node, -g.index));
          k *= Scalar(odd);
          break;
        case Kind::K: v.push_back(GenSym::Kinv(top - g.node)); break;
        case Kind::Kinv: v.push_back(GenSym::K(top - g.node)); break;
        default: throw std::invalid_argument("pi_MN: Chevalley symbols have no image");
      }
    }
    out.add(v, k);
  }
  return out;
}

}  // namespace qloop
