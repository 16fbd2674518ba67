#include "qloop/weyl.hpp"

#include <sstream>
#include <stdexcept>

namespace qloop {

namespace {

Scalar qdiff() { return Scalar::q(1) - Scalar::q(-1); }

}  // namespace

std::string TorsionTriple::invariant_error() const {
  if (c.is_zero()) return "c = 0";
  if (Q.coeff(0) != Scalar(1)) return "Q(0) != 1";
  if (P.coeff(0) != Scalar(1)) return "P(0) != 1";
  if (Q.degree() != P.degree()) return "deg Q != deg P";
  if (Q.lead() != c.pow(-2) * P.lead()) return "lead Q != c^-2 lead P";
  if (!poly_coprime(Q, P)) return "Q and P share a factor";
  return {};
}

std::string TorsionTriple::str() const {
  std::ostringstream os;
  os << "(c=" << c.str() << ", Q=" << Q.str() << ", P=" << P.str() << ")";
  return os.str();
}

bool FWindow::is_zero() const {
  for (const auto& x : f)
    if (!x.is_zero()) return false;
  return true;
}

TorsionSeries torsion_to_series(const TorsionTriple& t, int order) {
  if (order < 0) throw std::invalid_argument("torsion_to_series: negative order");
  TorsionSeries r;
  r.plus = expand_ratio(t.c, t.Q, t.P, Dir::plus, order);
  r.minus = expand_ratio(t.c, t.Q, t.P, Dir::minus, order);
  r.f = FWindow(order);
  Scalar inv = qdiff().inv();
  r.f.at(0) = (r.plus.at(0) - r.minus.at(0)) * inv;
  for (int n = 1; n <= order; ++n) {
    r.f.at(n) = r.plus.at(n) * inv;
    r.f.at(-n) = -r.minus.at(n) * inv;
  }
  return r;
}

bool annihilates(const ZPoly& P, const FWindow& f) {
  int d = P.degree();
  if (d < 0) return true;
  for (int n = -f.order + d; n <= f.order; ++n) {
    Scalar s;
    for (int k = 0; k <= d; ++k) s += P.coeff(k) * f.at(n - k);
    if (!s.is_zero()) return false;
  }
  return true;
}

TorsionTriple series_to_torsion(const FWindow& f, const Scalar& c, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("series_to_torsion: negative degree bound");
  if (f.order < degree_bound) throw std::invalid_argument("series_to_torsion: window too short for the degree bound");
  if (c.is_zero()) throw std::invalid_argument("series_to_torsion: c = 0");
  const int T = f.order;
  for (int d = 0; d <= degree_bound; ++d) {
    ZPoly P = ZPoly::one();
    if (d > 0) {
      // f_n + sum_{s=1}^d p_s f_{n-s} = 0 for -T+d <= n <= T.
      int rows = 2 * T + 1 - d;
      Matrix A(rows, d);
      Vec b(static_cast<size_t>(rows));
      for (int r = 0; r < rows; ++r) {
        int n = -T + d + r;
        for (int s = 1; s <= d; ++s) A(r, s - 1) = f.at(n - s);
        b[size_t(r)] = -f.at(n);
      }
      auto sol = solve(A, b);
      if (!sol || (*sol)[size_t(d - 1)].is_zero()) continue;
      std::vector<Scalar> p{Scalar(1)};
      p.insert(p.end(), sol->begin(), sol->end());
      P = ZPoly(p);
    } else if (!annihilates(P, f)) {
      continue;
    }
    // c Q = (P f^+) cut at degree d.
    std::vector<Scalar> fp(size_t(d + 1));
    fp[0] = c;
    for (int n = 1; n <= d; ++n) fp[size_t(n)] = qdiff() * f.at(n);
    ZPoly cQ = (P * ZPoly(fp)).truncated(d);
    TorsionTriple t{c, cQ * c.inv(), P};
    if (auto err = t.invariant_error(); !err.empty())
      throw std::invalid_argument("series_to_torsion: window is not of torsion form (" + err + ")");
    if (torsion_to_series(t, T).f != f)
      throw std::invalid_argument("series_to_torsion: reconstructed triple does not reproduce the window");
    return t;
  }
  throw NoAnnihilator("series_to_torsion: no annihilator of degree <= " + std::to_string(degree_bound));
}

bool HighestWeightData::same_weight(const HighestWeightData& o) const {
  if (M != o.M || N != o.N || eps != o.eps || torsion != o.torsion) return false;
  for (int i = 1; i < int(P.size()); ++i)
    if (i != M && P[size_t(i)] != o.P[size_t(i)]) return false;
  return true;
}

std::string HighestWeightData::str() const {
  std::ostringstream os;
  os << "{";
  for (int i = 1; i < int(P.size()); ++i)
    if (i != M) os << "P" << i << "=" << P[size_t(i)].str() << ", ";
  os << "torsion=" << torsion.str() << ", eps=[";
  for (int i = 1; i < int(eps.size()); ++i) os << (i > 1 ? "," : "") << eps[size_t(i)];
  os << "]}";
  return os.str();
}

HighestWeightData hw_identity(int M, int N) {
  HighestWeightData h;
  h.M = M;
  h.N = N;
  h.P.assign(size_t(M + N), ZPoly::one());
  h.eps.assign(size_t(M + N), 1);
  return h;
}

TorsionTriple torsion_product(const TorsionTriple& a, const TorsionTriple& b) {
  ZPoly Q = a.Q * b.Q, P = a.P * b.P;
  ZPoly g = poly_gcd(Q, P);
  if (g.degree() > 0) {
    Q = Q.divmod(g).first;
    P = P.divmod(g).first;
  }
  return {a.c * b.c, normalize_const1(Q), normalize_const1(P)};
}

HighestWeightData monoid_product(const HighestWeightData& a, const HighestWeightData& b) {
  if (a.M != b.M || a.N != b.N) throw std::invalid_argument("monoid_product: signature mismatch");
  HighestWeightData r = hw_identity(a.M, a.N);
  for (size_t i = 1; i < r.P.size(); ++i) {
    r.P[i] = a.P[i] * b.P[i];
    r.eps[i] = a.eps[i] * b.eps[i];
  }
  r.torsion = torsion_product(a.torsion, b.torsion);
  if (a.K0_eigen && b.K0_eigen) r.K0_eigen = *a.K0_eigen * *b.K0_eigen;
  return r;
}

FWindow star_product(const FWindow& f, const Scalar& c, const FWindow& g, const Scalar& d) {
  int T = std::min(f.order, g.order);
  Scalar h = qdiff();
  auto side = [&](const FWindow& x, const Scalar& cx, int sgn) {
    std::vector<Scalar> s(size_t(T + 1));
    s[0] = sgn > 0 ? cx : cx.inv();
    for (int n = 1; n <= T; ++n) s[size_t(n)] = h * x.at(sgn * n) * Scalar(sgn);
    return s;
  };
  auto mul = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    std::vector<Scalar> r(size_t(T + 1));
    for (int i = 0; i <= T; ++i)
      for (int j = 0; i + j <= T; ++j) r[size_t(i + j)] += x[size_t(i)] * y[size_t(j)];
    return r;
  };
  auto pp = mul(side(f, c, 1), side(g, d, 1));
  auto mm = mul(side(f, c, -1), side(g, d, -1));
  FWindow r(T);
  Scalar inv = h.inv();
  r.at(0) = (pp[0] - mm[0]) * inv;
  for (int n = 1; n <= T; ++n) {
    r.at(n) = pp[size_t(n)] * inv;
    r.at(-n) = -mm[size_t(n)] * inv;
  }
  return r;
}

Scalar theta_of(const ZPoly& Pprev) { return -Pprev.coeff(1); }

WeylOddSlice weyl_odd_slice(const ZPoly& Q, const ZPoly& Pprev) {
  if (Q.coeff(0) != Scalar(1)) throw std::invalid_argument("weyl_odd_slice: Q(0) must be 1");
  WeylOddSlice s;
  s.d = Q.degree();
  s.theta = theta_of(Pprev);
  if (s.d <= 0) {
    s.d = 0;
    return s;
  }
  // sum_{s=0}^d a_{d-s} w_{n+s} = 0 with a_0 = 1 gives the last column.
  s.shift = Matrix(s.d, s.d);
  for (int n = 0; n + 1 < s.d; ++n) s.shift(n + 1, n) = Scalar(1);
  for (int k = 0; k < s.d; ++k) s.shift(k, s.d - 1) = -Q.coeff(s.d - k);
  s.hM1 = s.shift + Matrix::identity(s.d) * s.theta;
  return s;
}

ZPoly shift_arg(const ZPoly& P, const Scalar& s) {
  ZPoly lin(std::vector<Scalar>{s, Scalar(1)}), r;
  for (int k = P.degree(); k >= 0; --k) r = r * lin + ZPoly(P.coeff(k));
  return r;
}

}  // namespace qloop
