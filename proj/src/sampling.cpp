#include "qloop/sampling.hpp"

namespace qloop {

Scalar random_qmonomial(Rng& g) {
  std::uniform_int_distribution<int> k(1, 3), s(0, 1), e(-2, 2);
  int v = k(g) * (s(g) ? 1 : -1);
  return Scalar(v) * Scalar::q(e(g));
}

Scalar random_coeff(Rng& g) {
  std::uniform_int_distribution<int> two(0, 1);
  for (;;) {
    Scalar c = random_qmonomial(g);
    if (two(g)) c += random_qmonomial(g);
    if (!c.is_zero()) return c;
  }
}

ZPoly random_poly_const1(Rng& g, int d) {
  std::vector<Scalar> c{Scalar(1)};
  std::uniform_int_distribution<int> zero(0, 3);
  for (int k = 1; k <= d; ++k) c.push_back(k == d || zero(g) ? random_coeff(g) : Scalar());
  return ZPoly(c);
}

ZPoly random_factored(Rng& g, int d, std::vector<Scalar>* roots) {
  ZPoly p = ZPoly::one();
  if (roots) roots->clear();
  for (int k = 0; k < d; ++k) {
    Scalar b = random_qmonomial(g);
    if (roots) roots->push_back(b);
    p = p * ZPoly({Scalar(1), -b});
  }
  return p;
}

TorsionTriple random_torsion(Rng& g, int d) {
  std::uniform_int_distribution<int> e(-2, 2), s(0, 1);
  for (;;) {
    Scalar c = Scalar::q(e(g)) * Scalar(s(g) ? 1 : -1);
    ZPoly P = random_poly_const1(g, d);
    std::vector<Scalar> qc = random_poly_const1(g, d).coeffs();
    if (d > 0) qc.back() = c.pow(-2) * P.lead();
    TorsionTriple t{c, ZPoly(qc), P};
    if (t.invariant_error().empty()) return t;
  }
}

}  // namespace qloop
