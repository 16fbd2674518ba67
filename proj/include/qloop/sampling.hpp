#pragma once
// Seeded random inputs for the randomized suites.  Everything is a pure
// function of the generator state, so a fixed seed gives fixed reports.

#include <random>

#include "qloop/coeffs.hpp"
#include "qloop/weyl.hpp"

namespace qloop {

using Rng = std::mt19937_64;

// k q^e with k in [-3,3] \ {0} and e in [-2,2].
Scalar random_qmonomial(Rng& g);
// A sum of one or two such terms, nonzero.
Scalar random_coeff(Rng& g);
// 1 + c_1 z + ... + c_d z^d with c_d != 0.
ZPoly random_poly_const1(Rng& g, int d);
// prod (1 - b_i z), returning the b_i as well.
ZPoly random_factored(Rng& g, int d, std::vector<Scalar>* roots);
// Coprime triple with deg P = deg Q = d and c = +-q^e.
TorsionTriple random_torsion(Rng& g, int d);

}  // namespace qloop
