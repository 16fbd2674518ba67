#pragma once

#include <compare>
#include <vector>

#include "qloop/superfree.hpp"

namespace qloop {

// alpha_i + ... + alpha_j, ordered lexicographically on (i, j).
struct Root {
  int i = 1, j = 1;
  auto operator<=>(const Root&) const = default;
  std::vector<int> weight(const Signature& sig) const;
};

std::vector<Root> positive_roots(const Signature& sig);

// [...[[X_{i,n}, X_{i+1,0}]_{q_{i+1}}, X_{i+2,0}]_{q_{i+2}}, ..., X_{j,0}]_{q_j}.
Elem root_vector(const Signature& sig, const Root& b, int n);

struct PBWFactor {
  Root root;
  int n = 0;
  auto operator<=>(const PBWFactor&) const = default;
};
using PBWMonomial = std::vector<PBWFactor>;

// Ordered monomials of the given weight (coordinates in alpha_1..alpha_r)
// with loop indices from the window; factors are sorted by (root, n) and
// odd factors do not repeat.
std::vector<PBWMonomial> enumerate_pbw(const Signature& sig, const std::vector<int>& weight,
                                       const std::vector<int>& window);
Elem pbw_elem(const Signature& sig, const PBWMonomial& m);
// All X^+ words of the weight with loop indices from the window.
std::vector<Word> xplus_words(const Signature& sig, const std::vector<int>& weight, const std::vector<int>& window);
// Positive weights of height 1..h.
std::vector<std::vector<int>> weights_up_to_height(const Signature& sig, int h);

// X^+_{i,n} -> X^-_{i,-n}; an algebra map.  Throws on non-X^+ symbols.
Elem tau1(const Elem& e);
// X^+_{i,n} -> X^+_{i,-n}, reversing words.
Elem tau2(const Elem& e);
// Generatorwise image in U_q(Lsl(N,M)); K_0 symbols are rejected.
Elem pi_MN(const Signature& sig, const Elem& e);

}  // namespace qloop
