#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qloop/coeffs.hpp"
#include "qloop/matrix.hpp"

namespace qloop {

// Data of sl(M,N): l_i, the Cartan entries c_ij = (a_i, a_j) and the
// affine extension by node 0 (used by the Chevalley generators).
struct Signature {
  int M = 2, N = 1;
  bool includes_K0 = false;

  Signature() = default;
  Signature(int m, int n, bool k0 = false);
  int rank() const { return M + N - 1; }
  int l(int i) const { return i <= M ? 1 : -1; }  // 1 <= i <= M+N
  // 0 <= i, j <= rank.
  int c(int i, int j) const;
  int qexp(int i) const { return i == 0 ? 1 : l(i); }  // q_i = q^qexp(i)
  Scalar q_i(int i) const { return Scalar::q(qexp(i)); }
  bool odd_node(int i) const { return i == M || i == 0; }
  // Bilinear form on weights written in the basis a_1..a_rank.
  int form(const std::vector<int>& a, const std::vector<int>& b) const;
  int parity(const std::vector<int>& w) const;
  bool operator==(const Signature& o) const { return M == o.M && N == o.N && includes_K0 == o.includes_K0; }
};

// Xp/Xm/K/Kinv/H are the Drinfel'd generators (K at node 0 is the extra
// K_0 of the enlarged algebra).  Ep/Em/KC/KCinv are Chevalley generators,
// nodes 0..rank.
enum class Kind : uint8_t { Xp, Xm, K, Kinv, H, Ep, Em, KC, KCinv };

struct GenSym {
  Kind kind = Kind::Xp;
  int node = 1;
  int index = 0;

  auto operator<=>(const GenSym&) const = default;
  static GenSym Xp(int i, int n) { return {Kind::Xp, i, n}; }
  static GenSym Xm(int i, int n) { return {Kind::Xm, i, n}; }
  static GenSym X(int sign, int i, int n) { return {sign > 0 ? Kind::Xp : Kind::Xm, i, n}; }
  static GenSym K(int i) { return {Kind::K, i, 0}; }
  static GenSym Kinv(int i) { return {Kind::Kinv, i, 0}; }
  static GenSym H(int i, int s) { return {Kind::H, i, s}; }
  static GenSym E(int sign, int i) { return {sign > 0 ? Kind::Ep : Kind::Em, i, 0}; }
  static GenSym KC(int i, bool inv = false) { return {inv ? Kind::KCinv : Kind::KC, i, 0}; }
  std::string str() const;
};

using Word = std::vector<GenSym>;

// Bound on |s| for h_{i,s}.
constexpr int kMaxH = 8;

int sym_parity(const Signature& sig, const GenSym& g);
std::vector<int> sym_weight(const Signature& sig, const GenSym& g);
// Loop degree: n for X, s for H, +1 for E_0^+ and -1 for E_0^-.
int sym_degree(const GenSym& g);
void validate(const Signature& sig, const GenSym& g);

class Elem {
 public:
  using Terms = std::map<Word, Scalar>;

  Elem() = default;
  Elem(const Scalar& s);
  Elem(const GenSym& g) : Elem(Word{g}) {}
  explicit Elem(const Word& w, const Scalar& c = Scalar(1));
  static Elem one() { return Elem(Scalar(1)); }

  bool is_zero() const { return t_.empty(); }
  const Terms& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  Scalar coeff(const Word& w) const;

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const;
  Elem operator*(const Elem& o) const;
  Elem operator*(const Scalar& s) const;
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o) { return *this += -o; }
  bool operator==(const Elem& o) const { return t_ == o.t_; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
  // Adds c to the coefficient of w.
  void add(const Word& w, const Scalar& c);

  // Parity / weight / loop degree if every word agrees.
  std::optional<int> parity(const Signature& sig) const;
  std::optional<std::vector<int>> weight(const Signature& sig) const;
  std::optional<int> degree() const;
  bool homogeneous(const Signature& sig) const { return parity(sig) && weight(sig); }
  std::string str() const;

 private:
  Terms t_;
};

inline Elem operator*(const Scalar& s, const Elem& e) { return e * s; }

// [x, y]_u = xy - (-1)^{|x||y|} u yx.
Elem qbracket(const Signature& sig, const Elem& x, const Elem& y, const Scalar& u = Scalar(1));
// Nested right to left with twist q^{-(a,b)}.
Elem floor_bracket(const Signature& sig, const std::vector<Elem>& us);
// Nested left to right with twist q^{(a,b)}.
Elem ceil_bracket(const Signature& sig, const std::vector<Elem>& us);

// Coefficient of z^n in K_i^{+-1} exp(+-(q_i - q_i^-1) sum_{s>0} h_{i,+-s} z^{+-s}).
Elem phi_coeff(const Signature& sig, int i, int sign, int n);

// Sum of coefficient * word evaluated through a generator -> matrix map.
Matrix evaluate(const Elem& e, const std::function<const Matrix&(const GenSym&)>& rho, int dim);

// ------------------------------------------------------------ relations

enum class Family {
  cartan_inv,   // {i, order}: K_i K_i^-1 - 1 (order 0) or K_i^-1 K_i - 1
  cartan_kk,    // {i, j}
  cartan_kh,    // {i, j, s}
  cartan_hh,    // {i, j, s, t}
  kx,           // {i, j, n}: K_i X_jn K_i^-1 - q^{+-c_ij} X_jn
  hx,           // {i, j, s, n}
  pm_mixed,     // {i, j, m, n}
  deg2_zero,    // {i, j, m, n}, c_ij = 0
  deg2_shift,   // {i, j, m, n}, c_ij != 0; lead X_{i,m+1} X_{j,n}
  serre3,       // {i, j, m, n, k}, c_ij = +-1, i != M
  oscillation4, // {m, n, k, u}, M, N > 1
  k0x,          // {j, n}: extra K_0 against X
  k0_comm,      // {i, s}: K_0 against K_i (s = 0) or h_{i,s}
  ch_kinv,      // {i}
  ch_kk,        // {i, j}
  ch_ke,        // {i, j}
  ch_pm,        // {i, j}
  ch_zero,      // {i, j}, c_ij = 0
  ch_serre,     // {i, j}, c_ij = +-1, i != 0, M
  ch_osc,       // {which}: 0 at node M, 1 at node 0
  ch_deg5,      // {}: (M,N) = (2,1)
};

const char* family_name(Family f);

struct RelRule {
  Family family;
  int sign = 1;  // the +- of the X or E generators
  std::vector<int> idx;
  std::string str() const;
};

struct Relation {
  Elem elem;  // zero in the algebra
  Word lead;  // designated leading word (coefficient nonzero in elem)
};

// Throws std::invalid_argument on an invalid family/index combination.
Relation relation(const Signature& sig, const RelRule& rule);
inline Elem relation_elem(const Signature& sig, const RelRule& rule) { return relation(sig, rule).elem; }

struct CatalogOptions {
  int window = 2;           // loop indices in [-window, window]
  bool drinfeld = true;
  bool chevalley = false;   // requires M != N
  bool cartan_h = true;     // h-h and K-h commutation instances
};
std::vector<RelRule> catalog(const Signature& sig, const CatalogOptions& opt);

// Rewrites occurrences of the rule's leading word at position pos.  With
// target set, only that word is touched; portion scales the rewritten
// share of the coefficient (the rest stays as it was).
Elem apply_relation_at(const Signature& sig, const Elem& e, const RelRule& rule, size_t pos,
                       const Word* target = nullptr, const Scalar& portion = Scalar(1));

// phi_i^+(z) w = sum_n z^n c_n phi_i^+(z) for a word w of X^+ letters;
// returns c_0..c_order.
std::vector<Elem> phi_push_past(const Signature& sig, int i, const Elem& e, int order);

// Is e in the two-sided ideal spanned by u g v, u and v words over the
// given letters, in the same word length as e?  The test is exact linear
// algebra over word coordinates; e must be length-homogeneous.
bool in_ideal(const Elem& e, const std::vector<Elem>& gens, const std::vector<GenSym>& letters);

// ------------------------------------------------------- oscillation (2,2)

// R(a,b,c,d) + R(a,d,c,b), the degree-4 words whose commutators with
// X^-_{i,0} are shown to vanish by the triangular decomposition argument.
Elem oscillation_R(const Signature& sig, int a, int b, int c, int d);
Elem oscillation_R1(const Signature& sig, int a, int b, int c, int d);  // single R

// Coefficients of z^n, built mechanically: commute with X^-_{i,0}, keep
// the phi^+ part, and push phi_i^+(z) to the right.
Elem appendix_lambda(const Signature& sig, int n, int b, int c);
Elem appendix_mu(const Signature& sig, int a, int c, int n, int d);
// The expanded forms as printed (n >= 1), used as cross-checks.
Elem appendix_lambda_printed(const Signature& sig, int n, int b, int c);
Elem appendix_mu_printed(const Signature& sig, int a, int c, int n, int d);

struct GuidedStep {
  RelRule rule;
  size_t pos;
  Word word;
};

// Repeatedly rewrites the first (word, position) the picker accepts.
Elem rewrite_guided(const Signature& sig, Elem e,
                    const std::function<std::optional<RelRule>(const Word&, size_t)>& pick,
                    std::vector<GuidedStep>* steps = nullptr, size_t max_steps = 100000);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  size_t steps = 0;
};

struct AppendixReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

// Requires (M,N) = (2,2).
AppendixReport appendixA_check(const Signature& sig, int n_max, const std::vector<int>& window);

}  // namespace qloop
