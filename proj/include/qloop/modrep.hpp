#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qloop/matrix.hpp"
#include "qloop/superfree.hpp"
#include "qloop/weyl.hpp"

namespace qloop {

// Homogeneous operator on a graded space.
struct Op {
  Matrix m;
  int parity = 0;
};

// [x, y]_u with the Koszul sign from the parities.
Matrix sbracket(const Op& x, const Op& y, const Scalar& u = Scalar(1));
// Parity of a matrix w.r.t. a basis grading, or nullopt if mixed (the
// zero matrix counts as even).
std::optional<int> matrix_parity(const Matrix& m, const std::vector<int>& parity);

// A U_q(gl(M,N)) module.  t, tinv are indexed 1..M+N and ep, em 1..M+N-1;
// slot 0 is unused.
struct GLModule {
  int M = 0, N = 0;
  int dim = 0;
  std::vector<int> parity;
  std::vector<Matrix> t, tinv, ep, em;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RelationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// v_1..v_{M+N}, t_i v_k = q^{delta_ik} v_k, e_j^+ = E_{j,j+1}, e_j^- = E_{j+1,j}.
// Throws RelationFailure if check_gl_relations finds a violation.
GLModule fundamental(int M, int N);
GLModule gl_trivial(int M, int N);
// Every relation instance, pass or fail.
std::vector<CheckResult> check_gl_relations(const GLModule& m);

// Matrices for the Chevalley generators E_i^+-, K_i^+-1 (0 <= i <= rank)
// and, in the enlarged algebra, the extra K_0.  Drinfel'd currents are
// derived on demand and cached.
class LoopModule {
 public:
  LoopModule() = default;
  LoopModule(Signature sig, std::vector<int> parity, std::vector<Matrix> Ep, std::vector<Matrix> Em,
             std::vector<Matrix> KC, std::optional<Matrix> K0ext = std::nullopt);

  const Signature& sig() const { return sig_; }
  int dim() const { return dim_; }
  const std::vector<int>& parity() const { return parity_; }
  std::string label;  // free-form description for reports

  // Matrix of any generator symbol.  Derived symbols are cached; after
  // freeze() only cached symbols may be requested.
  const Matrix& rho(const GenSym& g);
  Matrix eval(const Elem& e);
  // Fill the cache for |n| <= window and forbid further writes.
  void freeze(int window);
  bool frozen() const { return frozen_; }

  // X_{j,n} from X_{j,n-+1} and h_{via,+-1}; uncached.
  Matrix ladder(int sign, int j, int n, int via);
  std::vector<int> ladder_neighbors(int j) const;
  // h_{i,+-1} from the floor/ceil bracket word, uncached.
  Matrix h_word(int i, int s);
  // h_{i,s} from phi_i^{+-} by inverting the exponential, uncached.
  Matrix h_from_phi(int i, int s);
  // phi^{+-}_{i,n} = +-(q_i - q_i^-1)[X^+, X^-] (n != 0), K_i^{+-1} (n = 0).
  Matrix phi(int i, int sign, int n);

  const std::vector<Matrix>& chevalley(int sign) const { return sign > 0 ? Ep_ : Em_; }
  const std::vector<Matrix>& chevalley_K() const { return KC_; }
  const std::optional<Matrix>& K0ext() const { return K0ext_; }

 private:
  Signature sig_;
  int dim_ = 0;
  std::vector<int> parity_;
  std::vector<Matrix> Ep_, Em_, KC_, KCinv_;
  std::optional<Matrix> K0ext_, K0extinv_;
  std::map<GenSym, Matrix> cache_;
  bool frozen_ = false;

  Matrix derive(const GenSym& g);
  int preferred_neighbor(int j) const;
};

// ev_a^* of a gl module: E_j^+- = e_j^+-, K_j = t_j^{l_j} t_{j+1}^{-l_{j+1}},
// K_0 = t_1^-1 t_{M+N}^-1, E_0^+- = a^{+-1} ev(E_0^+-).  With enlarged set,
// the extra K_0 acts as t_1.  Requires M != N.
LoopModule evaluation_pullback(const GLModule& m, const Scalar& a, bool enlarged = false);
// The (M,N) module x -> rho(pi_{M,N}(x)) built from an (N,M) module.
// K0ext is the extra K_0 in the enlarged (M,N) algebra, if wanted.
LoopModule pi_pullback(LoopModule& src, std::optional<Matrix> K0ext = std::nullopt);
// The evaluation module used for signature (M,N): ev_a^* fundamental(M,N)
// for M >= 2, and the pi pullback of ev_a^* fundamental(N,M) for M = 1.
LoopModule fundamental_evaluation(int M, int N, const Scalar& a, bool enlarged = false);
LoopModule loop_trivial(const Signature& sig);

// Super tensor product through the coproduct.
LoopModule tensor(LoopModule& a, LoopModule& b);

// Relation catalog instances evaluated on the module.
struct RelationReport {
  size_t checked = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && checked > 0; }
};
RelationReport check_relations(LoopModule& lm, const CatalogOptions& opt, size_t max_failures = 20);

struct HighestWeightError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HWOptions {
  int window = 2;       // |n| for the kernel of the X^+_{i,n}
  int order = 6;        // series truncation
  int degree_bound = 3; // for the odd-node annihilator
};

// Joint kernel of the X^+_{i,n}, grown until its dimension is stable for
// two consecutive windows.
std::vector<Vec> hw_kernel(LoopModule& lm, int window, int* used_window = nullptr);
HighestWeightData highest_weight(LoopModule& lm, const HWOptions& opt = {});
// Reads an (M,N) highest weight as data of the (N,M) algebra through pi.
HighestWeightData pi_relabel(const HighestWeightData& h);

// Ranks of the images of PBW monomials and of all X^+ words of one weight.
struct RankPair {
  size_t pbw = 0, words = 0;
};
RankPair pbw_rank(LoopModule& lm, const std::vector<int>& weight, const std::vector<int>& window);

// Koszul product of operators on V1 (x) V2.
Matrix stensor(const Op& x, const Op& y, const std::vector<int>& parity1);

struct CoproductCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Coproduct formulas for X^+_{j,n}, X^-_{j,n}, phi^+-_{j,+-|n|} on a
// tensor of two modules, modulo the stated correction subspaces.
std::vector<CoproductCheck> check_coproduct_formula(int j, int n, LoopModule& m1, LoopModule& m2);
// Solves Delta h_{i,+-1} for its coefficients x_i, y_i, z_i and checks z_i = +-(q_i - q_i^-1).
std::vector<CoproductCheck> check_h_coproduct(int i, LoopModule& m1, LoopModule& m2);

}  // namespace qloop
