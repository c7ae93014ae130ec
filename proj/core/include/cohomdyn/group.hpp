#pragma once

#include <optional>
#include <string>

#include "cohomdyn/degrees.hpp"
#include "cohomdyn/numberfield.hpp"
#include "cohomdyn/torus_aut.hpp"

namespace cohomdyn {

// Kodaira dimension of a complex torus; the rank bound for positive-entropy
// abelian groups reads k - kappa - 1.
inline constexpr int kodaira_dimension_torus = 0;

// Finitely generated group of torus automorphisms acting on cohomology.
struct MatrixGroup {
  TorusModel model;
  std::vector<TorusAut> gens;
  std::vector<std::string> labels;

  MatrixGroup(TorusModel m, std::vector<TorusAut> g, std::vector<std::string> l = {});
  bool commuting() const;  // exact pairwise check on the H^1 matrices
};

// Words over the generator alphabet with inverses: letter +i means gens[i-1],
// letter -i its inverse. Words are reduced (no immediate cancellation).
using Word = std::vector<int>;

std::vector<Word> enumerate_words(int n_gens, int max_len);
std::string word_to_string(const Word& w, const std::vector<std::string>& labels);

// the automorphism realizing a word, letters applied left to right
TorusAut word_aut(const MatrixGroup& g, const Word& w);

// exact cyclotomic positive-entropy audit of all nonidentity words
struct EntropyAudit {
  int words_checked = 0;
  int zero_entropy_nonidentity = 0;  // violations for a positive-entropy group
  bool all_positive = true;
};
EntropyAudit check_words_positive_entropy(const MatrixGroup& g, int word_cap);

// ---- derived series probe ----

struct SolvabilityReport {
  bool solvable = false;
  int depth = 0;          // depth at which the series reached {1}
  bool truncated = false; // an element budget was hit
  std::string note;
};

SolvabilityReport derived_series_probe(const MatrixGroup& g, int max_depth,
                                       int word_cap, int element_budget = 400);

// ---- ping-pong certificates ----

// Quadratic double cone { x : (u.x)^2 >= s (u.u)(x.x) } around the line Ru.
struct ConeSpec {
  std::vector<Rat> axis;
  Rat s;  // squared cosine of the half-angle, 0 < s < 1
  RatMat form() const;  // Q = u u^T - s (u.u) I
};

struct PingPongCertificate {
  int n = 1;  // powers |m| >= n shuffle the cones
  ConeSpec g_plus, g_minus, h_plus, h_minus;
};

// Exact verification: disjointness, invariance of the attracting cones and
// the injections g^{+-n}(U_h) in U_g, h^{+-n}(U_g) in U_h, all via exact
// S-procedure positive-semidefiniteness certificates.
bool verify_ping_pong(const TorusAut& g, const TorusAut& h,
                      const PingPongCertificate& cert);

// Searches for a certificate with power at most n_max; absence is a valid
// result (commuting or coinciding dynamics obstruct disjoint cones).
std::optional<PingPongCertificate> ping_pong_certificate(const TorusAut& g,
                                                         const TorusAut& h,
                                                         int n_max = 10);

// ---- joint eigenrays over number fields ----

// Joint eigenvector of the transposed generator matrices together with the
// per-generator eigenvalues; entries live in Q[x]/(min_poly) (field null
// means everything is rational).
struct JointRay {
  std::shared_ptr<NumberField> field;  // null for the rational case
  std::vector<NFElem> vec;             // common eigenvector of all A_g^T
  std::vector<NFElem> eigenvalues;     // one per generator
};

// All joint eigenrays of a commuting family of real integer matrices,
// grouped per irreducible factor of the leading generator's char poly.
std::vector<JointRay> joint_eigenrays(const std::vector<RatMat>& mats);

struct CommonEigenray {
  JointRay ray;
  int root_index = 0;  // which real embedding realizes the ray
  // rank-one PSD class omega(v v^T) at that embedding, rendered to rational
  // coordinates only in reports; characters are certified intervals
  std::vector<RatInterval> characters;  // lambda_g^2 per generator
  bool exact_rational = false;
};

// Common eigenray in the PSD-Hermitian (1,1) cone. For the identity group
// returns the standard Kahler ray by convention. Non-commuting input takes
// the rational-eigenvalue triangularization path and otherwise reports
// "unsupported".
CommonEigenray common_eigenray(const MatrixGroup& g);

// ---- invariant chain, characters, phi ----

struct ChainLevel {
  int ray_index = 0;        // index into the ray pool
  int root_index = 0;       // embedding choice for this level
  std::vector<RatInterval> characters;  // chi_p(g_j) for this level p
};

struct InvariantChain {
  // ray pool: distinct (factor, embedding) pairs in use, one axis each
  std::vector<JointRay> rays;
  std::shared_ptr<TensorRing> ring;     // one axis per chain level
  std::vector<ChainLevel> levels;       // levels 1..k-1
  // Theta_p as classes with tensor-ring coefficients (index p-1)
  std::vector<BasisClass<TensorElem>> thetas;
  // eigenvalue of generator j at level t, as an element of the level field
  std::vector<std::vector<NFElem>> level_eigenvalues;  // [level][generator]
};

// Builds Theta_0 = 1, Theta_p = Theta_{p-1} ^ L_p with L_p a common
// eigenray, verifying g*(Theta_p) = chi_p(g) Theta_p exactly in the tensor
// ring and Theta_p != 0 by certified evaluation at the chosen embeddings.
InvariantChain invariant_chain(const MatrixGroup& g, int word_cap = 3);

struct PhiVector {
  Word word;
  std::vector<RatInterval> coords;  // (log chi_1, .., log chi_{k-1})
  bool exactly_zero = false;        // all level eigenvalues satisfy l^2 = 1
};

struct PhiImage {
  std::vector<PhiVector> vectors;   // all reduced words up to the cap
  int rank = 0;
  bool rank_certified = false;
  RatInterval discreteness_margin;  // min ||phi(w)|| over words with phi != 0
};

PhiImage phi_map(const MatrixGroup& g, const InvariantChain& chain, int word_cap = 3);

struct RankBoundCheck {
  int rank = 0;
  int bound = 0;       // k - 1
  bool certified = false;
  bool within_bound = false;
};

// rank of the phi image against the k-1 dimension bound
RankBoundCheck rank_bound_check(const MatrixGroup& g, const InvariantChain& chain,
                                int word_cap = 3);

struct PhiBoundCheck {
  Word word;
  RatInterval phi_norm;
  RatInterval half_log_dk1;
  bool holds = false;
  bool equality_case = false;  // 0 >= 0 for zero-entropy words
};

std::vector<PhiBoundCheck> phi_bound_check(const MatrixGroup& g,
                                           const InvariantChain& chain, int word_cap = 3);

struct KernelCheckRow {
  Word word;
  bool phi_zero = false;         // exact: all level eigenvalues have l^2 = 1
  bool positive_entropy = false; // exact cyclotomic test
  bool consistent = false;       // phi_zero <=> !positive_entropy
};

std::vector<KernelCheckRow> zero_entropy_kernel_check(const MatrixGroup& g,
                                                      const InvariantChain& chain,
                                                      int word_cap = 3);

// ---- full analysis pipeline (CLI `group analyze`) ----

struct GroupAnalysis {
  bool commuting = false;
  SolvabilityReport solvability;
  std::optional<PingPongCertificate> ping_pong;  // attached when found
  EntropyAudit entropy_audit;
  bool chain_built = false;
  std::string chain_error;
  int phi_rank = 0;
  bool rank_certified = false;
  bool rank_saturates = false;     // rank == k-1
  bool phi_bound_all_hold = false;
  bool kernel_all_consistent = false;
  int word_cap = 3;
  std::vector<PhiVector> phi_vectors;
  std::vector<PhiBoundCheck> bound_checks;
  std::vector<KernelCheckRow> kernel_rows;
  RatInterval discreteness_margin;
};

GroupAnalysis analyze_group(const MatrixGroup& g, int word_cap = 3);

}  // namespace cohomdyn
