#pragma once

#include <optional>

#include "cohomdyn/spectral.hpp"
#include "cohomdyn/torus_aut.hpp"

namespace cohomdyn {

// Raw cohomology actions fed directly by the user, one square rational
// matrix per H^{p,p}. Skips every torus-specific check ("unverified model").
struct RawModel {
  std::vector<RatMat> matrices;  // index p = 0..k

  int k() const { return (int)matrices.size() - 1; }
  void validate() const;
};

struct DegreeProfile {
  std::vector<RadiusBound> degrees;  // d_0..d_k
  RatInterval h_a;                   // max_p log d_p (nats)
  bool h_a_exact_zero = false;
  bool positive_entropy = false;
  bool entropy_flag_certified = true;  // false when the Kronecker test was inapplicable
  bool log_concavity_ok = true;        // no certified violation of d_p^2 >= d_{p-1} d_{p+1}
  bool unimodal_ok = true;             // rise-then-fall pattern consistent with enclosures
  std::optional<std::vector<std::vector<RadiusBound>>> rho;  // rho_{p,q} table
};

RadiusBound dynamical_degree(const TorusAut& f, int p, const RadiusOptions& opt = {});
RadiusBound dynamical_degree(const RawModel& m, int p, const RadiusOptions& opt = {});

DegreeProfile degree_profile(const TorusAut& f, bool with_rho = false,
                             const RadiusOptions& opt = {});
DegreeProfile degree_profile(const RawModel& m, const RadiusOptions& opt = {});

// exact positive-entropy decision (cyclotomic test on the H^{1,1} action)
bool is_positive_entropy(const TorusAut& f);

struct RhoCheck {
  RadiusBound rho;       // spectral radius on H^{p,q}
  RadiusBound dp, dq;    // dynamical degrees entering the bound
  bool holds = false;    // rho^2 <= d_p d_q not certifiably violated
  bool strict = false;   // certified strict inequality
};

RhoCheck rho_pq(const TorusAut& f, int p, int q, const RadiusOptions& opt = {});

struct GrowthEstimate {
  std::vector<Rat> integrals;   // exact values of (f^n)* omega^p . omega^{k-p}
  std::vector<double> roots;    // a_n = integrals[n]^(1/n)
  RadiusBound degree;           // certified d_p for comparison
  double final_rel_gap = 0.0;   // |a_nmax - d_p| / d_p
};

// Degree growth-limit sequence with exact rational intersection numbers;
// only the final n-th root is floating point.
GrowthEstimate growth_limit_estimate(const TorusAut& f, int p, const HermitianForm& h,
                                     int n_max, const RadiusOptions& opt = {});

// Automorphism preserving the linear fibration C^k -> C^l onto the first
// l coordinates: the matrix is block-lower-triangular for the splitting
// C^l (+) C^{k-l}.
struct FiberedAut {
  TorusAut f;
  int l;

  FiberedAut(TorusAut aut, int base_dim);
  TorusAut base() const;          // induced automorphism of the base C^l torus
  GaussMat fiber_block() const;   // (k-l) x (k-l) lower-right block
};

// relative dynamical degree d_p(f|pi), 0 <= p <= k-l
RadiusBound relative_degree(const FiberedAut& fa, int p, const RadiusOptions& opt = {});

struct ProductFormulaRow {
  int p = 0;
  RadiusBound direct;     // d_p(f)
  RatInterval formula;    // max_s d_s(g) d_{p-s}(f|pi)
  int argmax_s = 0;
  bool interior = false;  // max attained at 0 < s < p with both factors meaningful
  bool consistent = false;
};

std::vector<ProductFormulaRow> theorem_product_check(const FiberedAut& fa,
                                                     const RadiusOptions& opt = {});

}  // namespace cohomdyn
