#pragma once

#include <random>

#include "cohomdyn/cohomology.hpp"
#include "cohomdyn/torus_aut.hpp"

namespace cohomdyn {

// Quadratic form Q_Omega(a,b) = -int a ^ b ^ Omega on H^{1,1}(X,R),
// assembled exactly on the real_basis_H11 basis.
struct HRForm {
  CohomClass omega;  // (k-2, k-2) real class
  RatMat gram;       // symmetric, k^2 x k^2
};

// Hyperplane P_{Omega'} = { a in H^{1,1}(X,R) : a ^ Omega' = 0 } with a
// rational coordinate basis.
struct PrimitiveSubspace {
  CohomClass omega_prime;               // (k-1, k-1) real class
  std::vector<std::vector<Rat>> basis;  // coordinate vectors, dim = k^2 - 1
};

Rat q_omega(const TorusModel& m, const CohomClass& omega, const CohomClass& a,
            const CohomClass& b);

// Omega := c_1 ^ ... ^ c_{k-2} (empty product = 1 for k = 2)
HRForm q_form(const TorusModel& m, const std::vector<CohomClass>& c_list);

// Requires Omega' != 0 as a linear functional on H^{1,1}.
PrimitiveSubspace primitive_subspace(const TorusModel& m, const CohomClass& omega_prime);

// gram of Q restricted to the subspace: B^T G B
RatMat restrict_gram(const RatMat& gram, const std::vector<std::vector<Rat>>& basis);

struct SignatureVerdict {
  Inertia full;           // expected (k^2 - 1, 1, 0)
  Inertia primitive;      // expected (k^2 - 1, 0, 0)
  bool ok = false;
};

// Verifies signature (h^{1,1}-1, 1) of Q_Omega and positive definiteness on
// P_{Omega'} for Kahler input classes c_1..c_{k-1}.
SignatureVerdict signature_check(const TorusModel& m, const std::vector<CohomClass>& c_list);

struct InequalityVerdict {
  Rat qaa, qab, qbb;
  bool holds = false;
  bool equality = false;
};

// |Q(a,a)||Q(b,b)| <= |Q(a,b)|^2, exact rational arithmetic.
InequalityVerdict hr_inequality(const TorusModel& m, const std::vector<CohomClass>& c_list,
                                const CohomClass& alpha, const CohomClass& beta);

struct WhrTupleResult {
  bool skipped = false;    // Omega' vanished (vacuous tuple)
  bool semipositive = false;
  Inertia restricted;
};

// One tuple of the wHR check: Q_Omega with Omega = Theta ^ c_1..c_{k-p-2}
// must be positive semidefinite on P_{Omega ^ c_{k-p-1}}.
WhrTupleResult whr_check_tuple(const TorusModel& m, const CohomClass& theta,
                               const std::vector<CohomClass>& c_list);

struct WhrVerdict {
  int trials = 0;
  int skipped = 0;
  bool all_semipositive = true;
};

// Samples `trials` random Kahler tuples deterministically from `seed`.
WhrVerdict whr_verify(const TorusModel& m, const std::vector<CohomClass>& theta_factors,
                      int trials, unsigned long seed);

struct DegeneracyWitness {
  Rat t1, t2;  // Theta ^ (t1 L1 + t2 L2) numerically trivial, (t1,t2) != 0
};

// Proposition-style degeneracy: given Theta ^ L1 ^ L2 = 0 exactly (checked),
// asserts Theta ^ L1^2 = Theta ^ L2^2 = 0 and returns the witness pair,
// normalized to coprime integers with positive first nonzero entry.
DegeneracyWitness hr_degeneracy(const TorusModel& m, const CohomClass& theta,
                                const CohomClass& l1, const CohomClass& l2);

// deterministic random Kahler form H = B^H B + I with Gaussian-integer B
HermitianForm random_kahler_form(int k, std::mt19937_64& rng);
// random PSD (possibly singular) Hermitian form B^H B with r x k factor
HermitianForm random_psd_form(int k, std::mt19937_64& rng);

}  // namespace cohomdyn
