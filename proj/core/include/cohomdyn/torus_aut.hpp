#pragma once

#include "cohomdyn/cohomology.hpp"
#include "cohomdyn/matrix.hpp"

namespace cohomdyn {

// Lattice-preserving automorphism of the torus model, given by a square
// Gaussian-integer matrix with unit determinant (det in {1,-1,i,-i}).
//
// Conventions (fixed once, everything downstream relies on them):
//  * pullback on 1-forms: f*(dz_a) = sum_b A_ab dz_b (row convention);
//  * action_on_Hpq(f,p,q) = ext_p(A) (x) conj(ext_q(A)), the matrix acting
//    on coefficient row vectors in the lexicographic dz_I ^ dzbar_J basis;
//  * compose(f,g) applies f first, then g, so that
//    action_on_Hpq(compose(f,g)) = action_on_Hpq(g) * action_on_Hpq(f).
struct TorusAut {
  TorusModel model;
  GaussMat A;

  TorusAut(TorusModel m, GaussMat a);

  bool is_identity() const { return A.is_identity(); }
  GaussRat det() const { return det_field(A); }
};

TorusAut compose(const TorusAut& f, const TorusAut& g);
TorusAut inverse(const TorusAut& f);
TorusAut power(const TorusAut& f, long n);
TorusAut identity_aut(const TorusModel& m);

// matrix of f* on H^{p,q} (see conventions above)
GaussMat action_on_Hpq(const TorusAut& f, int p, int q);

// pullback of a cohomology class
CohomClass pullback(const TorusAut& f, const CohomClass& c);

// matrix of f* on H^{1,1}(X,R) in the real_basis_H11 basis, acting on
// coordinate columns: coords(f* c) = T * coords(c); entries are rational
// because f* preserves the real structure
RatMat h11_real_action(const TorusAut& f);

// exact Hermitian-form transport: f* omega(H) = omega(A^T H conj(A))
GaussMat pullback_hermitian(const TorusAut& f, const GaussMat& h);

}  // namespace cohomdyn
