#include "cohomdyn/torus_aut.hpp"

namespace cohomdyn {

TorusAut::TorusAut(TorusModel m, GaussMat a) : model(m), A(std::move(a)) {
  if (!A.is_square() || A.rows != model.k)
    throw PreconditionError("TorusAut: matrix must be k x k");
  for (const auto& v : A.a)
    if (!v.is_gauss_int())
      throw PreconditionError("TorusAut: entries must be Gaussian integers");
  GaussRat d = det_field(A);
  bool unit = (d == GaussRat(Rat(1))) || (d == GaussRat(Rat(-1))) ||
              (d == gauss_i()) || (d == -gauss_i());
  if (!unit)
    throw PreconditionError(
        "not an automorphism: determinant is not a Gaussian unit");
}

TorusAut compose(const TorusAut& f, const TorusAut& g) {
  if (!(f.model == g.model)) throw PreconditionError("compose: model mismatch");
  return TorusAut(f.model, g.A * f.A);
}

TorusAut inverse(const TorusAut& f) {
  return TorusAut(f.model, inverse_field(f.A));
}

TorusAut identity_aut(const TorusModel& m) {
  return TorusAut(m, GaussMat::identity(m.k));
}

TorusAut power(const TorusAut& f, long n) {
  if (n < 0) return power(inverse(f), -n);
  TorusAut acc = identity_aut(f.model);
  TorusAut base = f;
  while (n > 0) {
    if (n & 1) acc = TorusAut(f.model, acc.A * base.A);
    n >>= 1;
    if (n) base = TorusAut(f.model, base.A * base.A);
  }
  return acc;
}

GaussMat action_on_Hpq(const TorusAut& f, int p, int q) {
  int k = f.model.k;
  if (p < 0 || q < 0 || p > k || q > k)
    throw PreconditionError("action_on_Hpq: bidegree out of range");
  return kronecker(exterior_power(f.A, p), exterior_power(f.A, q).conjugate());
}

CohomClass pullback(const TorusAut& f, const CohomClass& c) {
  if (f.model.k != c.k) throw PreconditionError("pullback: model mismatch");
  int k = c.k;
  auto sets_p = combinations(k, c.p);
  auto sets_q = combinations(k, c.q);
  GaussMat ep = exterior_power(f.A, c.p);
  GaussMat eq = exterior_power(f.A, c.q);
  CohomClass out(k, c.p, c.q);
  for (const auto& [key, v] : c.terms) {
    int ri = lex_rank(key.first, k);
    int rj = lex_rank(key.second, k);
    for (size_t i2 = 0; i2 < sets_p.size(); ++i2) {
      const GaussRat& mi = ep(ri, (int)i2);
      if (mi.is_zero()) continue;
      for (size_t j2 = 0; j2 < sets_q.size(); ++j2) {
        const GaussRat& mj = eq(rj, (int)j2);
        if (mj.is_zero()) continue;
        out.add_term(sets_p[i2], sets_q[j2], v * mi * mj.conj());
      }
    }
  }
  return out;
}

RatMat h11_real_action(const TorusAut& f) {
  auto basis = real_basis_H11(f.model);
  int n = (int)basis.size();
  RatMat t(n, n);
  for (int j = 0; j < n; ++j) {
    CohomClass image = pullback(f, basis[j]);
    auto coords = real_h11_coordinates(f.model, image);
    for (int i = 0; i < n; ++i) t(i, j) = coords[i];
  }
  return t;
}

GaussMat pullback_hermitian(const TorusAut& f, const GaussMat& h) {
  return f.A.transpose() * h * f.A.conjugate();
}

}  // namespace cohomdyn
