#include "cohomdyn/hodge.hpp"

namespace cohomdyn {

Rat q_omega(const TorusModel& m, const CohomClass& omega, const CohomClass& a,
            const CohomClass& b) {
  return -integrate(m, wedge(wedge(a, b), omega));
}

HRForm q_form(const TorusModel& m, const std::vector<CohomClass>& c_list) {
  if ((int)c_list.size() != m.k - 2)
    throw PreconditionError("q_form: expected k-2 classes");
  CohomClass omega = one_class(m);
  for (const auto& c : c_list) {
    if (c.p != 1 || c.q != 1 || !is_real_class(c))
      throw PreconditionError("q_form: factors must be real (1,1)-classes");
    omega = wedge(omega, c);
  }
  auto basis = real_basis_H11(m);
  int n = (int)basis.size();
  RatMat gram(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      Rat val = q_omega(m, omega, basis[u], basis[v]);
      gram(u, v) = gram(v, u) = val;
    }
  return {omega, gram};
}

PrimitiveSubspace primitive_subspace(const TorusModel& m, const CohomClass& omega_prime) {
  auto basis = real_basis_H11(m);
  int n = (int)basis.size();
  RatMat functional(1, n);
  bool nonzero = false;
  for (int u = 0; u < n; ++u) {
    functional(0, u) = integrate(m, wedge(basis[u], omega_prime));
    if (functional(0, u) != 0) nonzero = true;
  }
  if (!nonzero)
    throw PreconditionError("primitive_subspace: Omega' pairs to zero with all of H^{1,1}");
  PrimitiveSubspace out;
  out.omega_prime = omega_prime;
  out.basis = null_space(functional);
  return out;
}

RatMat restrict_gram(const RatMat& gram, const std::vector<std::vector<Rat>>& basis) {
  int d = (int)basis.size();
  int n = gram.rows;
  RatMat b(n, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = basis[j][i];
  return b.transpose() * gram * b;
}

SignatureVerdict signature_check(const TorusModel& m,
                                 const std::vector<CohomClass>& c_list) {
  if ((int)c_list.size() != m.k - 1)
    throw PreconditionError("signature_check: expected k-1 Kahler classes");
  std::vector<CohomClass> head(c_list.begin(), c_list.end() - 1);
  HRForm form = q_form(m, head);
  SignatureVerdict v;
  v.full = signature(form.gram);
  CohomClass omega_prime = wedge(form.omega, c_list.back());
  auto prim = primitive_subspace(m, omega_prime);
  v.primitive = signature(restrict_gram(form.gram, prim.basis));
  int h11 = m.k * m.k;
  v.ok = v.full == Inertia{h11 - 1, 1, 0} &&
         v.primitive == Inertia{h11 - 1, 0, 0};
  return v;
}

InequalityVerdict hr_inequality(const TorusModel& m,
                                const std::vector<CohomClass>& c_list,
                                const CohomClass& alpha, const CohomClass& beta) {
  if ((int)c_list.size() != m.k - 2)
    throw PreconditionError("hr_inequality: expected k-2 classes");
  CohomClass omega = one_class(m);
  for (const auto& c : c_list) omega = wedge(omega, c);
  InequalityVerdict v;
  v.qaa = q_omega(m, omega, alpha, alpha);
  v.qab = q_omega(m, omega, alpha, beta);
  v.qbb = q_omega(m, omega, beta, beta);
  Rat lhs = abs(v.qaa) * abs(v.qbb);
  Rat rhs = v.qab * v.qab;
  v.holds = lhs <= rhs;
  v.equality = lhs == rhs;
  return v;
}

WhrTupleResult whr_check_tuple(const TorusModel& m, const CohomClass& theta,
                               const std::vector<CohomClass>& c_list) {
  int p = theta.p;
  if (theta.q != p || p > m.k - 2)
    throw PreconditionError("whr: Theta must be a (p,p)-class with p <= k-2");
  if (theta.is_zero()) throw PreconditionError("whr: Theta = 0 is degenerate");
  if ((int)c_list.size() != m.k - p - 1)
    throw PreconditionError("whr: expected k-p-1 classes");
  CohomClass omega = theta;
  for (size_t i = 0; i + 1 < c_list.size(); ++i) omega = wedge(omega, c_list[i]);
  CohomClass omega_prime = wedge(omega, c_list.back());
  WhrTupleResult r;
  auto basis = real_basis_H11(m);
  int n = (int)basis.size();
  RatMat functional(1, n);
  bool nonzero = false;
  for (int u = 0; u < n; ++u) {
    functional(0, u) = integrate(m, wedge(basis[u], omega_prime));
    if (functional(0, u) != 0) nonzero = true;
  }
  if (!nonzero) {
    r.skipped = true;  // vacuous tuple: Omega' = 0
    return r;
  }
  RatMat gram(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) gram(u, v) = gram(v, u) = q_omega(m, omega, basis[u], basis[v]);
  auto kernel = null_space(functional);
  r.restricted = signature(restrict_gram(gram, kernel));
  r.semipositive = r.restricted.n_minus == 0;
  return r;
}

WhrVerdict whr_verify(const TorusModel& m, const std::vector<CohomClass>& theta_factors,
                      int trials, unsigned long seed) {
  CohomClass theta = one_class(m);
  for (const auto& f : theta_factors) theta = wedge(theta, f);
  if (theta.is_zero()) throw PreconditionError("whr_verify: Theta = 0 is degenerate");
  WhrVerdict v;
  for (int t = 0; t < trials; ++t) {
    // deterministic seed-per-trial scheme
    std::mt19937_64 rng(seed + 1000003UL * (unsigned long)t);
    std::vector<CohomClass> cs;
    for (int i = 0; i < m.k - theta.p - 1; ++i)
      cs.push_back(kahler_class(m, random_kahler_form(m.k, rng)));
    auto res = whr_check_tuple(m, theta, cs);
    ++v.trials;
    if (res.skipped) {
      ++v.skipped;
      continue;
    }
    if (!res.semipositive) v.all_semipositive = false;
  }
  return v;
}

DegeneracyWitness hr_degeneracy(const TorusModel& m, const CohomClass& theta,
                                const CohomClass& l1, const CohomClass& l2) {
  if (!wedge(wedge(theta, l1), l2).is_zero())
    throw PreconditionError("hr_degeneracy: Theta ^ L1 ^ L2 != 0");
  if (!wedge(wedge(theta, l1), l1).is_zero() ||
      !wedge(wedge(theta, l2), l2).is_zero())
    throw CertificationError("hr_degeneracy: a square Theta ^ L_j^2 is nonzero");
  // linear system for Theta ^ (t1 L1 + t2 L2) ~_n 0 over the monomial basis
  int p1 = theta.p + 1;
  int need = m.k - p1;
  auto mono = monomial_basis_H11(m);
  CohomClass tl1 = wedge(theta, l1);
  CohomClass tl2 = wedge(theta, l2);
  std::vector<std::array<GaussRat, 2>> rows;
  for (const auto& pick : multisets((int)mono.size(), need)) {
    CohomClass acc1 = tl1, acc2 = tl2;
    for (int idx : pick) {
      acc1 = wedge(acc1, mono[idx]);
      acc2 = wedge(acc2, mono[idx]);
    }
    rows.push_back({integrate_complex(m, acc1), integrate_complex(m, acc2)});
  }
  GaussMat sys((int)rows.size(), 2);
  for (size_t i = 0; i < rows.size(); ++i) {
    sys((int)i, 0) = rows[i][0];
    sys((int)i, 1) = rows[i][1];
  }
  auto kernel = null_space(sys);
  if (kernel.empty())
    throw CertificationError("hr_degeneracy: no nontrivial witness exists");
  // normalize to coprime integers, first nonzero coordinate positive
  GaussRat a = kernel[0][0], b = kernel[0][1];
  if (a.im != 0 || b.im != 0)
    throw CertificationError("hr_degeneracy: non-real witness from real data");
  Rat ra = a.re, rb = b.re;
  Int l = lcm(ra.get_den(), rb.get_den());
  Int na = ra.get_num() * (l / ra.get_den());
  Int nb = rb.get_num() * (l / rb.get_den());
  Int g = gcd(na, nb);
  if (g != 0) {
    na /= g;
    nb /= g;
  }
  if (na < 0 || (na == 0 && nb < 0)) {
    na = -na;
    nb = -nb;
  }
  return {Rat(na), Rat(nb)};
}

HermitianForm random_kahler_form(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-3, 3);
  GaussMat b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b(i, j) = GaussRat(Rat(d(rng)), Rat(d(rng)));
  GaussMat h = b.conjugate().transpose() * b + GaussMat::identity(k);
  return HermitianForm(h);
}

HermitianForm random_psd_form(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-3, 3);
  int r = 1 + (int)(rng() % k);
  GaussMat b(r, k);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) b(i, j) = GaussRat(Rat(d(rng)), Rat(d(rng)));
  GaussMat h = b.conjugate().transpose() * b;
  return HermitianForm(h);
}

}  // namespace cohomdyn
