#include "cohomdyn/cohomology.hpp"

#include <functional>

namespace cohomdyn {

CohomClass one_class(const TorusModel& m) {
  CohomClass c(m.k, 0, 0);
  c.add_term({}, {}, GaussRat(Rat(1)));
  return c;
}

GaussRat volume_coefficient(int k) {
  TorusModel m(k);
  CohomClass acc = one_class(m);
  GaussRat half_i = gauss_i() * GaussRat(make_rat(1, 2));
  for (int a = 0; a < k; ++a) {
    CohomClass f(k, 1, 1);
    f.add_term({a}, {a}, half_i);
    acc = wedge(acc, f);
  }
  IndexSet full(k);
  for (int i = 0; i < k; ++i) full[i] = i;
  return acc.coeff(full, full);
}

GaussRat integrate_complex(const TorusModel& m, const CohomClass& top) {
  if (top.p != m.k || top.q != m.k)
    throw PreconditionError("integrate: class is not of top bidegree (k,k)");
  IndexSet full(m.k);
  for (int i = 0; i < m.k; ++i) full[i] = i;
  static std::map<int, GaussRat> vols;
  auto it = vols.find(m.k);
  if (it == vols.end()) it = vols.emplace(m.k, volume_coefficient(m.k)).first;
  return top.coeff(full, full) / it->second;
}

Rat integrate(const TorusModel& m, const CohomClass& top) {
  GaussRat v = integrate_complex(m, top);
  if (v.im != 0) throw PreconditionError("integrate: non-real integral");
  return v.re;
}

HermitianForm::HermitianForm(GaussMat h) : H(std::move(h)) {
  if (!H.is_square()) throw PreconditionError("Hermitian form: non-square matrix");
  for (int i = 0; i < H.rows; ++i)
    for (int j = i; j < H.cols; ++j)
      if (!(H(i, j) == H(j, i).conj()))
        throw PreconditionError("Hermitian form: H != conjugate-transpose(H)");
}

CohomClass form_class(const TorusModel& m, const HermitianForm& h) {
  if (h.dim() != m.k) throw PreconditionError("Hermitian form dimension != k");
  CohomClass c(m.k, 1, 1);
  GaussRat half_i = gauss_i() * GaussRat(make_rat(1, 2));
  for (int a = 0; a < m.k; ++a)
    for (int b = 0; b < m.k; ++b) c.add_term({a}, {b}, half_i * h.H(a, b));
  return c;
}

CohomClass kahler_class(const TorusModel& m, const HermitianForm& h) {
  if (!h.positive_definite())
    throw PreconditionError("kahler_class: form is not positive definite");
  return form_class(m, h);
}

CohomClass nef_class(const TorusModel& m, const HermitianForm& h) {
  if (!h.positive_semidefinite())
    throw PreconditionError("nef_class: form is not positive semidefinite");
  return form_class(m, h);
}

CohomClass standard_kahler(const TorusModel& m) {
  return form_class(m, HermitianForm(GaussMat::identity(m.k)));
}

std::vector<CohomClass> monomial_basis_H11(const TorusModel& m) {
  std::vector<CohomClass> out;
  for (int a = 0; a < m.k; ++a)
    for (int b = 0; b < m.k; ++b) {
      CohomClass c(m.k, 1, 1);
      c.add_term({a}, {b}, GaussRat(Rat(1)));
      out.push_back(std::move(c));
    }
  return out;
}

std::vector<CohomClass> real_basis_H11(const TorusModel& m) {
  std::vector<CohomClass> out;
  GaussRat half_i = gauss_i() * GaussRat(make_rat(1, 2));
  GaussRat half(make_rat(1, 2));
  for (int a = 0; a < m.k; ++a) {
    CohomClass c(m.k, 1, 1);
    c.add_term({a}, {a}, half_i);
    out.push_back(std::move(c));
  }
  for (int a = 0; a < m.k; ++a)
    for (int b = a + 1; b < m.k; ++b) {
      CohomClass c(m.k, 1, 1);
      c.add_term({a}, {b}, half_i);
      c.add_term({b}, {a}, half_i);
      out.push_back(std::move(c));
    }
  for (int a = 0; a < m.k; ++a)
    for (int b = a + 1; b < m.k; ++b) {
      CohomClass c(m.k, 1, 1);
      c.add_term({a}, {b}, half);
      c.add_term({b}, {a}, -half);
      out.push_back(std::move(c));
    }
  return out;
}

std::vector<Rat> real_h11_coordinates(const TorusModel& m, const CohomClass& c) {
  if (c.p != 1 || c.q != 1) throw PreconditionError("not a (1,1)-class");
  if (!is_real_class(c)) throw PreconditionError("not a real class");
  // invert the basis relations entry by entry: with c = sum z_ab dz_a^dzbar_b,
  // diag: z_aa = (i/2) x_a; pair a<b: z_ab = (i/2)s + (1/2)t, z_ba = (i/2)s - (1/2)t
  int k = m.k;
  std::vector<Rat> coords(static_cast<size_t>(k) * k, Rat(0));
  GaussRat two_over_i = GaussRat(Rat(0), Rat(-2));  // 2/i = -2i
  int idx_sym = k;
  int idx_asym = k + (k * (k - 1)) / 2;
  int t = 0;
  for (int a = 0; a < k; ++a) {
    GaussRat xa = c.coeff({a}, {a}) * two_over_i;
    if (xa.im != 0) throw PreconditionError("class is not real on the diagonal");
    coords[a] = xa.re;
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      GaussRat zab = c.coeff({a}, {b});
      GaussRat zba = c.coeff({b}, {a});
      GaussRat s = (zab + zba) * two_over_i * GaussRat(make_rat(1, 2));
      GaussRat tt = zab - zba;
      if (s.im != 0 || tt.im != 0)
        throw PreconditionError("class is not real off the diagonal");
      coords[idx_sym + t] = s.re;
      coords[idx_asym + t] = tt.re;
      ++t;
    }
  return coords;
}

CohomClass class_from_real_h11(const TorusModel& m, const std::vector<Rat>& coords) {
  auto basis = real_basis_H11(m);
  if (coords.size() != basis.size())
    throw PreconditionError("coordinate count != h^{1,1}");
  CohomClass c(m.k, 1, 1);
  for (size_t i = 0; i < basis.size(); ++i) c = c + basis[i] * GaussRat(coords[i]);
  return c;
}

std::vector<std::vector<int>> multisets(int n, int size) {
  std::vector<std::vector<int>> out;
  if (size == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if ((int)cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

bool is_numerically_equiv(const TorusModel& m, const CohomClass& a, const CohomClass& b) {
  if (a.p != b.p || a.q != b.q || a.p != a.q)
    throw PreconditionError("numerical equivalence needs equal (p,p) bidegrees");
  if (!is_real_class(a) || !is_real_class(b))
    throw PreconditionError("numerical equivalence needs real classes");
  CohomClass d = a - b;
  if (d.is_zero()) return true;
  int need = m.k - a.p;
  auto mono = monomial_basis_H11(m);
  for (const auto& pick : multisets((int)mono.size(), need)) {
    CohomClass acc = d;
    for (int idx : pick) acc = wedge(acc, mono[idx]);
    if (!integrate_complex(m, acc).is_zero()) return false;
  }
  return true;
}

}  // namespace cohomdyn
