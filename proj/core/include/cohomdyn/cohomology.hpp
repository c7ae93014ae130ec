#pragma once

#include <map>

#include "cohomdyn/matrix.hpp"
#include "cohomdyn/rational.hpp"

namespace cohomdyn {

// Complex torus C^k / (Z^k + iZ^k); h^{p,q} = C(k,p) C(k,q).
struct TorusModel {
  int k = 1;

  explicit TorusModel(int dim = 1) : k(dim) {
    if (k < 1 || k > 6) throw PreconditionError("TorusModel: k must be in 1..6");
  }
  long hodge_number(int p, int q) const { return binomial(k, p) * binomial(k, q); }
  friend bool operator==(const TorusModel& a, const TorusModel& b) { return a.k == b.k; }
};

// Element of the exterior algebra on dz_1..dz_k, dzbar_1..dzbar_k with
// coefficients in T, stored in split form: a term (I, J) stands for
// dz_I ^ dzbar_J with both index sets ascending and 0-based.
//
// Sign convention (worked 2x2 example in the README): wedging
// (I1,J1).(I2,J2) moves the |I2| dz factors of the second term across the
// |J1| dzbar factors of the first, contributing (-1)^{|J1| |I2|}, and then
// sorts inside each group, contributing merge_sign(I1,I2) merge_sign(J1,J2).
// E.g. ({0},{0}) ^ ({1},{1}) = - ({0,1},{0,1}): dz1 dzb1 dz2 dzb2 =
// -dz1 dz2 dzb1 dzb2.
template <class T>
struct BasisClass {
  int k = 1, p = 0, q = 0;
  std::map<std::pair<IndexSet, IndexSet>, T> terms;

  BasisClass() = default;
  BasisClass(int k_, int p_, int q_) : k(k_), p(p_), q(q_) {
    if (p < 0 || q < 0 || p > k || q > k)
      throw PreconditionError("class bidegree out of range");
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const IndexSet& I, const IndexSet& J, const T& coeff) {
    if ((int)I.size() != p || (int)J.size() != q)
      throw PreconditionError("term does not match bidegree");
    if (is_zero_scalar(coeff)) return;
    auto key = std::make_pair(I, J);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, coeff);
    } else {
      it->second += coeff;
      if (is_zero_scalar(it->second)) terms.erase(it);
    }
  }

  T coeff(const IndexSet& I, const IndexSet& J) const {
    auto it = terms.find(std::make_pair(I, J));
    return it == terms.end() ? T(0) : it->second;
  }

  BasisClass operator-() const {
    BasisClass r = *this;
    for (auto& [k_, v] : r.terms) v = -v;
    return r;
  }
  friend BasisClass operator+(const BasisClass& a, const BasisClass& b) {
    if (a.k != b.k || a.p != b.p || a.q != b.q)
      throw PreconditionError("class addition: degree mismatch");
    BasisClass r = a;
    for (const auto& [key, v] : b.terms) r.add_term(key.first, key.second, v);
    return r;
  }
  friend BasisClass operator-(const BasisClass& a, const BasisClass& b) { return a + (-b); }
  friend BasisClass operator*(const BasisClass& a, const T& s) {
    BasisClass r(a.k, a.p, a.q);
    if (is_zero_scalar(s)) return r;
    for (const auto& [key, v] : a.terms) r.add_term(key.first, key.second, v * s);
    return r;
  }
  friend bool operator==(const BasisClass& a, const BasisClass& b) {
    return a.k == b.k && a.p == b.p && a.q == b.q && a.terms == b.terms;
  }
};

template <class T>
BasisClass<T> wedge(const BasisClass<T>& a, const BasisClass<T>& b) {
  if (a.k != b.k) throw PreconditionError("wedge: model mismatch");
  if (a.p + b.p > a.k || a.q + b.q > a.k)
    throw PreconditionError("wedge: bidegree exceeds (k,k)");
  BasisClass<T> r(a.k, a.p + b.p, a.q + b.q);
  for (const auto& [ka, va] : a.terms)
    for (const auto& [kb, vb] : b.terms) {
      const IndexSet &I1 = ka.first, &J1 = ka.second;
      const IndexSet &I2 = kb.first, &J2 = kb.second;
      // repeated generator kills the term
      IndexSet icap, jcap;
      std::set_intersection(I1.begin(), I1.end(), I2.begin(), I2.end(),
                            std::back_inserter(icap));
      if (!icap.empty()) continue;
      std::set_intersection(J1.begin(), J1.end(), J2.begin(), J2.end(),
                            std::back_inserter(jcap));
      if (!jcap.empty()) continue;
      int s = merge_sign(I1, I2) * merge_sign(J1, J2);
      if ((J1.size() * I2.size()) % 2 == 1) s = -s;
      T c = va * vb;
      if (s < 0) c = -c;
      r.add_term(merge_sets(I1, I2), merge_sets(J1, J2), c);
    }
  return r;
}

// conjugation: (I,J) c -> (J,I) conj(c) * (-1)^{pq}
template <class T>
BasisClass<T> conj_class(const BasisClass<T>& a) {
  BasisClass<T> r(a.k, a.q, a.p);
  bool flip = (a.p * a.q) % 2 == 1;
  for (const auto& [key, v] : a.terms) {
    T c = conj_scalar(v);
    if (flip) c = -c;
    r.add_term(key.second, key.first, c);
  }
  return r;
}

// The concrete cohomology class type of the torus model.
using CohomClass = BasisClass<GaussRat>;

inline bool is_real_class(const CohomClass& a) { return conj_class(a) == a; }

// multiplicative identity in H^{0,0}
CohomClass one_class(const TorusModel& m);

// coefficient of the split-form volume term in prod_j (i/2) dz_j ^ dzbar_j
GaussRat volume_coefficient(int k);

// Integration against the unit-covolume normalization; requires bidegree
// (k,k). Complex variant returns the full Gaussian-rational value.
GaussRat integrate_complex(const TorusModel& m, const CohomClass& top);
Rat integrate(const TorusModel& m, const CohomClass& top);

// Hermitian coefficient matrix, exact symmetry checked on construction.
struct HermitianForm {
  GaussMat H;

  explicit HermitianForm(GaussMat h);
  int dim() const { return H.rows; }
  bool positive_definite() const { return is_positive_definite(H); }
  bool positive_semidefinite() const { return is_positive_semidefinite(H); }
  friend HermitianForm operator+(const HermitianForm& a, const HermitianForm& b) {
    return HermitianForm(a.H + b.H);
  }
};

// (1,1)-class  sum_{a,b} (i/2) H_ab dz_a ^ dzbar_b  of a positive definite
// Hermitian form; nef_class accepts positive semidefinite forms.
CohomClass kahler_class(const TorusModel& m, const HermitianForm& h);
CohomClass nef_class(const TorusModel& m, const HermitianForm& h);
// (1,1)-class of an arbitrary Hermitian form (real, not necessarily nef)
CohomClass form_class(const TorusModel& m, const HermitianForm& h);

// standard Kahler class omega_0 = sum_j (i/2) dz_j ^ dzbar_j
CohomClass standard_kahler(const TorusModel& m);

// the k^2 complex monomial (1,1)-classes dz_a ^ dzbar_b (spanning set used
// by the numerical-equivalence test)
std::vector<CohomClass> monomial_basis_H11(const TorusModel& m);

// ordered real basis of H^{1,1}(X,R):
//   (i/2) dz_a^dzbar_a            for a = 1..k
//   (i/2)(dz_a^dzbar_b + dz_b^dzbar_a)  for a < b
//   (1/2)(dz_a^dzbar_b - dz_b^dzbar_a)  for a < b
std::vector<CohomClass> real_basis_H11(const TorusModel& m);

// coordinates of a real (1,1)-class in real_basis_H11
std::vector<Rat> real_h11_coordinates(const TorusModel& m, const CohomClass& c);
CohomClass class_from_real_h11(const TorusModel& m, const std::vector<Rat>& coords);

// Numerical almost-equivalence: (a-b) pairs to zero against every product
// of k-p classes from a spanning set of H^{1,1}.
bool is_numerically_equiv(const TorusModel& m, const CohomClass& a, const CohomClass& b);

// all multisets of given size over {0..n-1}, lexicographic
std::vector<std::vector<int>> multisets(int n, int size);

}  // namespace cohomdyn
