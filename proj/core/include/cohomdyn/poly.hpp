#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cohomdyn/rational.hpp"

namespace cohomdyn {

// Dense univariate polynomial, coefficients ordered low to high.
// Invariant: no trailing zero coefficient (the zero polynomial is empty).
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { normalize(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }

  void normalize() {
    while (!c.empty() && is_zero_scalar(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const T& lead() const { return c.back(); }
  T coeff(int i) const {
    return (i >= 0 && i < (int)c.size()) ? c[i] : T(0);
  }

  T eval(const T& x) const {
    T v(0);
    for (int i = degree(); i >= 0; --i) v = v * x + c[i];
    return v;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<T> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T((long)i);
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const T& s) {
    Poly r = a;
    for (auto& v : r.c) v = v * s;
    r.normalize();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

  // shift by x^m
  Poly shifted(int m) const {
    if (is_zero()) return Poly();
    std::vector<T> r(c.size() + m, T(0));
    for (size_t i = 0; i < c.size(); ++i) r[i + m] = c[i];
    return Poly(std::move(r));
  }
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;
using GaussPoly = Poly<GaussRat>;

// ---- field-coefficient division (T must be a field) ----
template <class T>
std::pair<Poly<T>, Poly<T>> divrem_field(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  Poly<T> r = a;
  std::vector<T> q(std::max<int>(a.degree() - b.degree() + 1, 0), T(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    T f = r.lead() / b.lead();
    int d = r.degree() - b.degree();
    q[d] = f;
    for (int i = 0; i <= b.degree(); ++i) r.c[i + d] -= f * b.c[i];
    r.normalize();
  }
  return {Poly<T>(std::move(q)), r};
}

// ---- integer polynomial utilities ----

Int poly_content(const IntPoly& p);              // >= 0, 0 only for zero poly
IntPoly poly_primitive(const IntPoly& p);        // sign-preserving
IntPoly int_poly_mul_pow_x(const IntPoly& p, int m);

// exact division; nullopt if b does not divide a
std::optional<IntPoly> poly_divide_exact(const IntPoly& a, const IntPoly& b);

IntPoly poly_gcd(IntPoly a, IntPoly b);          // primitive, positive leading
IntPoly squarefree_part(const IntPoly& p);

// sign of p(a/b), b > 0, exact
int sign_at(const IntPoly& p, const Rat& x);

// 1 + max |c_i| / |lead|; every complex root has modulus < this
Rat cauchy_root_bound(const IntPoly& p);

// Sturm chain of the squarefree part; counts distinct real roots.
struct SturmChain {
  IntPoly squarefree;
  std::vector<IntPoly> chain;

  explicit SturmChain(const IntPoly& p);
  int variations_at(const Rat& x) const;
  int variations_at_pos_inf() const;
  int variations_at_neg_inf() const;
  // number of distinct real roots in (a, b]
  int count_roots(const Rat& a, const Rat& b) const;
  int count_real_roots() const;
};

// Disjoint enclosures [lo, hi] of every distinct real root, ascending.
// Exact rational roots come back as degenerate intervals.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const IntPoly& p);

// Shrinks an isolating interval until hi - lo <= width (or an exact hit).
std::pair<Rat, Rat> refine_root(const SturmChain& sc, Rat lo, Rat hi, const Rat& width);

// Enclosure of the largest real root with hi - lo <= rel_width * |root|.
// Requires at least one real root.
std::pair<Rat, Rat> largest_real_root(const IntPoly& p, const Rat& rel_width);

// ---- cyclotomic machinery (Kronecker exactness test) ----

long euler_phi(long d);
const IntPoly& cyclotomic_poly(long d);

struct UnitCircleTest {
  bool applies = false;        // p monic with integer coefficients
  bool is_product = false;     // p = x^m * (product of cyclotomics)
  int power_of_x = 0;
  bool radius_exactly_one = false;  // some cyclotomic factor present
  bool radius_exactly_zero = false; // p = x^n
};

// Decides whether a monic integer polynomial has all roots on or inside the
// unit circle; by Kronecker's theorem that happens exactly when it is
// x^m times a product of cyclotomic polynomials.
UnitCircleTest unit_circle_test(const IntPoly& p);

// ---- conversions ----

// clears denominators; returns primitive integer polynomial with positive
// leading coefficient times nothing (content dropped); sign preserved.
IntPoly rat_poly_to_primitive_int(const RatPoly& p);

RatPoly int_poly_to_rat(const IntPoly& p);

// requires every coefficient real; PreconditionError otherwise
RatPoly gauss_poly_to_rat(const GaussPoly& p);

GaussPoly conj_poly(const GaussPoly& p);

// Lagrange interpolation through (x_i, y_i), exact.
GaussPoly interpolate(const std::vector<Rat>& xs, const std::vector<GaussRat>& ys);

}  // namespace cohomdyn
