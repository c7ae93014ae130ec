#pragma once

#include "cohomdyn/interval.hpp"
#include "cohomdyn/matrix.hpp"
#include "cohomdyn/poly.hpp"

namespace cohomdyn {

// Certified enclosure of a spectral radius. The true radius always lies in
// [lo, hi]; exactly_one is only set when the Kronecker cyclotomic test
// proves the radius equals 1 (no tolerance involved).
struct RadiusBound {
  RatInterval enclosure;
  bool exactly_one = false;
  bool exact = false;  // lo == hi (radius is a known rational)

  double value() const { return rat_to_double(enclosure.mid()); }
  double abs_error() const { return rat_to_double(enclosure.width() / 2); }

  static RadiusBound exact_value(const Rat& v, bool is_one) {
    RadiusBound b;
    b.enclosure = RatInterval(v);
    b.exactly_one = is_one;
    b.exact = true;
    return b;
  }
};

struct RadiusOptions {
  // enclosure width <= rel_tol * radius (default 10^-12)
  Rat rel_tol = make_rat(Int(1), Int(1000000000000L));
  int sqrt_bits = 96;
};

// Polynomial with integer coefficients whose roots are the pairwise
// products lambda_i * conj(lambda_j) of the roots of p; its largest real
// root is the squared max root modulus. Computed as the resultant
// Res_x(p(x), x^n conj(p)(y/x)) by exact evaluation/interpolation.
IntPoly squared_modulus_poly(const GaussPoly& p);

// Certified spectral radius of the roots of a monic-ish polynomial over
// the Gaussian rationals (characteristic polynomials in practice).
RadiusBound poly_spectral_radius(const GaussPoly& p, const RadiusOptions& opt = {});

RadiusBound spectral_radius(const GaussMat& m, const RadiusOptions& opt = {});
RadiusBound spectral_radius(const RatMat& m, const RadiusOptions& opt = {});

// interval product (used for Kronecker-factored cohomology actions)
RadiusBound radius_product(const RadiusBound& a, const RadiusBound& b);

// char poly as an integer polynomial when all coefficients are integers
std::optional<IntPoly> char_poly_int(const RatMat& m);

// For a Gaussian-integer matrix: the real integer polynomial p * conj(p)
// (equal to p itself when p is real). Carries the full Kronecker test.
std::optional<IntPoly> real_int_charpoly_square(const GaussPoly& p);

}  // namespace cohomdyn
