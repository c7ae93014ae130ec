#include "cohomdyn/spectral.hpp"

namespace cohomdyn {

namespace {

bool poly_is_real(const GaussPoly& p) {
  for (const auto& c : p.c)
    if (c.im != 0) return false;
  return true;
}

bool poly_is_gauss_int(const GaussPoly& p) {
  for (const auto& c : p.c)
    if (!c.is_gauss_int()) return false;
  return true;
}

// Sylvester resultant Res_x(p(x), q_y(x)) where
// q_y(x) = x^n * conj(p)(y/x) = sum_k conj(a_k) y^k x^(n-k),
// evaluated at rational y and eliminated exactly. Requires p(0) != 0 so the
// Sylvester shape is the same at every evaluation point.
GaussRat resultant_at(const GaussPoly& p, const GaussPoly& pc, const Rat& y) {
  int n = p.degree();
  std::vector<GaussRat> q(n + 1);
  Rat yk(1);
  for (int k = 0; k <= n; ++k) {
    q[n - k] = pc.c[k] * GaussRat(yk);
    yk *= y;
  }
  GaussMat s(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = p.c[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = q[n - k];
  return det_field(std::move(s));
}

}  // namespace

IntPoly squared_modulus_poly(const GaussPoly& p) {
  GaussPoly q = p;
  while (!q.is_zero() && q.c[0].is_zero()) q.c.erase(q.c.begin());
  int n = q.degree();
  if (n <= 0)
    throw PreconditionError("squared_modulus_poly: no nonzero roots");
  GaussPoly qc = conj_poly(q);
  int target_deg = n * n;
  std::vector<Rat> xs;
  std::vector<GaussRat> ys;
  xs.reserve(target_deg + 1);
  for (long t = 0; t <= target_deg; ++t) {
    Rat y(t);
    xs.push_back(y);
    ys.push_back(resultant_at(q, qc, y));
  }
  GaussPoly s = interpolate(xs, ys);
  RatPoly sr = gauss_poly_to_rat(s);  // products come in conjugate pairs
  return rat_poly_to_primitive_int(sr);
}

std::optional<IntPoly> real_int_charpoly_square(const GaussPoly& p) {
  if (!poly_is_gauss_int(p)) return std::nullopt;
  if (poly_is_real(p)) {
    std::vector<Int> c(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) c[i] = p.c[i].re.get_num();
    return IntPoly(std::move(c));
  }
  GaussPoly sq = p * conj_poly(p);
  if (!poly_is_real(sq)) throw CertificationError("p * conj(p) not real");
  std::vector<Int> c(sq.c.size());
  for (size_t i = 0; i < sq.c.size(); ++i) c[i] = sq.c[i].re.get_num();
  return IntPoly(std::move(c));
}

RadiusBound poly_spectral_radius(const GaussPoly& p, const RadiusOptions& opt) {
  if (p.is_zero() || p.degree() < 0)
    throw PreconditionError("spectral radius of zero polynomial");
  if (p.degree() == 0) return RadiusBound::exact_value(Rat(0), false);

  // all roots zero?
  bool all_zero = true;
  for (int i = 0; i < p.degree(); ++i)
    if (!p.c[i].is_zero()) {
      all_zero = false;
      break;
    }
  if (all_zero) return RadiusBound::exact_value(Rat(0), false);

  // Kronecker exactness test on the associated real integer polynomial
  if (auto pz = real_int_charpoly_square(p)) {
    IntPoly monic = *pz;
    if (!monic.is_zero() && sgn(monic.lead()) < 0)
      for (auto& c : monic.c) c = -c;
    UnitCircleTest t = unit_circle_test(monic);
    if (t.applies && t.is_product) {
      if (t.radius_exactly_one) return RadiusBound::exact_value(Rat(1), true);
      if (t.radius_exactly_zero) return RadiusBound::exact_value(Rat(0), false);
    }
  }

  IntPoly s = squared_modulus_poly(p);
  // strip zero roots of s (they come from zero roots of p)
  while (!s.is_zero() && s.c[0] == 0) s.c.erase(s.c.begin());
  if (s.degree() <= 0)
    return RadiusBound::exact_value(Rat(0), false);

  // largest real root of s is the squared spectral radius
  auto [lo2, hi2] = largest_real_root(s, opt.rel_tol);
  if (lo2 < 0) lo2 = 0;
  RadiusBound b;
  if (lo2 == hi2) {
    // exact rational squared radius; try exact square root
    Rat r2 = lo2;
    Int num_root, den_root;
    bool exact_root =
        mpz_perfect_square_p(r2.get_num().get_mpz_t()) &&
        mpz_perfect_square_p(r2.get_den().get_mpz_t());
    if (exact_root) {
      mpz_sqrt(num_root.get_mpz_t(), r2.get_num().get_mpz_t());
      mpz_sqrt(den_root.get_mpz_t(), r2.get_den().get_mpz_t());
      Rat r = make_rat(num_root, den_root);
      return RadiusBound::exact_value(r, r == 1);
    }
    b.enclosure = {rat_sqrt_lower(r2, opt.sqrt_bits), rat_sqrt_upper(r2, opt.sqrt_bits)};
    return b;
  }
  b.enclosure = {rat_sqrt_lower(lo2, opt.sqrt_bits), rat_sqrt_upper(hi2, opt.sqrt_bits)};
  return b;
}

RadiusBound spectral_radius(const GaussMat& m, const RadiusOptions& opt) {
  if (!m.is_square()) throw PreconditionError("spectral_radius: non-square matrix");
  if (m.rows == 0) return RadiusBound::exact_value(Rat(0), false);
  return poly_spectral_radius(char_poly(m), opt);
}

RadiusBound spectral_radius(const RatMat& m, const RadiusOptions& opt) {
  return spectral_radius(rat_to_gauss(m), opt);
}

RadiusBound radius_product(const RadiusBound& a, const RadiusBound& b) {
  RadiusBound r;
  r.enclosure = a.enclosure * b.enclosure;
  r.exact = a.exact && b.exact;
  r.exactly_one = a.exactly_one && b.exactly_one;
  if (r.exact && r.enclosure.lo == 1) r.exactly_one = true;
  return r;
}

std::optional<IntPoly> char_poly_int(const RatMat& m) {
  RatPoly p = char_poly(m);
  for (const auto& c : p.c)
    if (c.get_den() != 1) return std::nullopt;
  std::vector<Int> ic(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) ic[i] = p.c[i].get_num();
  return IntPoly(std::move(ic));
}

}  // namespace cohomdyn
