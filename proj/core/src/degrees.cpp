#include "cohomdyn/degrees.hpp"

#include <cmath>

namespace cohomdyn {

void RawModel::validate() const {
  if (matrices.empty()) throw PreconditionError("raw model: no matrices");
  for (const auto& m : matrices)
    if (!m.is_square()) throw PreconditionError("raw model: non-square action");
  const RatMat& first = matrices.front();
  const RatMat& last = matrices.back();
  if (first.rows != 1 || first(0, 0) != 1 || last.rows != 1 || last(0, 0) != 1)
    throw PreconditionError("raw model: H^{0,0} and H^{k,k} actions must be [1]");
}

RadiusBound dynamical_degree(const TorusAut& f, int p, const RadiusOptions& opt) {
  if (p < 0 || p > f.model.k)
    throw PreconditionError("dynamical_degree: p out of range");
  // rho(ext_p A (x) conj(ext_p A)) = rho(ext_p A)^2; the factor is exact
  RadiusBound r = spectral_radius(exterior_power(f.A, p), opt);
  return radius_product(r, r);
}

RadiusBound dynamical_degree(const RawModel& m, int p, const RadiusOptions& opt) {
  if (p < 0 || p > m.k()) throw PreconditionError("dynamical_degree: p out of range");
  return spectral_radius(m.matrices[p], opt);
}

namespace {

RatInterval log_of_bound(const RadiusBound& b) {
  if (b.exact && b.enclosure.lo == 1) return RatInterval(Rat(0));
  return interval_log(b.enclosure);
}

DegreeProfile profile_from_degrees(std::vector<RadiusBound> degrees,
                                   bool entropy_certified, bool d1_exactly_one) {
  DegreeProfile prof;
  prof.degrees = std::move(degrees);
  int k = (int)prof.degrees.size() - 1;

  // h_a = max_p log d_p as an interval enclosure; zero radii (possible only
  // for degenerate raw models) cannot attain the max since d_0 = 1
  RatInterval h = log_of_bound(prof.degrees[0]);
  for (int p = 1; p <= k; ++p) {
    if (prof.degrees[p].enclosure.hi == 0) continue;
    RatInterval lp = log_of_bound(prof.degrees[p]);
    h = RatInterval(std::max(h.lo, lp.lo), std::max(h.hi, lp.hi));
  }
  prof.h_a = h;
  prof.positive_entropy = !d1_exactly_one;
  prof.entropy_flag_certified = entropy_certified;
  prof.h_a_exact_zero = !prof.positive_entropy && entropy_certified;

  // log-concavity d_p^2 >= d_{p-1} d_{p+1}: fail only on a certified violation
  for (int p = 1; p < k; ++p) {
    RatInterval lhs = prof.degrees[p].enclosure * prof.degrees[p].enclosure;
    RatInterval rhs = prof.degrees[p - 1].enclosure * prof.degrees[p + 1].enclosure;
    if (lhs.hi < rhs.lo) prof.log_concavity_ok = false;
  }
  // unimodality: certified strict drop followed by certified strict rise is a
  // violation of the rise-plateau-fall pattern
  bool dropped = false;
  for (int p = 1; p <= k; ++p) {
    const RatInterval& prev = prof.degrees[p - 1].enclosure;
    const RatInterval& cur = prof.degrees[p].enclosure;
    bool strict_rise = cur.lo > prev.hi;
    bool strict_drop = cur.hi < prev.lo;
    if (strict_drop) dropped = true;
    if (dropped && strict_rise) prof.unimodal_ok = false;
  }
  return prof;
}

}  // namespace

DegreeProfile degree_profile(const TorusAut& f, bool with_rho, const RadiusOptions& opt) {
  int k = f.model.k;
  std::vector<RadiusBound> degrees;
  degrees.reserve(k + 1);
  for (int p = 0; p <= k; ++p) degrees.push_back(dynamical_degree(f, p, opt));
  bool d1_one = degrees[1].exactly_one;
  DegreeProfile prof = profile_from_degrees(std::move(degrees), true, d1_one);
  if (with_rho) {
    std::vector<std::vector<RadiusBound>> table(k + 1);
    for (int p = 0; p <= k; ++p)
      for (int q = 0; q <= k; ++q) table[p].push_back(rho_pq(f, p, q, opt).rho);
    prof.rho = std::move(table);
  }
  return prof;
}

DegreeProfile degree_profile(const RawModel& m, const RadiusOptions& opt) {
  m.validate();
  std::vector<RadiusBound> degrees;
  bool certified = true;
  for (int p = 0; p <= m.k(); ++p) degrees.push_back(dynamical_degree(m, p, opt));
  // the exactness flag is only meaningful when the Kronecker test applied,
  // i.e. the char poly had integer coefficients
  if (!char_poly_int(m.matrices[1])) certified = false;
  bool d1_one = degrees[1].exactly_one;
  return profile_from_degrees(std::move(degrees), certified, d1_one);
}

bool is_positive_entropy(const TorusAut& f) {
  return !dynamical_degree(f, 1).exactly_one;
}

RhoCheck rho_pq(const TorusAut& f, int p, int q, const RadiusOptions& opt) {
  int k = f.model.k;
  if (p < 0 || p > k || q < 0 || q > k)
    throw PreconditionError("rho_pq: bidegree out of range");
  RhoCheck out;
  RadiusBound rp = spectral_radius(exterior_power(f.A, p), opt);
  RadiusBound rq = spectral_radius(exterior_power(f.A, q), opt);
  out.rho = radius_product(rp, rq);  // rho(ext_p A) rho(conj ext_q A)
  out.dp = dynamical_degree(f, p, opt);
  out.dq = dynamical_degree(f, q, opt);
  RatInterval lhs = out.rho.enclosure * out.rho.enclosure;
  RatInterval rhs = out.dp.enclosure * out.dq.enclosure;
  out.holds = !(lhs.lo > rhs.hi);
  out.strict = lhs.hi < rhs.lo;
  return out;
}

GrowthEstimate growth_limit_estimate(const TorusAut& f, int p, const HermitianForm& h,
                                     int n_max, const RadiusOptions& opt) {
  int k = f.model.k;
  if (p < 0 || p > k) throw PreconditionError("growth_limit: p out of range");
  if (n_max < 1) throw PreconditionError("growth_limit: n_max must be >= 1");
  CohomClass omega = kahler_class(f.model, h);
  CohomClass omega_p = one_class(f.model);
  for (int i = 0; i < p; ++i) omega_p = wedge(omega_p, omega);
  CohomClass omega_cop = one_class(f.model);
  for (int i = 0; i < k - p; ++i) omega_cop = wedge(omega_cop, omega);

  GrowthEstimate est;
  est.degree = dynamical_degree(f, p, opt);
  CohomClass pulled = omega_p;
  for (int n = 1; n <= n_max; ++n) {
    pulled = pullback(f, pulled);
    Rat val = integrate(f.model, wedge(pulled, omega_cop));
    est.integrals.push_back(val);
    est.roots.push_back(std::pow(rat_to_double(val), 1.0 / n));
  }
  double d = est.degree.value();
  est.final_rel_gap = std::abs(est.roots.back() - d) / d;
  return est;
}

FiberedAut::FiberedAut(TorusAut aut, int base_dim) : f(std::move(aut)), l(base_dim) {
  int k = f.model.k;
  if (l < 1 || l >= k)
    throw PreconditionError("fibered automorphism: base dimension out of range");
  for (int i = 0; i < l; ++i)
    for (int j = l; j < k; ++j)
      if (!f.A(i, j).is_zero())
        throw PreconditionError(
            "fibered automorphism: matrix is not block-lower-triangular");
}

TorusAut FiberedAut::base() const {
  GaussMat g(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) g(i, j) = f.A(i, j);
  return TorusAut(TorusModel(l), g);
}

GaussMat FiberedAut::fiber_block() const {
  int k = f.model.k;
  GaussMat c(k - l, k - l);
  for (int i = l; i < k; ++i)
    for (int j = l; j < k; ++j) c(i - l, j - l) = f.A(i, j);
  return c;
}

RadiusBound relative_degree(const FiberedAut& fa, int p, const RadiusOptions& opt) {
  int fdim = fa.f.model.k - fa.l;
  if (p < 0 || p > fdim)
    throw PreconditionError("relative_degree: p out of range for the fiber");
  RadiusBound r = spectral_radius(exterior_power(fa.fiber_block(), p), opt);
  return radius_product(r, r);
}

std::vector<ProductFormulaRow> theorem_product_check(const FiberedAut& fa,
                                                     const RadiusOptions& opt) {
  int k = fa.f.model.k;
  int l = fa.l;
  TorusAut g = fa.base();
  std::vector<RadiusBound> base_deg, rel_deg;
  for (int s = 0; s <= l; ++s) base_deg.push_back(dynamical_degree(g, s, opt));
  for (int s = 0; s <= k - l; ++s) rel_deg.push_back(relative_degree(fa, s, opt));

  std::vector<ProductFormulaRow> rows;
  for (int p = 0; p <= k; ++p) {
    ProductFormulaRow row;
    row.p = p;
    row.direct = dynamical_degree(fa.f, p, opt);
    int s_lo = std::max(0, p - (k - l));
    int s_hi = std::min(p, l);
    std::vector<RatInterval> cands;
    for (int s = s_lo; s <= s_hi; ++s)
      cands.push_back(base_deg[s].enclosure * rel_deg[p - s].enclosure);
    // enclosure of max_s: [max lo_s, max hi_s]
    RatInterval best = cands.front();
    row.argmax_s = s_lo;
    for (size_t i = 1; i < cands.size(); ++i) {
      if (cands[i].mid() > cands[row.argmax_s - s_lo].mid())
        row.argmax_s = s_lo + (int)i;
      best.lo = std::max(best.lo, cands[i].lo);
      best.hi = std::max(best.hi, cands[i].hi);
    }
    // certified interior attainment: some interior candidate strictly
    // dominates every boundary candidate
    for (int s = s_lo + 1; s < s_hi; ++s) {
      const RatInterval& c = cands[s - s_lo];
      if (c.lo > cands.front().hi && c.lo > cands.back().hi) row.interior = true;
    }
    row.formula = best;
    row.consistent =
        row.direct.enclosure.lo <= best.hi && best.lo <= row.direct.enclosure.hi;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cohomdyn
