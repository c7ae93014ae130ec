#include "cohomdyn/interval.hpp"

#include <mpfr.h>

namespace cohomdyn {

RatInterval interval_sqrt(const RatInterval& x, int bits) {
  if (x.lo < 0) throw PreconditionError("interval_sqrt of negative interval");
  return {rat_sqrt_lower(x.lo, bits), rat_sqrt_upper(x.hi, bits)};
}

namespace {

// directed-rounding log of a rational endpoint via MPFR
Rat log_rounded(const Rat& x, int prec_bits, bool up) {
  mpfr_t v;
  mpfr_init2(v, prec_bits);
  mpfr_set_q(v, x.get_mpq_t(), up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_log(v, v, up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_exp_t exp;
  mpz_class mant;
  exp = mpfr_get_z_2exp(mant.get_mpz_t(), v);
  mpfr_clear(v);
  // mant * 2^exp, returned exactly as a rational
  Rat r(mant);
  if (exp >= 0) {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), exp);
    r *= Rat(p);
  } else {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), -exp);
    r /= Rat(p);
  }
  // one-ulp outward nudge: mpfr_get_z_2exp is exact for the stored value,
  // but the stored value itself was rounded in the requested direction,
  // so no nudge is needed.
  return r;
}

}  // namespace

RatInterval interval_log(const RatInterval& x, int prec_bits) {
  if (x.lo <= 0) throw PreconditionError("interval_log needs a positive interval");
  if (x.is_point() && x.lo == 1) return RatInterval(Rat(0));
  return {log_rounded(x.lo, prec_bits, false), log_rounded(x.hi, prec_bits, true)};
}

RatInterval interval_norm2(const std::vector<RatInterval>& v, int bits) {
  RatInterval sum;
  for (const auto& c : v) {
    RatInterval sq = c * c;
    if (c.contains_zero()) sq.lo = 0;  // x^2 >= 0 even when x straddles 0
    sum = sum + sq;
  }
  return interval_sqrt(sum, bits);
}

RatInterval eval_interval(const IntPoly& p, const RatInterval& x) {
  RatInterval v;
  for (int i = p.degree(); i >= 0; --i)
    v = v * x + RatInterval(Rat(p.c[i]));
  return v;
}

RatInterval eval_interval(const RatPoly& p, const RatInterval& x) {
  RatInterval v;
  for (int i = p.degree(); i >= 0; --i) v = v * x + RatInterval(p.c[i]);
  return v;
}

RatInterval interval_det(const std::vector<std::vector<RatInterval>>& m) {
  size_t n = m.size();
  if (n == 0) return RatInterval(Rat(1));
  if (n == 1) return m[0][0];
  RatInterval acc;
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RatInterval>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<RatInterval> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    RatInterval term = m[0][j] * interval_det(sub);
    acc = sign > 0 ? acc + term : acc - term;
    sign = -sign;
  }
  return acc;
}

std::pair<std::string, std::string> interval_decimal(const RatInterval& x, int digits) {
  return {rat_to_decimal(x.lo, digits, false), rat_to_decimal(x.hi, digits, true)};
}

}  // namespace cohomdyn
