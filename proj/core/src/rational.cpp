#include "cohomdyn/rational.hpp"

#include <sstream>

namespace cohomdyn {

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw PreconditionError("empty rational literal");
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // decimal literal: scale by a power of ten
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    Int num, den(1);
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw PreconditionError("bad decimal literal: " + s);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rat(num, den);
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
    throw PreconditionError("bad rational literal: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw PreconditionError("zero denominator: " + s);
  return q;
}

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string rat_to_decimal(const Rat& q, int digits, bool round_up) {
  Int scale(1);
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int num = q.get_num() * scale;
  const Int& den = q.get_den();
  Int quo;
  if (round_up)
    mpz_cdiv_q(quo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  else
    mpz_fdiv_q(quo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  bool neg = quo < 0;
  Int abs_quo = abs(quo);
  std::string s = abs_quo.get_str();
  if ((int)s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

double rat_to_double(const Rat& q) { return q.get_d(); }

namespace {

// floor(sqrt(q * 4^bits)) / 2^bits
Rat sqrt_scaled(const Rat& q, int bits, bool up) {
  if (q < 0) throw PreconditionError("sqrt of negative rational");
  Int two_pow(1);
  mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), bits);
  // scaled = num * den * 4^bits ; sqrt(scaled)/(den*2^bits) approximates sqrt(q)
  Int scaled = q.get_num() * q.get_den();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  Int root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (up && root * root != scaled) root += 1;
  return make_rat(root, q.get_den() * two_pow);
}

}  // namespace

Rat rat_sqrt_lower(const Rat& q, int bits) { return sqrt_scaled(q, bits, false); }
Rat rat_sqrt_upper(const Rat& q, int bits) { return sqrt_scaled(q, bits, true); }

std::string gauss_to_string(const GaussRat& z) {
  if (z.is_real()) return rat_to_string(z.re);
  std::ostringstream os;
  os << z.re << (z.im >= 0 ? "+" : "") << z.im << "i";
  return os.str();
}

}  // namespace cohomdyn
