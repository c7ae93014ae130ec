#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cohomdyn {

using Int = mpz_class;
using Rat = mpq_class;

// Inputs that violate an operation's precondition (bad dimensions, cone
// membership, malformed data). The CLI maps these to exit code 1.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested certificate could not be produced at the configured
// precision, or a verified fact failed to verify. Exit code 2.
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Parses "a", "a/b" or a plain decimal like "-1.25".
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

// Decimal rendering with exact directed rounding: round_up=false rounds
// toward -inf, true toward +inf. Used for interval endpoints in reports.
std::string rat_to_decimal(const Rat& q, int digits, bool round_up);

double rat_to_double(const Rat& q);

// Largest r with r^2 <= q (resp. smallest r with r^2 >= q), to about
// `bits` fractional bits. q must be >= 0.
Rat rat_sqrt_lower(const Rat& q, int bits);
Rat rat_sqrt_upper(const Rat& q, int bits);

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& n) { return sgn(n); }

// Gaussian rationals a + b*i with exact arithmetic.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(long r) : re(r), im(0) {}
  GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  // true iff both parts are rational integers
  bool is_gauss_int() const {
    return re.get_den() == 1 && im.get_den() == 1;
  }

  GaussRat conj() const { return GaussRat(re, -im); }
  Rat norm() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw PreconditionError("division by zero GaussRat");
    Rat n = o.norm();
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = r;
    im = i;
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

std::string gauss_to_string(const GaussRat& z);

inline const GaussRat& gauss_i() {
  static const GaussRat i(Rat(0), Rat(1));
  return i;
}

// Scalar conjugation hooks so templated matrix/class code works over both
// coefficient types.
inline Rat conj_scalar(const Rat& x) { return x; }
inline GaussRat conj_scalar(const GaussRat& z) { return z.conj(); }
inline bool is_zero_scalar(const Rat& x) { return x == 0; }
inline bool is_zero_scalar(const GaussRat& z) { return z.is_zero(); }

}  // namespace cohomdyn
