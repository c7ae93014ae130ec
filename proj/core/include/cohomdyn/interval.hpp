#pragma once

#include <string>

#include "cohomdyn/poly.hpp"
#include "cohomdyn/rational.hpp"

namespace cohomdyn {

// Closed interval with exact rational endpoints. All arithmetic is exact,
// so enclosures never silently lose containment; only log() rounds, and it
// rounds outward through MPFR directed rounding.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  explicit RatInterval(const Rat& x) : lo(x), hi(x) {}
  RatInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
    if (lo > hi) throw PreconditionError("interval with lo > hi");
  }

  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool strictly_positive() const { return lo > 0; }
  bool strictly_negative() const { return hi < 0; }
  // sign if certified, 0 if the interval straddles zero
  int certified_sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
    Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
    return {lo, hi};
  }
  friend RatInterval operator*(const RatInterval& a, const Rat& s) {
    return a * RatInterval(s);
  }
};

RatInterval interval_sqrt(const RatInterval& x, int bits);

// Natural log with outward rounding; requires lo > 0. The exact point 1
// maps to the exact point 0 so equality cases stay decidable.
RatInterval interval_log(const RatInterval& x, int prec_bits = 128);

// Euclidean norm enclosure of a vector of intervals.
RatInterval interval_norm2(const std::vector<RatInterval>& v, int bits);

// interval Horner evaluation of an integer polynomial
RatInterval eval_interval(const IntPoly& p, const RatInterval& x);
RatInterval eval_interval(const RatPoly& p, const RatInterval& x);

// determinant of a small interval matrix by cofactor expansion
RatInterval interval_det(const std::vector<std::vector<RatInterval>>& m);

// decimal endpoints with outward rounding, e.g. ["2.6180339887", "2.6180339888"]
std::pair<std::string, std::string> interval_decimal(const RatInterval& x, int digits);

}  // namespace cohomdyn
