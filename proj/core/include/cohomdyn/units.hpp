#pragma once

#include "cohomdyn/group.hpp"
#include "cohomdyn/numberfield.hpp"

namespace cohomdyn {

// Totally real number field Q[x]/(poly) of degree k with isolated real
// roots. Degrees 2 and 3 by default; degree 4 works but the exhaustive unit
// search grows quickly with the height, so it is opt-in.
struct TotallyRealField {
  std::shared_ptr<NumberField> field;

  explicit TotallyRealField(IntPoly poly, int max_degree = 3);
  int degree() const { return field->degree(); }
};

// parses "x^3-3x-1" style polynomial strings
IntPoly parse_int_poly(const std::string& s);

// Quadratic unit (a + b sqrt(d)) / denom, denom in {1, 2}.
struct QuadUnit {
  Int a, b;
  int denom = 1;
  int norm = 1;  // (a^2 - d b^2) / denom^2
};

// Fundamental unit of Q(sqrt(d)) via the periodic continued fraction of
// sqrt(d); for d = 1 mod 4 the half-integer search in the maximal order.
QuadUnit fundamental_unit_quadratic(const Int& d);

struct UnitSystem {
  std::vector<NFElem> units;          // multiplicatively independent, norm +-1
  RatInterval regulator_minor;        // certified nonzero (k-1)x(k-1) log minor
  std::vector<RatMat> matrices;       // integer regular representations, det +1
};

// Exhaustive search over Z[alpha] coordinates bounded by height_bound,
// keeping norm +-1 elements and greedily selecting k-1 with a certified
// nonzero regulator-style minor. Candidates are scanned height-first then
// lexicographically, so the returned set is reproducible.
UnitSystem unit_search(const TotallyRealField& f, long height_bound);

// multiplication-by-u matrix on the power basis; norm -1 units are squared
// so the result lands in SL(k,Z)
RatMat regular_representation(const NFElem& u);

// The k-1 regular representations as commuting automorphisms of the
// k-dimensional torus model; every nonidentity word up to length 3 is
// certified positive entropy (exact cyclotomic test).
MatrixGroup build_positive_entropy_group(const TotallyRealField& f, long height_bound = 5);

// certified log-embedding row (log |sigma_i(u)|)_i of a unit
std::vector<RatInterval> log_embedding_row(const NFElem& u, const Rat& width);

}  // namespace cohomdyn
