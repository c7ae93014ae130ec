#pragma once

#include <memory>

#include "cohomdyn/interval.hpp"
#include "cohomdyn/matrix.hpp"
#include "cohomdyn/poly.hpp"

namespace cohomdyn {

bool is_monic(const IntPoly& p);

// Sturm real-root count equals the degree.
bool is_totally_real(const IntPoly& p);

// Irreducibility over Q for monic integer polynomials of degree <= 4
// (rational-root test plus exhaustive quadratic-factor search); degrees 5
// and 6 additionally search cubic factors with root-bound coefficient
// boxes, so the answer stays exact.
bool is_irreducible(const IntPoly& p);

// Factorization of a monic integer polynomial into monic irreducible
// factors (with multiplicity), supported through degree 6.
std::vector<IntPoly> factor_monic(const IntPoly& p);

// Q[x]/(m) for a monic irreducible integer polynomial m, together with
// isolating intervals for its real roots (ascending).
struct NumberField {
  IntPoly min_poly;
  RatPoly min_poly_rat;
  std::vector<std::pair<Rat, Rat>> root_intervals;
  std::shared_ptr<SturmChain> sturm;  // for on-demand refinement

  explicit NumberField(IntPoly m);
  int degree() const { return min_poly.degree(); }
  int real_root_count() const { return (int)root_intervals.size(); }
  bool totally_real() const { return real_root_count() == degree(); }
  // enclosure of real root i refined until width <= w
  RatInterval root_enclosure(int i, const Rat& width) const;
};

// Element of Q[x]/(m); field == nullptr denotes a plain rational constant
// so that Mat<NFElem> can default-construct entries.
struct NFElem {
  const NumberField* field = nullptr;
  RatPoly rep;

  NFElem() = default;
  NFElem(long v) : rep(RatPoly::constant(Rat(v))) {}
  explicit NFElem(const Rat& v) : rep(RatPoly::constant(v)) {}
  NFElem(const NumberField* f, RatPoly r);

  static NFElem generator(const NumberField* f) { return NFElem(f, RatPoly::x()); }

  bool is_zero() const { return rep.is_zero(); }
  bool is_rational() const { return rep.degree() <= 0; }

  NFElem operator-() const;
  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  friend bool operator==(const NFElem& a, const NFElem& b);

  NFElem inverse() const;
  NFElem pow(long e) const;

  // certified enclosure of the image under the i-th real embedding
  RatInterval embed(int root_index, const Rat& width) const;
};

inline bool is_zero_scalar(const NFElem& x) { return x.is_zero(); }
inline NFElem conj_scalar(const NFElem& x) { return x; }  // real fields only

// multiplication-by-u matrix on the power basis 1, x, .., x^{n-1}
// (column j holds the coordinates of u * x^j)
RatMat multiplication_matrix(const NFElem& u);

// Norm(u) = det of the multiplication matrix, exact.
Rat field_norm(const NFElem& u);

// ---- tensor ring Q[x_1..x_P]/(m_1(x_1),..,m_P(x_P)) ----
//
// Distinct chain levels get distinct variables even when they share a
// minimal polynomial, so identities verified here hold at every choice of
// per-axis roots.
struct TensorRing {
  std::vector<const NumberField*> axes;

  int arity() const { return (int)axes.size(); }
  int dim(int t) const { return axes[t]->degree(); }
  long total_dim() const {
    long d = 1;
    for (int t = 0; t < arity(); ++t) d *= dim(t);
    return d;
  }
};

struct TensorElem {
  const TensorRing* ring = nullptr;
  std::vector<Rat> coef;  // mixed-radix over per-axis exponents, axis 0 fastest

  TensorElem() = default;
  explicit TensorElem(const TensorRing* r)
      : ring(r), coef(static_cast<size_t>(r->total_dim()), Rat(0)) {}

  static TensorElem constant(const TensorRing* r, const Rat& v) {
    TensorElem e(r);
    e.coef[0] = v;
    return e;
  }
  // x_axis^1 as a ring element
  static TensorElem variable(const TensorRing* r, int axis);
  // embed a single-variable polynomial into the given axis
  static TensorElem embed(const TensorRing* r, int axis, const RatPoly& p);

  bool is_zero() const {
    for (const auto& c : coef)
      if (c != 0) return false;
    return true;
  }

  TensorElem operator-() const;
  TensorElem& operator+=(const TensorElem& o) {
    if (coef.empty()) {
      *this = o;
      return *this;
    }
    for (size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
    return *this;
  }
  friend TensorElem operator+(const TensorElem& a, const TensorElem& b);
  friend TensorElem operator-(const TensorElem& a, const TensorElem& b);
  friend TensorElem operator*(const TensorElem& a, const TensorElem& b);
  friend bool operator==(const TensorElem& a, const TensorElem& b) {
    return a.coef == b.coef;
  }

  // enclosure at the chosen per-axis real roots
  RatInterval eval(const std::vector<int>& root_choice, const Rat& width) const;
};

inline bool is_zero_scalar(const TensorElem& x) { return x.is_zero(); }

}  // namespace cohomdyn
