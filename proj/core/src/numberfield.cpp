#include "cohomdyn/numberfield.hpp"

#include <functional>

namespace cohomdyn {

bool is_monic(const IntPoly& p) { return !p.is_zero() && p.lead() == 1; }

bool is_totally_real(const IntPoly& p) {
  if (!is_monic(p)) throw PreconditionError("is_totally_real: polynomial not monic");
  if (p.degree() < 1) return false;
  IntPoly sf = squarefree_part(p);
  if (sf.degree() != p.degree()) return false;  // repeated roots
  SturmChain sc(p);
  return sc.count_real_roots() == p.degree();
}

namespace {

std::vector<Int> divisors_of(const Int& n) {
  std::vector<Int> out;
  Int a = abs(n);
  if (a == 0) return out;
  for (Int d(1); d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      out.push_back(-d);
      if (d * d != a) {
        out.push_back(a / d);
        out.push_back(-(a / d));
      }
    }
  }
  return out;
}

// smallest integer >= the Cauchy root bound
Int root_bound_int(const IntPoly& p) {
  Rat b = cauchy_root_bound(p);
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
  return c;
}

std::optional<Int> rational_root(const IntPoly& p) {
  // monic, so rational roots are integer divisors of the constant term
  if (p.c[0] == 0) return Int(0);
  for (const Int& d : divisors_of(p.c[0])) {
    Rat x{d};
    if (sign_at(p, x) == 0) return d;
  }
  return std::nullopt;
}

// search for a monic integer factor x^2 + a x + b; coefficient box from the
// root bound: |b| <= C^2, |a| <= 2C
std::optional<IntPoly> quadratic_factor(const IntPoly& p) {
  Int c = root_bound_int(p);
  Int amax = 2 * c, bmax = c * c;
  for (Int b(-bmax); b <= bmax; ++b) {
    if (b != 0 && p.c[0] != 0 && !mpz_divisible_p(p.c[0].get_mpz_t(), b.get_mpz_t()))
      continue;  // constant terms multiply
    for (Int a(-amax); a <= amax; ++a) {
      IntPoly f(std::vector<Int>{b, a, Int(1)});
      if (poly_divide_exact(p, f)) return f;
    }
  }
  return std::nullopt;
}

std::optional<IntPoly> cubic_factor(const IntPoly& p) {
  Int c = root_bound_int(p);
  Int e1 = 3 * c, e2 = 3 * c * c, e3 = c * c * c;
  for (Int d(-e3); d <= e3; ++d) {
    if (d != 0 && p.c[0] != 0 && !mpz_divisible_p(p.c[0].get_mpz_t(), d.get_mpz_t()))
      continue;
    for (Int b(-e2); b <= e2; ++b)
      for (Int a(-e1); a <= e1; ++a) {
        IntPoly f(std::vector<Int>{d, b, a, Int(1)});
        if (poly_divide_exact(p, f)) return f;
      }
  }
  return std::nullopt;
}

}  // namespace

bool is_irreducible(const IntPoly& p) {
  if (!is_monic(p)) throw PreconditionError("is_irreducible: polynomial not monic");
  int n = p.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (rational_root(p)) return false;
  if (n <= 3) return true;  // no roots and degree <= 3
  if (quadratic_factor(p)) return false;
  if (n <= 5) return true;  // any factorization of degree 4/5 has a factor <= 2
  if (n == 6) return !cubic_factor(p);
  throw PreconditionError("is_irreducible: degree > 6 unsupported");
}

std::vector<IntPoly> factor_monic(const IntPoly& p) {
  if (!is_monic(p)) throw PreconditionError("factor_monic: polynomial not monic");
  std::vector<IntPoly> out;
  IntPoly rest = p;
  // peel rational roots first
  while (rest.degree() >= 1) {
    auto r = rational_root(rest);
    if (!r) break;
    IntPoly lin(std::vector<Int>{-*r, Int(1)});
    out.push_back(lin);
    rest = *poly_divide_exact(rest, lin);
  }
  std::function<void(const IntPoly&)> split = [&](const IntPoly& q) {
    if (q.degree() <= 0) return;
    if (q.degree() <= 3 || is_irreducible(q)) {
      out.push_back(q);
      return;
    }
    if (auto f = quadratic_factor(q)) {
      split(*f);
      split(*poly_divide_exact(q, *f));
      return;
    }
    if (q.degree() == 6) {
      if (auto f = cubic_factor(q)) {
        split(*f);
        split(*poly_divide_exact(q, *f));
        return;
      }
    }
    out.push_back(q);
  };
  split(rest);
  return out;
}

NumberField::NumberField(IntPoly m) : min_poly(std::move(m)) {
  if (!is_monic(min_poly))
    throw PreconditionError("NumberField: minimal polynomial must be monic");
  if (!is_irreducible(min_poly))
    throw PreconditionError("NumberField: minimal polynomial must be irreducible");
  min_poly_rat = int_poly_to_rat(min_poly);
  root_intervals = isolate_real_roots(min_poly);
  sturm = std::make_shared<SturmChain>(min_poly);
}

RatInterval NumberField::root_enclosure(int i, const Rat& width) const {
  if (i < 0 || i >= real_root_count())
    throw PreconditionError("root_enclosure: index out of range");
  auto [lo, hi] = refine_root(*sturm, root_intervals[i].first,
                              root_intervals[i].second, width);
  return {lo, hi};
}

NFElem::NFElem(const NumberField* f, RatPoly r) : field(f), rep(std::move(r)) {
  if (field && rep.degree() >= field->degree()) {
    auto [q, rem] = divrem_field(rep, field->min_poly_rat);
    rep = rem;
  }
}

namespace {
const NumberField* common_field(const NFElem& a, const NFElem& b) {
  if (a.field && b.field && a.field != b.field)
    throw PreconditionError("NFElem: mixed number fields");
  return a.field ? a.field : b.field;
}
}  // namespace

NFElem NFElem::operator-() const {
  NFElem r = *this;
  r.rep = -r.rep;
  return r;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  field = common_field(*this, o);
  rep = rep + o.rep;
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  field = common_field(*this, o);
  rep = rep - o.rep;
  return *this;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  const NumberField* f = common_field(a, b);
  return NFElem(f, a.rep * b.rep);
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

bool operator==(const NFElem& a, const NFElem& b) {
  common_field(a, b);
  return a.rep == b.rep;
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw PreconditionError("NFElem: inverse of zero");
  if (!field || is_rational()) {
    NFElem r = *this;
    r.rep = RatPoly::constant(Rat(1) / rep.coeff(0));
    return r;
  }
  // extended Euclid in Q[x]: s*rep + t*m = gcd = constant
  RatPoly r0 = field->min_poly_rat, r1 = rep;
  RatPoly t0, t1 = RatPoly::constant(Rat(1));
  while (!r1.is_zero() && r1.degree() > 0) {
    auto [q, r2] = divrem_field(r0, r1);
    RatPoly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r1.is_zero())
    throw CertificationError("NFElem: element not invertible (reducible modulus?)");
  Rat c = r1.coeff(0);
  RatPoly inv = t1 * RatPoly::constant(Rat(1) / c);
  return NFElem(field, inv);
}

NFElem NFElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  NFElem acc(1L);
  acc.field = field;
  NFElem base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

RatInterval NFElem::embed(int root_index, const Rat& width) const {
  if (!field || is_rational()) return RatInterval(rep.coeff(0));
  // refine the root until the polynomial image is narrow enough
  Rat root_w = make_rat(1, 64);
  for (int iter = 0; iter < 512; ++iter) {
    RatInterval x = field->root_enclosure(root_index, root_w);
    RatInterval v = eval_interval(rep, x);
    if (v.width() <= width) return v;
    root_w /= 16;
  }
  throw CertificationError("NFElem::embed: refinement budget exhausted");
}

RatMat multiplication_matrix(const NFElem& u) {
  if (!u.field) throw PreconditionError("multiplication_matrix needs a field element");
  int n = u.field->degree();
  RatMat m(n, n);
  NFElem xj(1L);
  xj.field = u.field;
  NFElem x = NFElem::generator(u.field);
  for (int j = 0; j < n; ++j) {
    NFElem col = u * xj;
    for (int i = 0; i < n; ++i) m(i, j) = col.rep.coeff(i);
    xj = xj * x;
  }
  return m;
}

Rat field_norm(const NFElem& u) {
  if (!u.field) return u.rep.coeff(0);
  return det_field(multiplication_matrix(u));
}

TensorElem TensorElem::variable(const TensorRing* r, int axis) {
  return embed(r, axis, RatPoly::x());
}

TensorElem TensorElem::embed(const TensorRing* r, int axis, const RatPoly& p) {
  RatPoly reduced = p;
  if (reduced.degree() >= r->dim(axis)) {
    auto [q, rem] = divrem_field(reduced, r->axes[axis]->min_poly_rat);
    reduced = rem;
  }
  TensorElem e(r);
  long stride = 1;
  for (int t = 0; t < axis; ++t) stride *= r->dim(t);
  for (int j = 0; j <= reduced.degree(); ++j) e.coef[j * stride] = reduced.coeff(j);
  return e;
}

TensorElem TensorElem::operator-() const {
  TensorElem r = *this;
  for (auto& c : r.coef) c = -c;
  return r;
}

TensorElem operator+(const TensorElem& a, const TensorElem& b) {
  TensorElem r = a;
  for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] += b.coef[i];
  return r;
}

TensorElem operator-(const TensorElem& a, const TensorElem& b) {
  TensorElem r = a;
  for (size_t i = 0; i < r.coef.size(); ++i) r.coef[i] -= b.coef[i];
  return r;
}

TensorElem operator*(const TensorElem& a, const TensorElem& b) {
  if (a.ring != b.ring) throw PreconditionError("TensorElem: ring mismatch");
  const TensorRing* ring = a.ring;
  int arity = ring->arity();
  // unreduced product lives in the box with per-axis size 2 d_t - 1
  std::vector<int> d(arity), big(arity);
  long big_total = 1;
  for (int t = 0; t < arity; ++t) {
    d[t] = ring->dim(t);
    big[t] = 2 * d[t] - 1;
    big_total *= big[t];
  }
  std::vector<Rat> prod(big_total, Rat(0));
  auto decode = [&](long idx, const std::vector<int>& radix, std::vector<int>& out) {
    for (int t = 0; t < arity; ++t) {
      out[t] = (int)(idx % radix[t]);
      idx /= radix[t];
    }
  };
  auto encode = [&](const std::vector<int>& e, const std::vector<int>& radix) {
    long idx = 0;
    for (int t = arity - 1; t >= 0; --t) idx = idx * radix[t] + e[t];
    return idx;
  };
  std::vector<int> ea(arity), eb(arity), ec(arity);
  for (long ia = 0; ia < (long)a.coef.size(); ++ia) {
    if (a.coef[ia] == 0) continue;
    decode(ia, d, ea);
    for (long ib = 0; ib < (long)b.coef.size(); ++ib) {
      if (b.coef[ib] == 0) continue;
      decode(ib, d, eb);
      for (int t = 0; t < arity; ++t) ec[t] = ea[t] + eb[t];
      prod[encode(ec, big)] += a.coef[ia] * b.coef[ib];
    }
  }
  // reduce axis by axis: substitute x_t^j (j >= d_t) by its remainder
  for (int t = 0; t < arity; ++t) {
    // remainder table for x^j, j = d_t .. 2 d_t - 2
    int dt = d[t];
    std::vector<RatPoly> rem(2 * dt - 1);
    RatPoly xj = RatPoly::constant(Rat(1));
    for (int j = 0; j < 2 * dt - 1; ++j) {
      RatPoly r = xj;
      if (r.degree() >= dt) {
        auto [q, rr] = divrem_field(r, ring->axes[t]->min_poly_rat);
        r = rr;
      }
      rem[j] = r;
      xj = xj * RatPoly::x();
    }
    std::vector<int> radix_out = big;
    radix_out[t] = dt;
    long out_total = 1;
    for (int s = 0; s < arity; ++s) out_total *= radix_out[s];
    std::vector<Rat> next(out_total, Rat(0));
    std::vector<int> e(arity);
    for (long idx = 0; idx < (long)prod.size(); ++idx) {
      if (prod[idx] == 0) continue;
      decode(idx, big, e);
      int j = e[t];
      const RatPoly& r = rem[j];
      for (int jj = 0; jj <= r.degree(); ++jj) {
        if (r.coeff(jj) == 0) continue;
        std::vector<int> eo = e;
        eo[t] = jj;
        next[encode(eo, radix_out)] += prod[idx] * r.coeff(jj);
      }
    }
    prod = std::move(next);
    big = radix_out;
  }
  TensorElem out(ring);
  out.coef = std::move(prod);
  return out;
}

RatInterval TensorElem::eval(const std::vector<int>& root_choice, const Rat& width) const {
  int arity = ring->arity();
  if ((int)root_choice.size() != arity)
    throw PreconditionError("TensorElem::eval: root choice arity mismatch");
  Rat root_w = make_rat(1, 64);
  for (int iter = 0; iter < 512; ++iter) {
    std::vector<RatInterval> xs(arity);
    for (int t = 0; t < arity; ++t)
      xs[t] = ring->axes[t]->root_enclosure(root_choice[t], root_w);
    // multivariate interval Horner along the mixed-radix layout
    std::vector<int> d(arity);
    for (int t = 0; t < arity; ++t) d[t] = ring->dim(t);
    std::function<RatInterval(int, long, long)> horner = [&](int axis, long base,
                                                             long stride) -> RatInterval {
      if (axis < 0) return RatInterval(coef[base]);
      long sub_stride = stride / d[axis];
      RatInterval acc;
      for (int j = d[axis] - 1; j >= 0; --j) {
        RatInterval c = horner(axis - 1, base + j * sub_stride, sub_stride);
        acc = acc * xs[axis] + c;
      }
      return acc;
    };
    long total = (long)coef.size();
    RatInterval v = horner(arity - 1, 0, total);
    if (v.width() <= width) return v;
    root_w /= 16;
  }
  throw CertificationError("TensorElem::eval: refinement budget exhausted");
}

}  // namespace cohomdyn
