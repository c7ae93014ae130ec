#include "cohomdyn/poly.hpp"

#include <map>

namespace cohomdyn {

Int poly_content(const IntPoly& p) {
  Int g(0);
  for (const auto& c : p.c) {
    Int a = abs(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

IntPoly poly_primitive(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int g = poly_content(p);
  IntPoly r = p;
  for (auto& c : r.c) c /= g;
  return r;
}

IntPoly int_poly_mul_pow_x(const IntPoly& p, int m) { return p.shifted(m); }

std::optional<IntPoly> poly_divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) return std::nullopt;
  IntPoly r = a;
  std::vector<Int> q(std::max<int>(a.degree() - b.degree() + 1, 0), Int(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Int f;
    if (!mpz_divisible_p(r.lead().get_mpz_t(), b.lead().get_mpz_t()))
      return std::nullopt;
    f = r.lead() / b.lead();
    int d = r.degree() - b.degree();
    q[d] = f;
    for (int i = 0; i <= b.degree(); ++i) r.c[i + d] -= f * b.c[i];
    r.normalize();
  }
  if (!r.is_zero()) return std::nullopt;
  return IntPoly(std::move(q));
}

namespace {

// pseudo-remainder scaled by an even power of lc(b): keeps the sign of the
// true remainder, which the Sturm chain construction needs
IntPoly pseudo_rem_signed(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  const Int& lb = b.lead();
  int delta = a.degree() - b.degree() + 1;
  int scale_pow = delta + (delta % 2);  // even
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), scale_pow);
  for (auto& c : r.c) c *= scale;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Int f = r.lead() / lb;  // exact by construction of the scaling
    int d = r.degree() - b.degree();
    for (int i = 0; i <= b.degree(); ++i) r.c[i + d] -= f * b.c[i];
    r.normalize();
  }
  return r;
}

}  // namespace

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = poly_primitive(a);
  b = poly_primitive(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = poly_primitive(pseudo_rem_signed(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && sgn(a.lead()) < 0)
    for (auto& c : a.c) c = -c;
  return a;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 1) return poly_primitive(p);
  IntPoly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return poly_primitive(p);
  auto q = poly_divide_exact(poly_primitive(p) * g.lead(), g);
  if (!q) {
    // content mismatch; retry with scaled numerator (g primitive, so this
    // cannot fail for exact inputs)
    throw CertificationError("squarefree division failed");
  }
  return poly_primitive(*q);
}

int sign_at(const IntPoly& p, const Rat& x) {
  if (p.is_zero()) return 0;
  const Int& a = x.get_num();
  const Int& b = x.get_den();
  int n = p.degree();
  Int v = p.c[n];
  Int bp(1);
  for (int i = n - 1; i >= 0; --i) {
    bp *= b;
    v = v * a + p.c[i] * bp;
  }
  return sgn(v);
}

Rat cauchy_root_bound(const IntPoly& p) {
  if (p.degree() < 1) return Rat(1);
  Int m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Int a = abs(p.c[i]);
    if (a > m) m = a;
  }
  Int l = abs(p.lead());
  return Rat(1) + make_rat(m, l);
}

SturmChain::SturmChain(const IntPoly& p) {
  squarefree = squarefree_part(p);
  chain.push_back(squarefree);
  if (squarefree.degree() >= 1) {
    chain.push_back(poly_primitive(squarefree.derivative()));
    while (chain.back().degree() >= 1) {
      IntPoly r = pseudo_rem_signed(chain[chain.size() - 2], chain.back());
      if (r.is_zero()) break;
      r = poly_primitive(r);
      for (auto& c : r.c) c = -c;
      chain.push_back(std::move(r));
    }
  }
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

int SturmChain::variations_at(const Rat& x) const {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(sign_at(q, x));
  return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& q : chain)
    signs.push_back(q.is_zero() ? 0 : sgn(q.lead()));
  return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& q : chain) {
    if (q.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sgn(q.lead());
    if (q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
  if (a >= b) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmChain::count_real_roots() const {
  return variations_at_neg_inf() - variations_at_pos_inf();
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const IntPoly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  if (p.degree() < 1) return out;
  SturmChain sc(p);
  int total = sc.count_real_roots();
  if (total == 0) return out;
  Rat bound = cauchy_root_bound(sc.squarefree);
  struct Seg {
    Rat lo, hi;
    int count;
  };
  std::vector<Seg> stack{{-bound, bound, sc.count_roots(-bound, bound)}};
  std::vector<Seg> isolated;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      isolated.push_back(s);
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    if (sign_at(sc.squarefree, mid) == 0) {
      // exact root at the midpoint: record it, then split around it
      isolated.push_back({mid, mid, 1});
      Rat quarter = (s.hi - s.lo) / 4;
      // roots are simple, so a small punctured neighbourhood works
      Rat eps = quarter;
      while (sc.count_roots(mid - eps, mid) + sc.count_roots(mid, mid + eps) > 1)
        eps /= 2;
      int left = sc.count_roots(s.lo, mid - eps);
      int right = sc.count_roots(mid + eps, s.hi);
      if (left > 0) stack.push_back({s.lo, mid - eps, left});
      if (right > 0) stack.push_back({mid + eps, s.hi, right});
      continue;
    }
    int left = sc.count_roots(s.lo, mid);
    int right = s.count - left;
    if (left > 0) stack.push_back({s.lo, mid, left});
    if (right > 0) stack.push_back({mid, s.hi, right});
  }
  for (auto& s : isolated) out.push_back({s.lo, s.hi});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::pair<Rat, Rat> refine_root(const SturmChain& sc, Rat lo, Rat hi, const Rat& width) {
  const IntPoly& f = sc.squarefree;
  if (lo == hi) return {lo, hi};
  int slo = sign_at(f, lo);
  int shi = sign_at(f, hi);
  if (shi == 0) return {hi, hi};
  if (slo == 0) {
    // the tracked root is strictly inside (lo, hi]; move lo off the root
    Rat step = (hi - lo) / 4;
    while (sc.count_roots(lo + step, hi) != 1) step /= 2;
    lo += step;
    slo = sign_at(f, lo);
    if (slo == 0) return {lo, lo};
  }
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    int sm = sign_at(f, mid);
    if (sm == 0) return {mid, mid};
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::pair<Rat, Rat> largest_real_root(const IntPoly& p, const Rat& rel_width) {
  SturmChain sc(p);
  Rat bound = cauchy_root_bound(sc.squarefree) + 1;
  if (sc.count_roots(-bound, bound) == 0)
    throw PreconditionError("largest_real_root: no real roots");
  Rat lo = -bound, hi = bound;
  // bisect down to a single root in (lo, hi], keeping it the largest
  while (sc.count_roots(lo, hi) > 1) {
    Rat mid = (lo + hi) / 2;
    if (sc.count_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  auto iv = refine_root(sc, lo, hi, Rat(1, 16));
  lo = iv.first;
  hi = iv.second;
  // relative refinement; once the enclosure has a definite sign the width
  // target scales with the root so small radii keep full relative precision
  while (lo != hi) {
    Rat scale(1);
    if (lo > 0)
      scale = lo;
    else if (hi < 0)
      scale = -hi;
    if (hi - lo <= rel_width * scale) break;
    auto r = refine_root(sc, lo, hi, (hi - lo) / 2);
    lo = r.first;
    hi = r.second;
  }
  return {lo, hi};
}

long euler_phi(long d) {
  long result = d;
  for (long p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      result -= result / p;
    }
  }
  if (d > 1) result -= result / d;
  return result;
}

const IntPoly& cyclotomic_poly(long d) {
  static std::map<long, IntPoly> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  // x^d - 1 divided by the product of lower cyclotomics
  std::vector<Int> xd(d + 1, Int(0));
  xd[0] = -1;
  xd[d] = 1;
  IntPoly num((std::vector<Int>(xd)));
  for (long e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto q = poly_divide_exact(num, cyclotomic_poly(e));
    num = *q;
  }
  return cache.emplace(d, std::move(num)).first->second;
}

UnitCircleTest unit_circle_test(const IntPoly& p) {
  UnitCircleTest t;
  if (p.is_zero() || p.lead() != 1) return t;
  t.applies = true;
  IntPoly q = p;
  while (!q.is_zero() && q.c[0] == 0) {
    q.c.erase(q.c.begin());
    ++t.power_of_x;
  }
  if (q.degree() == 0) {
    t.is_product = true;
    t.radius_exactly_zero = t.power_of_x > 0;
    return t;
  }
  // necessary: constant term of a cyclotomic product is +-1
  if (abs(q.c[0]) != 1) return t;
  int deg0 = q.degree();
  long dmax = 2L * deg0 * deg0 + 2;
  for (long d = 1; d <= dmax && q.degree() > 0; ++d) {
    if (euler_phi(d) > q.degree()) continue;
    for (;;) {
      auto quo = poly_divide_exact(q, cyclotomic_poly(d));
      if (!quo) break;
      q = *quo;
      if (q.degree() == 0) break;
    }
  }
  if (q.degree() == 0 && q.c[0] == 1) {
    t.is_product = true;
    t.radius_exactly_one = true;
  }
  return t;
}

IntPoly rat_poly_to_primitive_int(const RatPoly& p) {
  if (p.is_zero()) return IntPoly();
  Int l(1);
  for (const auto& c : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Int> ic(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Rat v = p.c[i] * Rat(l);
    ic[i] = v.get_num();
  }
  return poly_primitive(IntPoly(std::move(ic)));
}

RatPoly int_poly_to_rat(const IntPoly& p) {
  std::vector<Rat> c(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) c[i] = Rat(p.c[i]);
  return RatPoly(std::move(c));
}

RatPoly gauss_poly_to_rat(const GaussPoly& p) {
  std::vector<Rat> c(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i].im != 0)
      throw PreconditionError("polynomial has non-real coefficients");
    c[i] = p.c[i].re;
  }
  return RatPoly(std::move(c));
}

GaussPoly conj_poly(const GaussPoly& p) {
  GaussPoly r = p;
  for (auto& c : r.c) c = c.conj();
  return r;
}

GaussPoly interpolate(const std::vector<Rat>& xs, const std::vector<GaussRat>& ys) {
  if (xs.size() != ys.size()) throw PreconditionError("interpolate: size mismatch");
  const size_t n = xs.size();
  // Newton form with exact divided differences
  std::vector<GaussRat> dd(ys);
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i) {
      GaussRat num = dd[i] - dd[i - 1];
      Rat den = xs[i] - xs[i - level];
      dd[i] = num / GaussRat(den);
      if (i == level) break;
    }
  GaussPoly result;
  GaussPoly basis = GaussPoly::constant(GaussRat(Rat(1)));
  for (size_t i = 0; i < n; ++i) {
    result = result + basis * dd[i];
    GaussPoly lin(std::vector<GaussRat>{GaussRat(-xs[i]), GaussRat(Rat(1))});
    basis = basis * lin;
  }
  return result;
}

}  // namespace cohomdyn
