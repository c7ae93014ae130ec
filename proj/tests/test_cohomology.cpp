#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cohomdyn/cohomology.hpp"

using namespace cohomdyn;

namespace {

// Independent sign oracle: interleaved exterior algebra on 2k generators
// g_0..g_{2k-1} where dz_a -> a and dzbar_a -> k+a. A term is a generator
// sequence with an explicit bubble-sort sign; wedge is concatenation.
struct NaiveTerm {
  std::vector<int> gens;
  GaussRat coeff;
};

std::optional<std::pair<std::vector<int>, int>> sort_with_sign(std::vector<int> g) {
  int sign = 1;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j + 1 < g.size() - i; ++j) {
      if (g[j] == g[j + 1]) return std::nullopt;
      if (g[j] > g[j + 1]) {
        std::swap(g[j], g[j + 1]);
        sign = -sign;
      }
    }
  return std::make_pair(g, sign);
}

using NaiveClass = std::map<std::vector<int>, GaussRat>;

NaiveClass to_naive(const CohomClass& c) {
  NaiveClass out;
  for (const auto& [key, v] : c.terms) {
    std::vector<int> gens;
    for (int a : key.first) gens.push_back(a);
    for (int b : key.second) gens.push_back(c.k + b);
    out[gens] = v;  // split form is already sorted: dz block then dzbar block
  }
  return out;
}

NaiveClass naive_wedge(const NaiveClass& a, const NaiveClass& b) {
  NaiveClass out;
  for (const auto& [ga, va] : a)
    for (const auto& [gb, vb] : b) {
      std::vector<int> cat = ga;
      cat.insert(cat.end(), gb.begin(), gb.end());
      auto sorted = sort_with_sign(cat);
      if (!sorted) continue;
      GaussRat c = va * vb;
      if (sorted->second < 0) c = -c;
      auto it = out.find(sorted->first);
      if (it == out.end())
        out.emplace(sorted->first, c);
      else {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

CohomClass random_class(const TorusModel& m, int p, int q, std::mt19937_64& rng) {
  CohomClass c(m.k, p, q);
  auto ps = combinations(m.k, p);
  auto qs = combinations(m.k, q);
  std::uniform_int_distribution<long> d(-3, 3);
  for (const auto& I : ps)
    for (const auto& J : qs)
      c.add_term(I, J, GaussRat(Rat(d(rng)), Rat(d(rng))));
  return c;
}

}  // namespace

TEST_CASE("wedge matches the naive interleaved-form oracle") {
  std::mt19937_64 rng(31337);
  for (int k = 2; k <= 3; ++k) {
    TorusModel m(k);
    for (int trial = 0; trial < 30; ++trial) {
      int p1 = (int)(rng() % (k + 1)), q1 = (int)(rng() % (k + 1));
      int p2 = (int)(rng() % (k + 1 - p1)), q2 = (int)(rng() % (k + 1 - q1));
      CohomClass a = random_class(m, p1, q1, rng);
      CohomClass b = random_class(m, p2, q2, rng);
      CHECK(to_naive(wedge(a, b)) == naive_wedge(to_naive(a), to_naive(b)));
    }
  }
}

TEST_CASE("wedge basics") {
  TorusModel m(2);
  CohomClass e11(m.k, 1, 1), e22(m.k, 1, 1);
  e11.add_term({0}, {0}, GaussRat(Rat(1)));
  e22.add_term({1}, {1}, GaussRat(Rat(1)));

  CHECK(wedge(e11, e11).is_zero());  // repeated generator
  // split-form sign: dz1 dzb1 dz2 dzb2 = -dz1 dz2 dzb1 dzb2
  CohomClass w = wedge(e11, e22);
  CHECK(w.coeff({0, 1}, {0, 1}) == GaussRat(Rat(-1)));
  // (1,1)-classes commute
  CHECK(wedge(e11, e22) == wedge(e22, e11));

  CHECK_THROWS_AS(wedge(w, w), PreconditionError);  // degree overflow
}

TEST_CASE("graded commutativity and associativity on random classes") {
  std::mt19937_64 rng(777);
  TorusModel m(3);
  for (int trial = 0; trial < 25; ++trial) {
    int p1 = (int)(rng() % 2), q1 = (int)(rng() % 2);
    int p2 = (int)(rng() % 2), q2 = (int)(rng() % 2);
    int p3 = (int)(rng() % (3 - p1 - p2 + 1)), q3 = (int)(rng() % (3 - q1 - q2 + 1));
    CohomClass a = random_class(m, p1, q1, rng);
    CohomClass b = random_class(m, p2, q2, rng);
    CohomClass c = random_class(m, p3, q3, rng);
    // a^b = (-1)^{deg a deg b} b^a
    CohomClass ab = wedge(a, b);
    CohomClass ba = wedge(b, a);
    long s = (long)(p1 + q1) * (p2 + q2);
    CHECK(ab == (s % 2 == 0 ? ba : -ba));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("integration normalization") {
  TorusModel m(2);
  // volume form integrates to 1
  GaussRat half_i = gauss_i() * GaussRat(make_rat(1, 2));
  CohomClass f1(m.k, 1, 1), f2(m.k, 1, 1);
  f1.add_term({0}, {0}, half_i);
  f2.add_term({1}, {1}, half_i);
  CHECK(integrate(m, wedge(f1, f2)) == Rat(1));

  // omega_0^2 integrates to 2 (binomial cross term)
  CohomClass w0 = standard_kahler(m);
  CHECK(integrate(m, wedge(w0, w0)) == Rat(2));

  CHECK_THROWS_AS(integrate(m, w0), PreconditionError);  // wrong bidegree
}

TEST_CASE("kahler and nef constructors") {
  TorusModel m(2);
  GaussMat h(2, 2);
  h(0, 0) = GaussRat(Rat(2));
  h(0, 1) = h(1, 0) = GaussRat(Rat(1));
  h(1, 1) = GaussRat(Rat(1));
  CHECK_NOTHROW(kahler_class(m, HermitianForm(h)));  // leading minors 2, 1

  GaussMat s(2, 2);
  s(0, 0) = GaussRat(Rat(1));
  CHECK_THROWS_AS(kahler_class(m, HermitianForm(s)), PreconditionError);
  CHECK_NOTHROW(nef_class(m, HermitianForm(s)));  // boundary of the cone

  GaussMat ind(2, 2);
  ind(0, 0) = GaussRat(Rat(1));
  ind(1, 1) = GaussRat(Rat(-1));
  CHECK_THROWS_AS(nef_class(m, HermitianForm(ind)), PreconditionError);

  // cone convexity at the level of representatives
  GaussMat h2 = GaussMat::identity(2);
  CHECK(kahler_class(m, HermitianForm(h)) + kahler_class(m, HermitianForm(h2)) ==
        kahler_class(m, HermitianForm(h + h2)));
}

TEST_CASE("real basis of H^{1,1}") {
  for (int k = 1; k <= 3; ++k) {
    TorusModel m(k);
    auto basis = real_basis_H11(m);
    CHECK((long)basis.size() == (long)k * k);
    for (const auto& b : basis) CHECK(is_real_class(b));
    // coordinates round-trip
    std::mt19937_64 rng(k);
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Rat> coords(basis.size());
    for (auto& x : coords) x = make_rat(d(rng), 1 + (long)(rng() % 3));
    CohomClass c = class_from_real_h11(m, coords);
    CHECK(real_h11_coordinates(m, c) == coords);
  }
}

TEST_CASE("numerical almost-equivalence") {
  TorusModel m(3);
  CohomClass theta(m.k, 1, 1), ell(m.k, 1, 1);
  GaussRat half_i = gauss_i() * GaussRat(make_rat(1, 2));
  theta.add_term({0}, {0}, half_i);
  ell.add_term({0}, {0}, half_i);
  CohomClass prod = wedge(theta, ell);  // zero already (repeated dz_1)
  CHECK(prod.is_zero());
  CohomClass zero22(m.k, 2, 2);
  CHECK(is_numerically_equiv(m, prod, zero22));

  CohomClass w0 = standard_kahler(m);
  CHECK(is_numerically_equiv(m, w0, w0));
  CHECK(!is_numerically_equiv(m, w0, w0 * GaussRat(Rat(2))));

  // nonzero nef products are not numerically trivial
  CohomClass td = wedge(theta, standard_kahler(m));
  CHECK(!is_numerically_equiv(m, td, CohomClass(m.k, 2, 2)));
}
