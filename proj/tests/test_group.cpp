#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cohomdyn/units.hpp"

using namespace cohomdyn;

namespace {

GaussMat gm(std::initializer_list<std::initializer_list<long>> rows) {
  GaussMat m((int)rows.size(), (int)rows.begin()->size());
  int i = 0;
  for (auto& r : rows) {
    int j = 0;
    for (long v : r) m(i, j++) = GaussRat(Rat(v));
    ++i;
  }
  return m;
}

TorusAut cat_map() { return TorusAut(TorusModel(2), gm({{2, 1}, {1, 1}})); }

MatrixGroup cat_group() { return MatrixGroup(TorusModel(2), {cat_map()}, {"c"}); }

MatrixGroup cubic_group() {
  TotallyRealField f(parse_int_poly("x^3-3x-1"));
  return build_positive_entropy_group(f, 5);
}

}  // namespace

TEST_CASE("word machinery") {
  auto words = enumerate_words(1, 3);
  // reduced words over {g, g^-1} of length <= 3: g, g^-1, gg, g^-1g^-1, ...
  CHECK(words.size() == 6);
  auto words2 = enumerate_words(2, 2);
  CHECK(words2.size() == 4 + 4 * 3);

  MatrixGroup g = cat_group();
  CHECK(word_aut(g, {1, 1}).A == cat_map().A * cat_map().A);
  CHECK(word_aut(g, {1, -1}).is_identity());
}

TEST_CASE("derived series probe") {
  // abelian group: solvable at depth 1
  auto rep = derived_series_probe(cat_group(), 3, 2);
  CHECK(rep.solvable);
  CHECK(rep.depth == 1);

  // unipotent pair: nilpotent, solvable at small depth
  TorusModel m3(3);
  TorusAut u1(m3, gm({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  TorusAut u2(m3, gm({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}));
  MatrixGroup uni(m3, {u1, u2});
  auto rep2 = derived_series_probe(uni, 4, 2);
  CHECK(rep2.solvable);
  CHECK(rep2.depth <= 3);

  // free-ish pair: inconclusive at the cap
  TorusModel m2(2);
  TorusAut a(m2, gm({{1, 2}, {0, 1}}));
  TorusAut b(m2, gm({{1, 0}, {2, 1}}));
  MatrixGroup free_pair(m2, {a, b});
  auto rep3 = derived_series_probe(free_pair, 3, 2, 120);
  CHECK(!rep3.solvable);
}

TEST_CASE("ping-pong certificate") {
  TorusAut g = cat_map();
  // h = conjugate of g by the unipotent [[1,1],[0,1]]
  GaussMat t = gm({{1, 1}, {0, 1}});
  GaussMat ti = gm({{1, -1}, {0, 1}});
  TorusAut h(TorusModel(2), t * g.A * ti);
  auto cert = ping_pong_certificate(g, h, 10);
  REQUIRE(cert.has_value());
  CHECK(cert->n <= 10);
  CHECK(verify_ping_pong(g, h, *cert));

  // g paired with itself: always absent
  CHECK(!ping_pong_certificate(g, g, 6).has_value());

  // commuting pair: absent (common eigenvectors obstruct disjointness)
  CHECK(!ping_pong_certificate(g, power(g, 2), 6).has_value());

  // zero-entropy input rejected
  TorusAut par(TorusModel(2), gm({{1, 1}, {0, 1}}));
  CHECK_THROWS_AS(ping_pong_certificate(par, g, 5), PreconditionError);
}

TEST_CASE("joint eigenrays of the cat map") {
  std::vector<RatMat> mats;
  RatMat m(2, 2);
  m(0, 0) = Rat(2);
  m(0, 1) = Rat(1);
  m(1, 0) = Rat(1);
  m(1, 1) = Rat(1);  // symmetric: A^T = A
  mats.push_back(m);
  auto rays = joint_eigenrays(mats);
  REQUIRE(rays.size() == 1);  // one quadratic factor, handled per embedding
  REQUIRE(rays[0].field);
  CHECK(rays[0].field->degree() == 2);
  CHECK(rays[0].field->real_root_count() == 2);
  // eigenvector (1, lambda - 2): embeddings give the two eigen-directions
  RatInterval second = rays[0].vec[1].embed(1, make_rat(1, 1L << 30));
  CHECK(rat_to_double(second.mid()) ==
        doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-8));
}

TEST_CASE("common eigenray: cat map expands along the certified ray") {
  auto ce = common_eigenray(cat_group());
  REQUIRE(!ce.exact_rational);
  REQUIRE(ce.characters.size() == 1);
  // character is lambda^2 = (3+sqrt5)^2/4 = (7+3 sqrt5)/2
  CHECK(rat_to_double(ce.characters[0].mid()) ==
        doctest::Approx(6.854101966249685).epsilon(1e-8));
}

TEST_CASE("common eigenray: rank-1 unit group") {
  TotallyRealField f(parse_int_poly("x^2-2"));
  MatrixGroup g = build_positive_entropy_group(f, 5);
  auto ce = common_eigenray(g);
  // character (3+2 sqrt2)^2 = 17+12 sqrt2
  CHECK(rat_to_double(ce.characters[0].mid()) ==
        doctest::Approx(17 + 12 * std::sqrt(2.0)).epsilon(1e-8));
  // the ray direction is an eigenvector of A^T = [[3,2],[4,3]]: (1, sqrt2)
  RatInterval c1 = ce.ray.vec[1].embed(ce.root_index, make_rat(1, 1L << 30));
  CHECK(std::abs(rat_to_double(c1.mid())) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("common eigenray: parabolic map has a rational ray") {
  TorusModel m2(2);
  TorusAut par(m2, gm({{1, 1}, {0, 1}}));
  MatrixGroup g(m2, {par});
  auto ce = common_eigenray(g);
  CHECK(ce.exact_rational);
  CHECK(rat_to_double(ce.characters[0].mid()) == doctest::Approx(1.0));
}

TEST_CASE("invariant chain: cat map") {
  auto chain = invariant_chain(cat_group());
  REQUIRE(chain.levels.size() == 1);
  // chi_1(g) = lambda^2, the expanding character
  CHECK(rat_to_double(chain.levels[0].characters[0].mid()) ==
        doctest::Approx(6.854101966249685).epsilon(1e-8));
}

TEST_CASE("invariant chain: cubic unit group saturates") {
  MatrixGroup g = cubic_group();
  auto chain = invariant_chain(g);
  REQUIRE(chain.levels.size() == 2);
  // characters multiply: chi_p(gh) = chi_p(g) chi_p(h) exactly at the
  // eigenvalue level
  for (int t = 0; t < 2; ++t) {
    const auto& lams = chain.level_eigenvalues[t];
    REQUIRE(lams.size() == 2);
    CHECK(lams[0] * lams[1] == lams[1] * lams[0]);
  }
}

TEST_CASE("invariant chain rejects zero-entropy groups") {
  TorusModel m2(2);
  TorusAut par(m2, gm({{1, 1}, {0, 1}}));
  MatrixGroup g(m2, {par});
  CHECK_THROWS_AS(invariant_chain(g), PreconditionError);
}

TEST_CASE("chain on diag(cat, 1): mixed factor fields") {
  TorusModel m3(3);
  TorusAut f(m3, gm({{2, 1, 0}, {1, 1, 0}, {0, 0, 1}}));
  MatrixGroup g(m3, {f});
  // the group is positive entropy (every nonidentity power of f is);
  auto chain = invariant_chain(g);
  CHECK(chain.levels.size() == 2);
}

TEST_CASE("phi map: cat map") {
  MatrixGroup g = cat_group();
  auto chain = invariant_chain(g);
  auto img = phi_map(g, chain, 3);
  CHECK(img.rank == 1);
  CHECK(img.rank_certified);
  // phi(g) = (2 log lambda), lambda = (3+sqrt5)/2
  double expect = 2 * std::log(2.618033988749895);
  for (const auto& pv : img.vectors) {
    if (pv.word == Word{1}) {
      CHECK(rat_to_double(pv.coords[0].mid()) == doctest::Approx(expect).epsilon(1e-9));
    }
    if (pv.word == Word{-1}) {
      CHECK(rat_to_double(pv.coords[0].mid()) == doctest::Approx(-expect).epsilon(1e-9));
    }
  }
  // homomorphism: phi(g.g) = 2 phi(g) within intervals
  for (const auto& pv : img.vectors)
    if (pv.word == Word{1, 1})
      CHECK(rat_to_double(pv.coords[0].mid()) ==
            doctest::Approx(2 * expect).epsilon(1e-9));
}

TEST_CASE("phi map: cubic unit group has rank 2") {
  MatrixGroup g = cubic_group();
  auto chain = invariant_chain(g);
  auto img = phi_map(g, chain, 3);
  CHECK(img.rank == 2);
  CHECK(img.rank_certified);
  CHECK(img.discreteness_margin.lo > 0);
}

TEST_CASE("phi bound holds for all short words") {
  for (MatrixGroup g : {cat_group(), cubic_group()}) {
    auto chain = invariant_chain(g);
    auto checks = phi_bound_check(g, chain, 3);
    for (const auto& row : checks) CHECK(row.holds);
    // the identity word is the equality case 0 >= 0
    CHECK(checks.front().equality_case);
  }
}

TEST_CASE("kernel characterization") {
  for (MatrixGroup g : {cat_group(), cubic_group()}) {
    auto chain = invariant_chain(g);
    auto rows = zero_entropy_kernel_check(g, chain, 3);
    for (const auto& r : rows) CHECK(r.consistent);
    // identity: phi = 0 and zero entropy
    CHECK(rows.front().phi_zero);
    CHECK(!rows.front().positive_entropy);
  }
}

TEST_CASE("full analysis pipeline") {
  auto ga = analyze_group(cubic_group(), 3);
  CHECK(ga.commuting);
  CHECK(ga.solvability.solvable);
  CHECK(ga.entropy_audit.all_positive);
  CHECK(ga.chain_built);
  CHECK(ga.phi_rank == 2);
  CHECK(ga.rank_saturates);
  CHECK(ga.phi_bound_all_hold);
  CHECK(ga.kernel_all_consistent);
}

TEST_CASE("homomorphism property of phi at the eigenvalue level") {
  MatrixGroup g = cubic_group();
  auto chain = invariant_chain(g);
  auto img = phi_map(g, chain, 2);
  // interval containment: phi(uv) in phi(u) + phi(v) for sampled pairs
  auto find = [&](const Word& w) -> const PhiVector* {
    for (const auto& pv : img.vectors)
      if (pv.word == w) return &pv;
    return nullptr;
  };
  const PhiVector* u = find({1});
  const PhiVector* v = find({2});
  const PhiVector* uv = find({1, 2});
  REQUIRE(u);
  REQUIRE(v);
  REQUIRE(uv);
  for (size_t p = 0; p < uv->coords.size(); ++p) {
    RatInterval sum = u->coords[p] + v->coords[p];
    CHECK(uv->coords[p].lo <= sum.hi);
    CHECK(sum.lo <= uv->coords[p].hi);
  }
}

TEST_CASE("mixed block group: recursion through rational eigenspaces") {
  // two commuting generators diag(cat, I) and diag(I, pell) on the k=4 torus:
  // the eigenray pool mixes two quadratic fields through the rational-kernel
  // recursion, and the chain needs 3 of the 4 rays
  TorusModel m4(4);
  TorusAut g1(m4, gm({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
  TorusAut g2(m4, gm({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 3, 4}, {0, 0, 2, 3}}));
  MatrixGroup g(m4, {g1, g2});
  REQUIRE(g.commuting());
  auto audit = check_words_positive_entropy(g, 3);
  REQUIRE(audit.all_positive);

  auto chain = invariant_chain(g, 3);
  CHECK(chain.levels.size() == 3);
  auto img = phi_map(g, chain, 2);
  // two independent generators: certified rank 2, within the bound 3
  CHECK(img.rank == 2);
  CHECK(img.rank_certified);
  auto rb = rank_bound_check(g, chain, 2);
  CHECK(rb.within_bound);
  for (const auto& row : phi_bound_check(g, chain, 2)) CHECK(row.holds);
  for (const auto& row : zero_entropy_kernel_check(g, chain, 2)) CHECK(row.consistent);
}

TEST_CASE("non-commuting unipotent pair: rational common eigenray") {
  TorusModel m3(3);
  TorusAut u1(m3, gm({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  TorusAut u2(m3, gm({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}));
  MatrixGroup g(m3, {u1, u2});
  REQUIRE(!g.commuting());
  auto ce = common_eigenray(g);
  CHECK(ce.exact_rational);
  for (const auto& chi : ce.characters) CHECK(chi.contains(Rat(1)));
}

TEST_CASE("identity group falls back to the standard Kahler ray") {
  MatrixGroup g(TorusModel(2), {});
  auto ce = common_eigenray(g);
  CHECK(ce.exact_rational);
}

TEST_CASE("unsupported input reports a not-found error") {
  // Gaussian-integer (genuinely complex) generators are outside the eigenray
  // machinery's scope
  GaussMat a(2, 2);
  a(0, 0) = gauss_i();
  a(1, 1) = GaussRat(Rat(0), Rat(-1));
  MatrixGroup g(TorusModel(2), {TorusAut(TorusModel(2), a)});
  CHECK_THROWS_AS(common_eigenray(g), PreconditionError);
}
