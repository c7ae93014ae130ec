// Acceptance suite: runs every verification criterion end to end and prints
// one PASS/FAIL line per criterion. Exit code 0 only when all pass.
//
// Usage: cohomdyn_acceptance [--data <dir>]

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cohomdyn/report.hpp"
#include "cohomdyn/units.hpp"

using namespace cohomdyn;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report_line(int id, bool pass, const std::string& what, double seconds) {
  std::ostringstream os;
  os << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << what << " ("
     << seconds << " s)";
  std::cout << os.str() << std::endl;
  if (!pass) ++g_failures;
}

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

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

// exact containment check for values of the form (a + b sqrt5)/c
bool encloses_sqrt5(const RatInterval& iv, long a, long b, long c) {
  auto below = [&](const Rat& x) {
    Rat t = (Rat(c) * x - Rat(a)) / Rat(b);
    if (t < 0) return true;
    return t * t <= 5;
  };
  auto above = [&](const Rat& x) {
    Rat t = (Rat(c) * x - Rat(a)) / Rat(b);
    if (t < 0) return false;
    return t * t >= 5;
  };
  return below(iv.lo) && above(iv.hi);
}

TorusAut random_gauss_unit_aut(int k, std::mt19937_64& rng) {
  GaussMat a = GaussMat::identity(k);
  std::uniform_int_distribution<long> d(-2, 2);
  for (int step = 0; step < 8; ++step) {
    int i = (int)(rng() % k), j = (int)(rng() % k);
    if (i == j) continue;
    GaussMat e = GaussMat::identity(k);
    e(i, j) = GaussRat(Rat(d(rng)), Rat(d(rng)));
    a = a * e;
  }
  return TorusAut(TorusModel(k), a);
}

std::string g_data_dir = "data";

Json load_json(const std::string& rel) {
  std::ifstream in(g_data_dir + "/" + rel);
  if (!in) throw PreconditionError("cannot open data file: " + rel);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_json_text(os.str());
}

// criterion 1: cat-map profile with certified 1e-9 relative error
void criterion_1() {
  Timer t;
  bool ok = true;
  TorusAut f = cat_map();
  DegreeProfile prof = degree_profile(f);
  ok = ok && prof.degrees.size() == 3;
  ok = ok && prof.degrees[0].exactly_one && prof.degrees[2].exactly_one;
  // d_1 = (7 + 3 sqrt5)/2, exact bracketing
  ok = ok && encloses_sqrt5(prof.degrees[1].enclosure, 7, 3, 2);
  Rat rel_tol = make_rat(1, 1000000000L);
  ok = ok && prof.degrees[1].enclosure.width() <= rel_tol * prof.degrees[1].enclosure.lo;
  // h_a = log((7+3 sqrt5)/2) = 1.924847...
  double ha = rat_to_double(prof.h_a.mid());
  ok = ok && std::abs(ha - 1.9248473002384139) <= 1e-6;
  ok = ok && prof.positive_entropy;
  double secs = t.seconds();
  ok = ok && secs < 1.0;
  report_line(1, ok, "cat-map degree profile (1, (7+3sqrt5)/2, 1), h_a, < 1 s", secs);
}

// criterion 2: growth-limit convergence at n = 20 within 1%
void criterion_2() {
  Timer t;
  TorusAut f = cat_map();
  GrowthEstimate est =
      growth_limit_estimate(f, 1, HermitianForm(GaussMat::identity(2)), 20);
  bool ok = est.final_rel_gap <= 0.01;
  double secs = t.seconds();
  ok = ok && secs < 5.0;
  report_line(2, ok, "growth-limit |a_20 - d_1|/d_1 <= 0.01 with exact integrals", secs);
}

// criterion 3: Hodge-Riemann signatures, k = 2 and k = 3, 20 random tuples
void criterion_3() {
  Timer t;
  bool ok = true;
  TorusModel m2(2);
  for (int trial = 0; trial < 20 && ok; ++trial) {
    std::mt19937_64 rng(500 + trial);
    auto v = signature_check(m2, {kahler_class(m2, random_kahler_form(2, rng))});
    ok = v.ok && v.full == Inertia{3, 1, 0};
  }
  TorusModel m3(3);
  for (int trial = 0; trial < 20 && ok; ++trial) {
    std::mt19937_64 rng(900 + trial);
    std::vector<CohomClass> cs;
    for (int i = 0; i < 2; ++i) cs.push_back(kahler_class(m3, random_kahler_form(3, rng)));
    auto v = signature_check(m3, cs);
    ok = v.ok && v.full == Inertia{8, 1, 0} && v.primitive == Inertia{8, 0, 0};
  }
  double secs = t.seconds();
  ok = ok && secs < 30.0;
  report_line(3, ok, "exact signature (k^2-1, 1, 0) and PD primitive part, 20 trials", secs);
}

// criterion 4: mixed HR inequality on 100 random PSD-nef triples, k = 2, 3
void criterion_4() {
  Timer t;
  int violations = 0;
  for (int k : {2, 3}) {
    TorusModel m(k);
    for (int trial = 0; trial < 100; ++trial) {
      std::mt19937_64 rng(7000 + 100 * k + trial);
      std::vector<CohomClass> cs;
      for (int i = 0; i < k - 2; ++i) cs.push_back(nef_class(m, random_psd_form(k, rng)));
      CohomClass alpha = nef_class(m, random_psd_form(k, rng));
      CohomClass beta = nef_class(m, random_psd_form(k, rng));
      if (!hr_inequality(m, cs, alpha, beta).holds) ++violations;
    }
  }
  report_line(4, violations == 0, "mixed HR inequality exact on 100 PSD triples, k=2,3",
              t.seconds());
}

// criterion 5: rho_{p,q} bound and log-concavity on 50 random matrices
void criterion_5() {
  Timer t;
  bool ok = true;
  int done = 0;
  for (int k : {2, 3}) {
    for (int trial = 0; trial < 25; ++trial) {
      std::mt19937_64 rng(31000 + 100 * k + trial);
      TorusAut f = random_gauss_unit_aut(k, rng);
      for (int p = 0; p <= k && ok; ++p)
        for (int q = 0; q <= k && ok; ++q) ok = rho_pq(f, p, q).holds;
      DegreeProfile prof = degree_profile(f);
      ok = ok && prof.log_concavity_ok && prof.unimodal_ok;
      ++done;
      if (!ok) break;
    }
  }
  ok = ok && done == 50;
  report_line(5, ok, "rho_{p,q} <= sqrt(d_p d_q) and log-concavity, 50 matrices", t.seconds());
}

// criterion 6: relative degree product formula on 10 block-triangular examples
void criterion_6() {
  Timer t;
  bool ok = true;
  bool interior_seen = false;
  std::vector<std::pair<TorusAut, int>> cases;
  GaussMat cat = gm({{2, 1}, {1, 1}});
  GaussMat pell = gm({{3, 4}, {2, 3}});
  GaussMat one1 = GaussMat::identity(1);
  auto block = [&](std::initializer_list<GaussMat> blocks) {
    int k = 0;
    for (const auto& b : blocks) k += b.rows;
    GaussMat out(k, k);
    int off = 0;
    for (const auto& b : blocks) {
      for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) out(off + i, off + j) = b(i, j);
      off += b.rows;
    }
    return out;
  };
  // diag and genuinely lower-triangular couplings
  cases.push_back({TorusAut(TorusModel(3), block({cat, one1})), 2});
  cases.push_back({TorusAut(TorusModel(3), block({one1, cat})), 1});
  cases.push_back({TorusAut(TorusModel(4), block({cat, pell})), 2});
  cases.push_back({TorusAut(TorusModel(4), block({pell, cat})), 2});
  cases.push_back({TorusAut(TorusModel(3), block({cat, one1})), 2});
  {
    GaussMat a = block({cat, pell});
    a(2, 0) = GaussRat(Rat(1));  // coupling below the diagonal
    cases.push_back({TorusAut(TorusModel(4), a), 2});
    GaussMat b = block({cat, cat});
    b(3, 1) = GaussRat(Rat(2));
    cases.push_back({TorusAut(TorusModel(4), b), 2});
    GaussMat c = block({one1, pell});
    c(1, 0) = GaussRat(Rat(3));
    cases.push_back({TorusAut(TorusModel(3), c), 1});
    GaussMat d = block({pell, one1});
    d(2, 1) = GaussRat(Rat(-1));
    cases.push_back({TorusAut(TorusModel(3), d), 2});
    GaussMat e = block({cat, cat});
    cases.push_back({TorusAut(TorusModel(4), e), 2});
  }
  int count = 0;
  for (auto& [aut, l] : cases) {
    FiberedAut fa(aut, l);
    auto rows = theorem_product_check(fa);
    for (const auto& r : rows) {
      if (!r.consistent) ok = false;
      if (r.interior) interior_seen = true;
    }
    ++count;
  }
  ok = ok && count == 10 && interior_seen;
  report_line(6, ok, "relative-degree product formula on 10 fibrations, interior max seen",
              t.seconds());
}

// criterion 7: unit construction
void criterion_7() {
  Timer t;
  bool ok = true;
  TotallyRealField q2(parse_int_poly("x^2-2"));
  UnitSystem s2 = unit_search(q2, 5);
  ok = ok && s2.matrices.size() == 1;
  RatMat expect(2, 2);
  expect(0, 0) = Rat(3);
  expect(0, 1) = Rat(4);
  expect(1, 0) = Rat(2);
  expect(1, 1) = Rat(3);
  ok = ok && s2.matrices[0] == expect;

  TotallyRealField q3(parse_int_poly("x^3-3x-1"));
  MatrixGroup g3 = build_positive_entropy_group(q3, 5);
  ok = ok && g3.gens.size() == 2 && g3.commuting();
  for (const auto& gen : g3.gens) ok = ok && gen.det() == GaussRat(Rat(1));
  EntropyAudit audit = check_words_positive_entropy(g3, 3);
  ok = ok && audit.all_positive;
  double secs = t.seconds();
  ok = ok && secs < 60.0;
  report_line(7, ok, "units build: [[3,4],[2,3]] exactly; cubic rank-2 group in SL(3,Z)",
              secs);
}

// bundled positive-entropy groups reused by criteria 8-10
std::vector<MatrixGroup> bundled_groups() {
  std::vector<MatrixGroup> out;
  out.push_back(group_from_json(load_json("groups/cat.json")));
  out.push_back(group_from_json(load_json("groups/unit_q2.json")));
  out.push_back(group_from_json(load_json("groups/unit_cubic.json")));
  return out;
}

// criterion 8: rank saturation and the k-1 bound
void criterion_8() {
  Timer t;
  bool ok = true;
  for (const auto& g : bundled_groups()) {
    InvariantChain chain = invariant_chain(g, 3);
    PhiImage img = phi_map(g, chain, 3);
    int k = g.model.k;
    ok = ok && img.rank <= k - 1;  // Tits-type bound (dimension of phi)
    if ((int)g.gens.size() == k - 1)
      ok = ok && img.rank == k - 1 && img.rank_certified;  // saturation
  }
  report_line(8, ok, "phi-image rank exactly k-1 on degree-k unit groups, never more",
              t.seconds());
}

// criterion 9: ||phi(g)|| >= (1/2) log d_{k-1}(g) for all short words
void criterion_9() {
  Timer t;
  bool ok = true;
  for (const auto& g : bundled_groups()) {
    InvariantChain chain = invariant_chain(g, 3);
    for (const auto& row : phi_bound_check(g, chain, 3)) ok = ok && row.holds;
  }
  report_line(9, ok, "phi lower bound holds for every word of length <= 3", t.seconds());
}

// criterion 10: ker phi = zero-entropy elements on all short words
void criterion_10() {
  Timer t;
  bool ok = true;
  for (const auto& g : bundled_groups()) {
    InvariantChain chain = invariant_chain(g, 3);
    for (const auto& row : zero_entropy_kernel_check(g, chain, 3))
      ok = ok && row.consistent;
  }
  report_line(10, ok, "phi(g) = 0 iff exact zero entropy, all words <= 3", t.seconds());
}

// criterion 11: Gromov-Yomdin empirics
void criterion_11() {
  Timer t1;
  bool ok = true;
  TorusMap cat2(2, {2, 1, 1, 1});
  auto est2 = entropy_estimate(
      cat2, {make_rat(1, 20), make_rat(1, 50), make_rat(1, 100)}, 12, 1024);
  ok = ok && est2.h_est >= 0.77 && est2.h_est <= 1.16;
  ok = ok && est2.h_est <= est2.h_ref + 0.1;
  double secs2 = t1.seconds();
  ok = ok && secs2 < 60.0;

  Timer t2;
  TorusMap cat4(4, {2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 2, 1, 0, 0, 1, 1});
  auto est4 = entropy_estimate(cat4, {make_rat(3, 20), make_rat(1, 10)}, 5, 64);
  double target = 2 * 0.9624236501192069;
  ok = ok && std::abs(est4.h_est - target) <= 0.25 * target;
  ok = ok && est4.h_est <= est4.h_ref + 0.1;
  double secs4 = t2.seconds();
  ok = ok && secs4 < 60.0;
  report_line(11, ok, "separated-set entropy estimates match h_a (R^2 and R^4)",
              secs2 + secs4);
}

// criterion 12: exactness regression, no tolerance anywhere
void criterion_12() {
  Timer t;
  bool ok = true;
  Json bundle = load_json("zero_entropy/matrices.json");
  int checked = 0;
  for (const Json& aj : bundle.at("automorphisms")) {
    TorusAut f = aut_from_json(aj);
    if (is_positive_entropy(f)) ok = false;
    ++checked;
  }
  ok = ok && checked == 20;
  for (const auto& g : bundled_groups()) {
    for (const auto& w : enumerate_words((int)g.gens.size(), 3)) {
      TorusAut a = word_aut(g, w);
      if (a.is_identity()) continue;
      if (!is_positive_entropy(a)) ok = false;
    }
  }
  report_line(12, ok, "cyclotomic zero-entropy test: 20 bundled parabolic/finite-order",
              t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--data") g_data_dir = argv[i + 1];
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 2;
  }
  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return 1;
}
