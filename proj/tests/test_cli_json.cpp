#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "cohomdyn/report.hpp"
#include "cohomdyn/units.hpp"

using namespace cohomdyn;

// binary and data locations are injected by CMake
#ifndef COHOMDYN_BIN
#define COHOMDYN_BIN "cohomdyn"
#endif
#ifndef COHOMDYN_DATA
#define COHOMDYN_DATA "data"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string out_file = "/tmp/cohomdyn_test_out.txt";
  std::string cmd = std::string(COHOMDYN_BIN) + " " + args + " > " + out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream os;
  os << in.rdbuf();
  return {WEXITSTATUS(rc), os.str()};
}

std::string data_path(const std::string& rel) {
  return std::string(COHOMDYN_DATA) + "/" + rel;
}

}  // namespace

TEST_CASE("class JSON round-trip") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int k = 1; k <= 3; ++k) {
    TorusModel m(k);
    for (int trial = 0; trial < 10; ++trial) {
      int p = (int)(rng() % (k + 1)), q = (int)(rng() % (k + 1));
      CohomClass c(k, p, q);
      for (const auto& I : combinations(k, p))
        for (const auto& J : combinations(k, q))
          c.add_term(I, J, GaussRat(make_rat(d(rng), 1 + (long)(rng() % 4)),
                                    make_rat(d(rng), 1 + (long)(rng() % 4))));
      CHECK(class_from_json(class_to_json(c)) == c);
    }
  }
}

TEST_CASE("automorphism and group JSON round-trip") {
  Json j = parse_json_text(R"({"model":{"k":2},
    "matrix":[[["2","0"],["1","0"]],[["1","0"],["1","0"]]]})");
  TorusAut f = aut_from_json(j);
  CHECK(f.A(0, 0) == GaussRat(Rat(2)));
  CHECK(aut_from_json(aut_to_json(f)).A == f.A);

  MatrixGroup g(TorusModel(2), {f}, {"c"});
  MatrixGroup g2 = group_from_json(group_to_json(g));
  CHECK(g2.gens.size() == 1);
  CHECK(g2.gens[0].A == f.A);
  CHECK(g2.labels == std::vector<std::string>{"c"});
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_json_text("{\n  \"a\": [1,\n}");
    CHECK(false);
  } catch (const PreconditionError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
  }
}

TEST_CASE("cli: demo runs and emits valid JSON") {
  auto r = run("demo cat-map --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["kind"] == "degree_profile");
  CHECK(j["positive_entropy"] == true);
  CHECK(j.contains("config"));
}

TEST_CASE("cli: determinism modulo the timestamp") {
  auto a = run("demo cat-map --no-timestamp");
  auto b = run("demo cat-map --no-timestamp");
  CHECK(a.out == b.out);
  // with the timestamp the reports still parse
  auto c = run("demo cat-map");
  CHECK(parse_json_text(c.out).contains("timestamp_unix"));
}

TEST_CASE("cli: degrees on a model file") {
  auto r = run("degrees --input " + data_path("models/cat_map.json") +
               " --growth 12 --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["degrees"].size() == 3);
  CHECK(j["growth"]["roots"].size() == 12);
}

TEST_CASE("cli: raw model input") {
  auto r = run("degrees --input " + data_path("models/raw_cat_h11.json") +
               " --raw --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["positive_entropy"] == true);
}

TEST_CASE("cli: group analyze report") {
  auto r = run("group analyze --input " + data_path("groups/unit_q2.json") +
               " --word-cap 3 --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["chain_built"] == true);
  CHECK(j["phi_rank"] == 1);
  CHECK(j["rank_saturates"] == true);
}

TEST_CASE("cli: hodge check") {
  auto r = run("hodge check --k 2 --trials 5 --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["ok"] == true);
}

TEST_CASE("cli: units build emits a loadable group") {
  std::string emit = "/tmp/cohomdyn_test_group.json";
  auto r = run("units build --poly x^2-2 --height 5 --emit " + emit + " --no-timestamp");
  CHECK(r.exit_code == 0);
  std::ifstream in(emit);
  std::ostringstream os;
  os << in.rdbuf();
  MatrixGroup g = group_from_json(parse_json_text(os.str()));
  CHECK(g.gens.size() == 1);
  CHECK(g.gens[0].A(0, 1) == GaussRat(Rat(4)));
}

TEST_CASE("cli: units report re-parses") {
  auto r = run("units build --poly x^3-3x-1 --height 5 --no-timestamp");
  CHECK(r.exit_code == 0);
  Json j = parse_json_text(r.out);
  CHECK(j["kind"] == "units_build");
  CHECK(j["units_power_basis"].size() == 2);
  MatrixGroup g = group_from_json(j["group"]);
  CHECK(g.gens.size() == 2);
}

TEST_CASE("cli: exit codes") {
  CHECK(run("not-a-subcommand").exit_code == 64);
  CHECK(run("").exit_code == 64);
  // precondition error: non-unit determinant
  std::string bad = "/tmp/cohomdyn_bad_model.json";
  {
    std::ofstream out(bad);
    out << R"({"model":{"k":2},"matrix":[[["2","0"],["0","0"]],[["0","0"],["1","0"]]]})";
  }
  CHECK(run("degrees --input " + bad).exit_code == 1);
  // malformed JSON: parse error
  {
    std::ofstream out(bad);
    out << "{ nonsense";
  }
  CHECK(run("degrees --input " + bad).exit_code == 1);
}

TEST_CASE("cli: schema printing and text format") {
  auto r = run("--schema");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("torus_automorphism") != std::string::npos);
  auto t = run("demo cat-map --format text --no-timestamp");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("positive_entropy") != std::string::npos);
}

TEST_CASE("numerical equivalence is an equivalence relation") {
  TorusModel m(2);
  std::mt19937_64 rng(4242);
  auto rand_real = [&]() {
    std::uniform_int_distribution<long> d(-3, 3);
    std::vector<Rat> coords(4);
    for (auto& c : coords) c = Rat(d(rng));
    return class_from_real_h11(m, coords);
  };
  for (int trial = 0; trial < 10; ++trial) {
    CohomClass a = rand_real(), b = rand_real(), c = rand_real();
    CHECK(is_numerically_equiv(m, a, a));
    CHECK(is_numerically_equiv(m, a, b) == is_numerically_equiv(m, b, a));
    if (is_numerically_equiv(m, a, b) && is_numerically_equiv(m, b, c))
      CHECK(is_numerically_equiv(m, a, c));
  }
}
