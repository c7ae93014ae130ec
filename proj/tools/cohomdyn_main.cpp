// cohomdyn: exact cohomological dynamics of complex-torus automorphisms.
//
// Subcommands: degrees, entropy-sim, hodge, group, units, demo.
// Exit codes: 0 success, 1 precondition error, 2 certification failure,
// 64 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cohomdyn/report.hpp"
#include "cohomdyn/units.hpp"

using namespace cohomdyn;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const Json& report, const RunConfig& cfg, const std::string& output) {
  std::string text =
      cfg.output_format == "text" ? render_text_report(report) : report.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw PreconditionError("cannot open output file: " + output);
    out << text;
  }
}

RunConfig base_config(int precision_bits, int word_cap, unsigned long seed,
                      const std::string& format, bool no_timestamp) {
  RunConfig cfg;
  cfg.precision_bits = precision_bits;
  cfg.word_cap = word_cap;
  cfg.seed = seed;
  cfg.output_format = format;
  cfg.timestamp = !no_timestamp;
  return cfg;
}

RadiusOptions radius_options(const RunConfig& cfg) {
  RadiusOptions opt;
  opt.sqrt_bits = std::max(64, cfg.precision_bits);
  return opt;
}

std::vector<Rat> parse_eps_list(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
  if (out.empty()) throw PreconditionError("empty eps schedule");
  return out;
}

TorusMap map_from_matrix_string(const std::string& s) {
  Json j = parse_json_text(s);
  int m = (int)j.size();
  std::vector<long> entries;
  for (const Json& row : j) {
    if ((int)row.size() != m) throw PreconditionError("matrix must be square");
    for (const Json& v : row) entries.push_back(v.get<long>());
  }
  return TorusMap(m, entries);
}

Json units_report(const TotallyRealField& field, const UnitSystem& sys,
                  const MatrixGroup& g, const RunConfig& cfg) {
  Json j;
  j["schema"] = "cohomdyn-report-v1";
  j["config"] = cfg.to_json();
  j["kind"] = "units_build";
  Json us = Json::array();
  for (const auto& u : sys.units) {
    Json e = Json::array();
    for (int i = 0; i < field.degree(); ++i) e.push_back(rat_to_string(u.rep.coeff(i)));
    us.push_back(e);
  }
  j["units_power_basis"] = us;
  j["regulator_minor"] = interval_json(sys.regulator_minor, cfg.decimal_digits);
  j["group"] = group_to_json(g);
  return j;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact cohomological dynamics of torus automorphisms"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  int precision_bits = 96;
  if (const char* env = std::getenv("COHOMDYN_PREC_BITS")) precision_bits = std::atoi(env);
  int word_cap = 3;
  unsigned long seed = 7;
  std::string format = "json";
  bool no_timestamp = false;
  bool show_schema = false;
  app.add_option("--precision-bits", precision_bits, "certified precision in bits");
  app.add_option("--format", format, "output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  app.add_flag("--schema", show_schema, "print the JSON schemas and exit");

  // degrees
  auto* deg = app.add_subcommand("degrees", "dynamical degrees and entropy");
  std::string deg_input, deg_output;
  bool deg_raw = false, deg_rho = false;
  int deg_growth = 0;
  deg->add_option("--input", deg_input, "model JSON file")->required();
  deg->add_flag("--raw", deg_raw, "input is a raw per-H^{p,p} matrix model");
  deg->add_option("--growth", deg_growth, "growth-limit sequence length");
  deg->add_flag("--rho", deg_rho, "include the rho_{p,q} table");
  deg->add_option("--output", deg_output, "output path (default stdout)");

  // entropy-sim
  auto* sim = app.add_subcommand("entropy-sim", "(n,eps)-separated set estimates");
  std::string sim_matrix = "[[2,1],[1,1]]", sim_eps = "0.05,0.02,0.01", sim_output;
  long sim_grid = 1024;
  int sim_nmax = 12;
  sim->add_option("--matrix", sim_matrix, "integer matrix JSON, |det| = 1");
  sim->add_option("--grid", sim_grid, "grid resolution per axis");
  sim->add_option("--eps", sim_eps, "comma-separated decreasing eps schedule");
  sim->add_option("--nmax", sim_nmax, "maximal orbit length");
  sim->add_option("--output", sim_output, "output path");

  // hodge
  auto* hodge = app.add_subcommand("hodge", "Hodge-Riemann verification");
  auto* hodge_check = hodge->add_subcommand("check", "signature / wHR / inequality trials");
  int hk = 3, htrials = 20;
  std::string hodge_output;
  hodge_check->add_option("--k", hk, "complex dimension");
  hodge_check->add_option("--trials", htrials, "number of random Kahler tuples");
  hodge_check->add_option("--seed", seed, "RNG seed");
  hodge_check->add_option("--output", hodge_output, "output path");

  // group
  auto* grp = app.add_subcommand("group", "automorphism group analysis");
  auto* grp_an = grp->add_subcommand("analyze", "chain, characters, phi, rank");
  std::string grp_input, grp_output;
  grp_an->add_option("--input", grp_input, "group JSON file")->required();
  grp_an->add_option("--word-cap", word_cap, "word length cap");
  grp_an->add_option("--output", grp_output, "output path");

  // units
  auto* units = app.add_subcommand("units", "number-field unit groups");
  auto* units_build = units->add_subcommand("build", "search units, emit a group");
  std::string upoly = "x^2-2", uemit;
  long uheight = 5;
  int umaxdeg = 3;
  units_build->add_option("--poly", upoly, "monic integer polynomial, e.g. x^3-3x-1");
  units_build->add_option("--height", uheight, "coordinate height bound");
  units_build->add_option("--max-degree", umaxdeg, "field degree cap (4 enables quartic fields)");
  units_build->add_option("--emit", uemit, "write the group JSON here");

  // demo
  auto* demo = app.add_subcommand("demo", "bundled end-to-end examples");
  std::string demo_name = "cat-map", demo_output;
  demo->add_option("name", demo_name, "cat-map | unit-q2 | unit-cubic");
  demo->add_option("--output", demo_output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      app.exit(e);
      return 0;
    }
    std::cerr << app.help() << "\n" << e.what() << "\n";
    return 64;
  }

  if (show_schema) {
    std::cout << published_schemas() << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 64;
  }

  RunConfig cfg = base_config(precision_bits, word_cap, seed, format, no_timestamp);
  RadiusOptions opt = radius_options(cfg);

  if (deg->parsed()) {
    cfg.inputs = {deg_input};
    Json j = parse_json_text(read_file(deg_input));
    Json report;
    if (deg_raw) {
      RawModel raw = raw_model_from_json(j);
      report = profile_report(degree_profile(raw, opt), cfg);
      report["model"] = "raw (unverified model: matrices taken as given)";
    } else {
      TorusAut f = aut_from_json(j);
      report = profile_report(degree_profile(f, deg_rho, opt), cfg);
      report["model"] = aut_to_json(f);
      if (deg_growth > 0) {
        GrowthEstimate est = growth_limit_estimate(
            f, 1, HermitianForm(GaussMat::identity(f.model.k)), deg_growth, opt);
        report["growth"] = growth_report(est, cfg);
      }
    }
    emit(report, cfg, deg_output);
    return 0;
  }

  if (sim->parsed()) {
    TorusMap map = map_from_matrix_string(sim_matrix);
    auto est = entropy_estimate(map, parse_eps_list(sim_eps), sim_nmax, sim_grid);
    emit(entropy_sim_report(est, cfg), cfg, sim_output);
    return 0;
  }

  if (hodge_check->parsed()) {
    TorusModel m(hk);
    Json report;
    report["schema"] = "cohomdyn-report-v1";
    report["config"] = cfg.to_json();
    report["kind"] = "hodge_check";
    int sig_failures = 0, whr_failures = 0, ineq_failures = 0, skipped = 0;
    for (int t = 0; t < htrials; ++t) {
      std::mt19937_64 rng(seed + 1000003UL * (unsigned long)t);
      std::vector<CohomClass> cs;
      for (int i = 0; i < m.k - 1; ++i)
        cs.push_back(kahler_class(m, random_kahler_form(m.k, rng)));
      if (!signature_check(m, cs).ok) ++sig_failures;
      std::vector<CohomClass> nef;
      for (int i = 0; i < m.k - 2; ++i) nef.push_back(nef_class(m, random_psd_form(m.k, rng)));
      CohomClass alpha = nef_class(m, random_psd_form(m.k, rng));
      CohomClass beta = nef_class(m, random_psd_form(m.k, rng));
      if (!hr_inequality(m, nef, alpha, beta).holds) ++ineq_failures;
    }
    if (m.k >= 3) {
      GaussMat e1(m.k, m.k);
      e1(0, 0) = GaussRat(Rat(1));
      auto verdict = whr_verify(m, {nef_class(m, HermitianForm(e1))}, htrials, seed);
      if (!verdict.all_semipositive) ++whr_failures;
      skipped = verdict.skipped;
    }
    report["signature_failures"] = sig_failures;
    report["inequality_failures"] = ineq_failures;
    report["whr_failures"] = whr_failures;
    report["whr_skipped_tuples"] = skipped;
    report["trials"] = htrials;
    report["ok"] = sig_failures == 0 && whr_failures == 0 && ineq_failures == 0;
    emit(report, cfg, hodge_output);
    if (sig_failures || whr_failures || ineq_failures) return 2;
    return 0;
  }

  if (grp_an->parsed()) {
    cfg.inputs = {grp_input};
    cfg.word_cap = word_cap;
    MatrixGroup g = group_from_json(parse_json_text(read_file(grp_input)));
    GroupAnalysis ga = analyze_group(g, word_cap);
    emit(group_report(g, ga, cfg), cfg, grp_output);
    return 0;
  }

  if (units_build->parsed()) {
    TotallyRealField field(parse_int_poly(upoly), umaxdeg);
    UnitSystem sys = unit_search(field, uheight);
    MatrixGroup g = build_positive_entropy_group(field, uheight);
    Json report = units_report(field, sys, g, cfg);
    if (cfg.timestamp) {
      auto now = std::chrono::system_clock::now();
      report["timestamp_unix"] =
          std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    }
    if (!uemit.empty()) {
      std::ofstream out(uemit);
      if (!out) throw PreconditionError("cannot open emit file: " + uemit);
      out << group_to_json(g).dump(2) << "\n";
    }
    emit(report, cfg, "");
    return 0;
  }

  if (demo->parsed()) {
    if (demo_name == "cat-map") {
      GaussMat a(2, 2);
      a(0, 0) = GaussRat(Rat(2));
      a(0, 1) = a(1, 0) = a(1, 1) = GaussRat(Rat(1));
      TorusAut f(TorusModel(2), a);
      Json report = profile_report(degree_profile(f, true, opt), cfg);
      report["model"] = aut_to_json(f);
      GrowthEstimate est =
          growth_limit_estimate(f, 1, HermitianForm(GaussMat::identity(2)), 20, opt);
      report["growth"] = growth_report(est, cfg);
      emit(report, cfg, demo_output);
      return 0;
    }
    if (demo_name == "unit-q2" || demo_name == "unit-cubic") {
      TotallyRealField field(
          parse_int_poly(demo_name == "unit-q2" ? "x^2-2" : "x^3-3x-1"));
      MatrixGroup g = build_positive_entropy_group(field, 5);
      GroupAnalysis ga = analyze_group(g, word_cap);
      emit(group_report(g, ga, cfg), cfg, demo_output);
      return 0;
    }
    std::cerr << "unknown demo: " << demo_name << "\n";
    return 64;
  }

  std::cerr << app.help();
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CertificationError& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
