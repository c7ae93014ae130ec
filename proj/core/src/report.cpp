#include "cohomdyn/report.hpp"

#include <chrono>
#include <sstream>

namespace cohomdyn {

Json RunConfig::to_json() const {
  Json j;
  j["precision_bits"] = precision_bits;
  j["word_cap"] = word_cap;
  j["seed"] = seed;
  j["output_format"] = output_format;
  j["decimal_digits"] = decimal_digits;
  j["inputs"] = inputs;
  return j;
}

namespace {

Json config_block(const RunConfig& cfg) {
  Json j;
  j["schema"] = "cohomdyn-report-v1";
  j["config"] = cfg.to_json();
  if (cfg.timestamp) {
    auto now = std::chrono::system_clock::now();
    j["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  return j;
}

Json word_json(const Word& w, const std::vector<std::string>& labels) {
  Json j;
  j["letters"] = w;
  j["name"] = word_to_string(w, labels);
  return j;
}

}  // namespace

Json interval_json(const RatInterval& iv, int digits) {
  auto [lo, hi] = interval_decimal(iv, digits);
  return Json{{"lo", lo}, {"hi", hi}};
}

Json radius_json(const RadiusBound& b, int digits) {
  Json j = interval_json(b.enclosure, digits);
  j["exactly_one"] = b.exactly_one;
  j["exact"] = b.exact;
  if (b.exact) j["value"] = rat_to_string(b.enclosure.lo);
  return j;
}

Json aut_to_json(const TorusAut& f) {
  Json m = Json::array();
  for (int i = 0; i < f.model.k; ++i) {
    Json row = Json::array();
    for (int j = 0; j < f.model.k; ++j) {
      const GaussRat& v = f.A(i, j);
      row.push_back(Json::array({rat_to_string(v.re), rat_to_string(v.im)}));
    }
    m.push_back(row);
  }
  Json j;
  j["model"] = Json{{"k", f.model.k}};
  j["matrix"] = m;
  return j;
}

TorusAut aut_from_json(const Json& j) {
  if (!j.contains("model") || !j["model"].contains("k"))
    throw PreconditionError("automorphism JSON: missing model.k");
  int k = j["model"]["k"].get<int>();
  const Json& m = j.at("matrix");
  if ((int)m.size() != k) throw PreconditionError("automorphism JSON: bad matrix rows");
  GaussMat a(k, k);
  for (int i = 0; i < k; ++i) {
    if ((int)m[i].size() != k)
      throw PreconditionError("automorphism JSON: bad matrix columns");
    for (int c = 0; c < k; ++c) {
      const Json& e = m[i][c];
      if (!e.is_array() || e.size() != 2)
        throw PreconditionError("automorphism JSON: entries must be [re, im]");
      a(i, c) = GaussRat(rat_from_string(e[0].get<std::string>()),
                         rat_from_string(e[1].get<std::string>()));
    }
  }
  return TorusAut(TorusModel(k), a);
}

Json group_to_json(const MatrixGroup& g) {
  Json j;
  j["model"] = Json{{"k", g.model.k}};
  Json gens = Json::array();
  for (const auto& a : g.gens) gens.push_back(aut_to_json(a)["matrix"]);
  j["generators"] = gens;
  j["labels"] = g.labels;
  return j;
}

MatrixGroup group_from_json(const Json& j) {
  int k = j.at("model").at("k").get<int>();
  std::vector<TorusAut> gens;
  for (const Json& m : j.at("generators")) {
    Json aj;
    aj["model"] = Json{{"k", k}};
    aj["matrix"] = m;
    gens.push_back(aut_from_json(aj));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return MatrixGroup(TorusModel(k), std::move(gens), std::move(labels));
}

Json class_to_json(const CohomClass& c) {
  Json j;
  j["k"] = c.k;
  j["p"] = c.p;
  j["q"] = c.q;
  Json terms = Json::array();
  for (const auto& [key, v] : c.terms) {
    Json t;
    Json I = Json::array(), J = Json::array();
    for (int a : key.first) I.push_back(a + 1);  // 1-based in the wire format
    for (int b : key.second) J.push_back(b + 1);
    t["I"] = I;
    t["J"] = J;
    t["re"] = rat_to_string(v.re);
    t["im"] = rat_to_string(v.im);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

CohomClass class_from_json(const Json& j) {
  int k = j.at("k").get<int>();
  CohomClass c(k, j.at("p").get<int>(), j.at("q").get<int>());
  for (const Json& t : j.at("terms")) {
    IndexSet I, J;
    for (const Json& a : t.at("I")) I.push_back(a.get<int>() - 1);
    for (const Json& b : t.at("J")) J.push_back(b.get<int>() - 1);
    c.add_term(I, J,
               GaussRat(rat_from_string(t.at("re").get<std::string>()),
                        rat_from_string(t.at("im").get<std::string>())));
  }
  return c;
}

RawModel raw_model_from_json(const Json& j) {
  RawModel raw;
  for (const Json& mj : j.at("matrices")) {
    int r = (int)mj.size();
    RatMat m(r, r);
    for (int i = 0; i < r; ++i) {
      if ((int)mj[i].size() != r)
        throw PreconditionError("raw model JSON: matrices must be square");
      for (int c = 0; c < r; ++c)
        m(i, c) = rat_from_string(mj[i][c].get<std::string>());
    }
    raw.matrices.push_back(std::move(m));
  }
  raw.validate();
  return raw;
}

Json profile_report(const DegreeProfile& prof, const RunConfig& cfg) {
  Json j = config_block(cfg);
  j["kind"] = "degree_profile";
  Json degs = Json::array();
  for (const auto& d : prof.degrees) degs.push_back(radius_json(d, cfg.decimal_digits));
  j["degrees"] = degs;
  j["h_a"] = interval_json(prof.h_a, cfg.decimal_digits);
  j["positive_entropy"] = prof.positive_entropy;
  j["entropy_flag_certified"] = prof.entropy_flag_certified;
  j["log_concavity_ok"] = prof.log_concavity_ok;
  j["unimodal_ok"] = prof.unimodal_ok;
  if (prof.rho) {
    Json table = Json::array();
    for (const auto& row : *prof.rho) {
      Json r = Json::array();
      for (const auto& b : row) r.push_back(radius_json(b, cfg.decimal_digits));
      table.push_back(r);
    }
    j["rho"] = table;
  }
  return j;
}

Json growth_report(const GrowthEstimate& est, const RunConfig& cfg) {
  Json j = config_block(cfg);
  j["kind"] = "growth_limit";
  Json ints = Json::array();
  for (const auto& v : est.integrals) ints.push_back(rat_to_string(v));
  j["integrals"] = ints;
  j["roots"] = est.roots;
  j["degree"] = radius_json(est.degree, cfg.decimal_digits);
  j["final_rel_gap"] = est.final_rel_gap;
  return j;
}

Json group_report(const MatrixGroup& g, const GroupAnalysis& ga, const RunConfig& cfg) {
  Json j = config_block(cfg);
  j["kind"] = "group_analysis";
  j["group"] = group_to_json(g);
  j["commuting"] = ga.commuting;
  j["solvability"] = Json{{"solvable", ga.solvability.solvable},
                          {"depth", ga.solvability.depth},
                          {"truncated", ga.solvability.truncated},
                          {"note", ga.solvability.note}};
  j["ping_pong_certificate_found"] = ga.ping_pong.has_value();
  if (ga.ping_pong) {
    j["ping_pong_power"] = ga.ping_pong->n;
    auto cone_json = [](const ConeSpec& c) {
      Json axis = Json::array();
      for (const auto& v : c.axis) axis.push_back(rat_to_string(v));
      return Json{{"axis", axis}, {"cos2_half_angle", rat_to_string(c.s)}};
    };
    j["ping_pong_cones"] = Json{{"g_plus", cone_json(ga.ping_pong->g_plus)},
                                {"g_minus", cone_json(ga.ping_pong->g_minus)},
                                {"h_plus", cone_json(ga.ping_pong->h_plus)},
                                {"h_minus", cone_json(ga.ping_pong->h_minus)}};
  }
  j["entropy_audit"] = Json{{"words_checked", ga.entropy_audit.words_checked},
                            {"all_positive", ga.entropy_audit.all_positive}};
  j["chain_built"] = ga.chain_built;
  if (!ga.chain_error.empty()) j["chain_error"] = ga.chain_error;
  if (ga.chain_built) {
    j["phi_rank"] = ga.phi_rank;
    j["rank_certified"] = ga.rank_certified;
    j["rank_saturates"] = ga.rank_saturates;
    j["rank_bound"] = g.model.k - kodaira_dimension_torus - 1;
    j["phi_bound_all_hold"] = ga.phi_bound_all_hold;
    j["kernel_all_consistent"] = ga.kernel_all_consistent;
    j["discreteness_margin"] = interval_json(ga.discreteness_margin, cfg.decimal_digits);
    Json vecs = Json::array();
    for (const auto& pv : ga.phi_vectors) {
      Json v = word_json(pv.word, g.labels);
      Json coords = Json::array();
      for (const auto& c : pv.coords) coords.push_back(interval_json(c, cfg.decimal_digits));
      v["phi"] = coords;
      v["exactly_zero"] = pv.exactly_zero;
      vecs.push_back(v);
    }
    j["phi_vectors"] = vecs;
    Json bounds = Json::array();
    for (const auto& b : ga.bound_checks) {
      Json r = word_json(b.word, g.labels);
      r["phi_norm"] = interval_json(b.phi_norm, cfg.decimal_digits);
      r["half_log_d_k1"] = interval_json(b.half_log_dk1, cfg.decimal_digits);
      r["holds"] = b.holds;
      r["equality_case"] = b.equality_case;
      bounds.push_back(r);
    }
    j["phi_bound_checks"] = bounds;
    Json kern = Json::array();
    for (const auto& r : ga.kernel_rows) {
      Json row = word_json(r.word, g.labels);
      row["phi_zero"] = r.phi_zero;
      row["positive_entropy"] = r.positive_entropy;
      row["consistent"] = r.consistent;
      kern.push_back(row);
    }
    j["kernel_checks"] = kern;
  }
  return j;
}

Json entropy_sim_report(const SeparationEstimate& est, const RunConfig& cfg) {
  Json j = config_block(cfg);
  j["kind"] = "entropy_sim";
  j["grid"] = est.grid;
  j["n_max"] = est.n_max;
  Json fits = Json::array();
  for (const auto& f : est.fits) {
    Json fj;
    fj["eps"] = rat_to_string(f.eps);
    fj["counts"] = f.counts;
    fj["fit_window"] = Json::array({f.fit_lo, f.fit_hi});
    fj["slope"] = f.slope;
    fj["usable"] = f.usable;
    fj["saturated"] = f.saturated;
    fj["coarse_warning"] = f.coarse_warning;
    fits.push_back(fj);
  }
  j["fits"] = fits;
  j["h_est"] = est.h_est;
  j["h_ref"] = est.h_ref;
  j["monotone_in_n"] = est.monotone_in_n;
  j["monotone_in_eps"] = est.monotone_in_eps;
  j["warnings"] = est.warnings;
  return j;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // recover line/column from the byte offset
    size_t line = 1, col = 1;
    for (size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "JSON parse error at line " << line << ", column " << col << ": " << e.what();
    throw PreconditionError(os.str());
  }
}

std::string published_schemas() {
  return R"({
  "torus_automorphism": {
    "model": {"k": "int, 1..6"},
    "matrix": "k x k array of [re, im] exact rational strings"
  },
  "group": {
    "model": {"k": "int"},
    "generators": "list of matrices in the torus_automorphism layout",
    "labels": "optional list of strings"
  },
  "cohomology_class": {
    "k": "int", "p": "int", "q": "int",
    "terms": [{"I": "1-based dz indices", "J": "1-based dzbar indices",
               "re": "rational string", "im": "rational string"}]
  },
  "raw_model": {
    "matrices": "list (p = 0..k) of square arrays of rational strings"
  },
  "report": {
    "schema": "cohomdyn-report-v1",
    "config": "resolved run configuration",
    "kind": "degree_profile | growth_limit | group_analysis | entropy_sim | hodge_check | units_build",
    "note": "every real number is an interval pair {lo, hi} of decimal strings"
  }
})";
}

namespace {

void render_value(std::ostringstream& os, const Json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_value(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& e : v)
      if (e.is_object() || e.is_array()) flat = false;
    if (flat) {
      os << pad << v.dump() << "\n";
    } else {
      for (const auto& e : v) render_value(os, e, indent + 2);
    }
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text_report(const Json& report) {
  std::ostringstream os;
  render_value(os, report, 0);
  return os.str();
}

}  // namespace cohomdyn
