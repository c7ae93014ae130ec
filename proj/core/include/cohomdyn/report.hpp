#pragma once

#include <json.hpp>

#include "cohomdyn/degrees.hpp"
#include "cohomdyn/entropy_sim.hpp"
#include "cohomdyn/group.hpp"
#include "cohomdyn/hodge.hpp"

namespace cohomdyn {

using Json = nlohmann::ordered_json;

// Resolved run configuration; embedded verbatim in every report.
struct RunConfig {
  int precision_bits = 96;
  int word_cap = 3;
  unsigned long seed = 7;
  std::string output_format = "json";  // json | text
  bool timestamp = true;
  int decimal_digits = 15;
  std::vector<std::string> inputs;

  Json to_json() const;
};

// reals are reported as certified interval pairs of decimal strings
Json interval_json(const RatInterval& iv, int digits);
Json radius_json(const RadiusBound& b, int digits);

Json aut_to_json(const TorusAut& f);
TorusAut aut_from_json(const Json& j);

Json group_to_json(const MatrixGroup& g);
MatrixGroup group_from_json(const Json& j);

Json class_to_json(const CohomClass& c);
CohomClass class_from_json(const Json& j);

RawModel raw_model_from_json(const Json& j);

Json profile_report(const DegreeProfile& prof, const RunConfig& cfg);
Json growth_report(const GrowthEstimate& est, const RunConfig& cfg);
Json group_report(const MatrixGroup& g, const GroupAnalysis& ga, const RunConfig& cfg);
Json entropy_sim_report(const SeparationEstimate& est, const RunConfig& cfg);

// parse with line/column information on failure
Json parse_json_text(const std::string& text);

std::string published_schemas();

std::string render_text_report(const Json& report);

}  // namespace cohomdyn
