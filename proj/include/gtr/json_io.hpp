#pragma once

// JSON file schemas.
//
// Dataset file:
//   {"name": str, "order_ab": {"yy","yn","ny","nn"}, "order_ba": {...},
//    "provenance": str}
// Parameter file, exactly one of:
//   {"ratios": {"da_over_ea","costhetaa_over_ea","costheta_over_ea",
//               "db_over_eb","costhetab_over_eb","costheta_over_eb"}}
//   {"params": {"eps_a","d_a","eps_b","d_b",
//               "cos_theta_a","cos_theta_b","cos_theta"}}

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "gtr/datasets.hpp"
#include "gtr/errors.hpp"
#include "gtr/model.hpp"

namespace gtr {

using json = nlohmann::json;

class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline double number_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw parse_error(where + ": missing field \"" + key + "\"");
  if (!j.at(key).is_number()) throw parse_error(where + ": field \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

inline FourProbs four_probs(const json& j, const std::string& where) {
  return {number_field(j, "yy", where), number_field(j, "yn", where),
          number_field(j, "ny", where), number_field(j, "nn", where)};
}

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return j;
}

}  // namespace detail

inline json to_json(const FourProbs& p) {
  return {{"yy", p.yy}, {"yn", p.yn}, {"ny", p.ny}, {"nn", p.nn}};
}

inline json to_json(const RatioSolution& r) {
  return {{"da_over_ea", r.da_over_ea},
          {"costhetaa_over_ea", r.costhetaa_over_ea},
          {"costheta_over_ea", r.costheta_over_ea},
          {"db_over_eb", r.db_over_eb},
          {"costhetab_over_eb", r.costhetab_over_eb},
          {"costheta_over_eb", r.costheta_over_eb}};
}

inline json to_json(const ModelParams& p) {
  return {{"eps_a", p.eps_a},           {"d_a", p.d_a},
          {"eps_b", p.eps_b},           {"d_b", p.d_b},
          {"cos_theta_a", p.cos_theta_a}, {"cos_theta_b", p.cos_theta_b},
          {"cos_theta", p.cos_theta}};
}

inline json to_json(const ExperimentDataset& d) {
  return {{"name", d.name},
          {"order_ab", to_json(d.order_ab)},
          {"order_ba", to_json(d.order_ba)},
          {"provenance", d.provenance}};
}

inline ExperimentDataset dataset_from_json(const json& j, const std::string& where) {
  if (!j.contains("order_ab") || !j.contains("order_ba"))
    throw parse_error(where + ": dataset needs \"order_ab\" and \"order_ba\"");
  try {
    return {j.value("name", std::string("unnamed")),
            detail::four_probs(j.at("order_ab"), where + "/order_ab"),
            detail::four_probs(j.at("order_ba"), where + "/order_ba"),
            j.value("provenance", std::string())};
  } catch (const validation_error& e) {
    throw parse_error(where + ": " + e.what());
  }
}

inline ExperimentDataset load_dataset(const std::string& path) {
  return dataset_from_json(detail::load_file(path), path);
}

inline RatioSolution ratios_from_json(const json& j, const std::string& where) {
  RatioSolution r;
  r.da_over_ea = detail::number_field(j, "da_over_ea", where);
  r.costhetaa_over_ea = detail::number_field(j, "costhetaa_over_ea", where);
  r.costheta_over_ea = detail::number_field(j, "costheta_over_ea", where);
  r.db_over_eb = detail::number_field(j, "db_over_eb", where);
  r.costhetab_over_eb = detail::number_field(j, "costhetab_over_eb", where);
  r.costheta_over_eb = detail::number_field(j, "costheta_over_eb", where);
  return r;
}

inline ModelParams params_from_json(const json& j, const std::string& where) {
  try {
    return {detail::number_field(j, "eps_a", where),       detail::number_field(j, "d_a", where),
            detail::number_field(j, "eps_b", where),       detail::number_field(j, "d_b", where),
            detail::number_field(j, "cos_theta_a", where), detail::number_field(j, "cos_theta_b", where),
            detail::number_field(j, "cos_theta", where)};
  } catch (const validation_error& e) {
    throw parse_error(where + ": " + e.what());
  }
}

// A parameter file holds either ratios (free scale) or a concrete set.
struct ParameterInput {
  std::optional<RatioSolution> ratios;
  std::optional<ModelParams> params;
};

inline ParameterInput load_parameter_input(const std::string& path) {
  const json j = detail::load_file(path);
  const bool has_ratios = j.contains("ratios");
  const bool has_params = j.contains("params");
  if (has_ratios == has_params)
    throw parse_error(path + ": exactly one of \"ratios\" or \"params\" must be present");
  ParameterInput in;
  if (has_ratios)
    in.ratios = ratios_from_json(j.at("ratios"), path + "/ratios");
  else
    in.params = params_from_json(j.at("params"), path + "/params");
  return in;
}

}  // namespace gtr
