#include "magsync/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef MAGSYNC_VERSION
#define MAGSYNC_VERSION "0.0.0"
#endif

namespace magsync {

namespace {

using nlohmann::json;

constexpr const char* kStructuredKeys[] = {
    "scenario", "parallelism", "grid",     "cavity_bath",     "init_alpha1",
    "init_alpha2", "init_beta", "init_cov", "init_cov_matrix", "include_F",
};

bool is_known_key(const std::string& key) {
  if (is_numeric_key(key)) return true;
  return std::find_if(std::begin(kStructuredKeys), std::end(kStructuredKeys),
                      [&](const char* k) { return key == k; }) != std::end(kStructuredKeys);
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError(key + ": expected a number");
  return v.get<double>();
}

cplx as_complex(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(key + ": expected [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ParseError(key + ": expected a string");
  return v.get<std::string>();
}

std::string_view cavity_bath_name(CavityBath b) {
  return b == CavityBath::thermal ? "thermal" : "vacuum";
}

std::string_view init_cov_name(CovarianceInit c) {
  switch (c) {
    case CovarianceInit::thermal_magnon: return "thermal-magnon";
    case CovarianceInit::uniform_vacuum: return "uniform-vacuum";
    case CovarianceInit::explicit_matrix: return "explicit";
  }
  return "thermal-magnon";
}

std::vector<GridAxis> parse_grid(const json& v) {
  if (!v.is_array()) throw ParseError("grid: expected an array of {key, values}");
  std::vector<GridAxis> axes;
  for (const auto& item : v) {
    if (!item.is_object() || !item.contains("key") || !item.contains("values") ||
        item.size() != 2)
      throw ParseError("grid: each entry needs exactly 'key' and 'values'");
    GridAxis axis;
    axis.key = as_string(item["key"], "grid.key");
    if (!item["values"].is_array()) throw ParseError("grid." + axis.key + ": expected an array");
    for (const auto& x : item["values"]) axis.values.push_back(as_number(x, "grid." + axis.key));
    axes.push_back(std::move(axis));
  }
  return axes;
}

Mat6 parse_matrix(const json& v) {
  const char* key = "init_cov_matrix";
  if (!v.is_array() || v.size() != 6) throw ParseError(std::string(key) + ": expected 6 rows");
  Mat6 m;
  for (int i = 0; i < 6; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 6)
      throw ParseError(std::string(key) + ": expected 6 columns");
    for (int j = 0; j < 6; ++j) m(i, j) = as_number(row[static_cast<std::size_t>(j)], key);
  }
  return m;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ResolvedConfig& rc) {
  const ScenarioConfig& c = rc.scenario;
  json j = json::object();
  j["scenario"] = std::string(scenario_name(rc.sweep.scenario));
  j["parallelism"] = rc.sweep.parallelism;
  json grid = json::array();
  for (const auto& axis : rc.sweep.overrides)
    grid.push_back({{"key", axis.key}, {"values", axis.values}});
  j["grid"] = grid;
  for (const auto& key : numeric_keys()) {
    if (key == "decimation")
      j[key] = c.decimation;
    else
      j[key] = get_numeric_field(c, key);
  }
  j["cavity_bath"] = std::string(cavity_bath_name(c.cavity_bath));
  j["init_alpha1"] = complex_json(c.init_alpha[0]);
  j["init_alpha2"] = complex_json(c.init_alpha[1]);
  j["init_beta"] = complex_json(c.init_beta);
  j["init_cov"] = std::string(init_cov_name(c.init_cov));
  if (c.init_cov == CovarianceInit::explicit_matrix) {
    json rows = json::array();
    for (int i = 0; i < 6; ++i) {
      json row = json::array();
      for (int k = 0; k < 6; ++k) row.push_back(c.init_cov_matrix(i, k));
      rows.push_back(row);
    }
    j["init_cov_matrix"] = rows;
  }
  j["include_F"] = c.include_fluctuation_drive;
  return j;
}

ResolvedConfig from_json(const json& doc, std::optional<Scenario> forced) {
  if (!doc.is_object()) throw ParseError("config document must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!is_known_key(key)) throw UnknownKey(key);

  Scenario scenario = forced.value_or(Scenario::custom);
  if (doc.contains("scenario")) {
    const Scenario named = parse_scenario(as_string(doc["scenario"], "scenario"));
    if (forced && *forced != named)
      throw RangeError("scenario", "document names '" + std::string(scenario_name(named)) +
                                       "' but '" + std::string(scenario_name(*forced)) +
                                       "' was requested");
    scenario = named;
  }

  ResolvedConfig rc = resolve_preset(scenario);
  ScenarioConfig& c = rc.scenario;

  if (doc.contains("parallelism")) {
    const auto& v = doc["parallelism"];
    if (!v.is_number_integer()) throw ParseError("parallelism: expected an integer");
    rc.sweep.parallelism = v.get<int>();
  }
  if (doc.contains("grid")) rc.sweep.overrides = parse_grid(doc["grid"]);

  for (const auto& key : numeric_keys())
    if (doc.contains(key)) set_numeric_field(c, key, as_number(doc[key], key));

  if (doc.contains("cavity_bath")) {
    const auto name = as_string(doc["cavity_bath"], "cavity_bath");
    if (name == "thermal")
      c.cavity_bath = CavityBath::thermal;
    else if (name == "vacuum")
      c.cavity_bath = CavityBath::vacuum;
    else
      throw RangeError("cavity_bath", "expected 'thermal' or 'vacuum'");
  }
  if (doc.contains("init_alpha1")) c.init_alpha[0] = as_complex(doc["init_alpha1"], "init_alpha1");
  if (doc.contains("init_alpha2")) c.init_alpha[1] = as_complex(doc["init_alpha2"], "init_alpha2");
  if (doc.contains("init_beta")) c.init_beta = as_complex(doc["init_beta"], "init_beta");
  if (doc.contains("init_cov")) {
    const auto name = as_string(doc["init_cov"], "init_cov");
    if (name == "thermal-magnon")
      c.init_cov = CovarianceInit::thermal_magnon;
    else if (name == "uniform-vacuum")
      c.init_cov = CovarianceInit::uniform_vacuum;
    else if (name == "explicit")
      c.init_cov = CovarianceInit::explicit_matrix;
    else
      throw RangeError("init_cov", "expected 'thermal-magnon', 'uniform-vacuum' or 'explicit'");
  }
  if (doc.contains("init_cov_matrix")) {
    if (c.init_cov != CovarianceInit::explicit_matrix)
      throw RangeError("init_cov_matrix", "only allowed with init_cov = 'explicit'");
    c.init_cov_matrix = parse_matrix(doc["init_cov_matrix"]);
  } else if (c.init_cov == CovarianceInit::explicit_matrix) {
    throw RangeError("init_cov_matrix", "required with init_cov = 'explicit'");
  }
  if (doc.contains("include_F")) {
    if (!doc["include_F"].is_boolean()) throw ParseError("include_F: expected true or false");
    c.include_fluctuation_drive = doc["include_F"].get<bool>();
  }

  rc.sweep.scenario = scenario;
  rc.sweep.validate();
  c.validate();
  return rc;
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ResolvedConfig resolve_preset(Scenario s) {
  ResolvedConfig rc;
  rc.sweep.scenario = s;
  rc.sweep.overrides = preset_grid(s);
  rc.scenario = preset_config(s);
  return rc;
}

ResolvedConfig parse_config(std::string_view text, std::optional<Scenario> scenario) {
  if (blank(text)) return from_json(json::object(), scenario);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  return from_json(doc, scenario);
}

std::string serialize_config(const ResolvedConfig& config) {
  return to_json(config).dump(2) + "\n";
}

ResolvedConfig load_config(const std::filesystem::path& path, std::optional<Scenario> scenario) {
  return parse_config(read_file(path), scenario);
}

std::string_view version() { return MAGSYNC_VERSION; }

void write_manifest(const RunManifest& m, const std::filesystem::path& dir) {
  json j;
  j["version"] = std::string(version());
  j["config"] = to_json(m.config);
  j["artifacts"] = m.artifacts;
  j["runtime_seconds"] = m.runtime_seconds;
  json points = json::array();
  for (const auto& p : m.points) {
    points.push_back({{"point", p.index},
                      {"coordinates", p.coordinates},
                      {"status", std::string(status_name(p.status))},
                      {"message", p.message},
                      {"max_kerr_correction", p.max_kerr_correction},
                      {"min_eig_ratio", p.min_eigen_ratio},
                      {"runtime_seconds", p.runtime_seconds},
                      {"trajectory", p.trajectory_file}});
  }
  j["diagnostics"] = points;

  const auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ResolvedConfig read_manifest_config(const std::filesystem::path& manifest_path) {
  json doc;
  try {
    doc = json::parse(read_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("config"))
    throw ParseError("manifest has no 'config' section");
  return from_json(doc["config"], std::nullopt);
}

}  // namespace magsync
