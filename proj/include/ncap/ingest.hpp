#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncap/aggregate.hpp"
#include "ncap/csv.hpp"
#include "ncap/error.hpp"
#include "ncap/feature_matrix.hpp"
#include "ncap/level.hpp"
#include "ncap/normalize.hpp"

namespace ncap {

// Everything the evaluation config file declares.
struct EvalConfig {
  std::vector<FeatureSpec> features;
  std::vector<std::optional<double>> weights;  // parallel to `features`
  MissingPolicy missing = MissingPolicy::Error;
  ZscoreConvention zscore = ZscoreConvention::Population;
  std::vector<CapabilityProfile> profiles;

  const FeatureSpec* find_feature(std::string_view name) const {
    for (const auto& f : features)
      if (f.name == name) return &f;
    return nullptr;
  }

  const CapabilityProfile* find_profile(std::string_view platform) const {
    for (const auto& p : profiles)
      if (p.platform == platform) return &p;
    return nullptr;
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/*
 * Config layout (JSON):
 *
 *   {
 *     "missing": "error" | "mean" | "exclude",
 *     "zscore": "population" | "sample",
 *     "features": [
 *       {"name": "charge_time", "unit": "min", "direction": "less_is_better",
 *        "weight": 0.03, "encoding": {"FHD": 2073600}}
 *     ],
 *     "profiles": [
 *       {"platform": "UAS B", "perception": true, "modeling": true,
 *        "planning": false, "execution": false,
 *        "evidence": {"modeling": "models surroundings"}}
 *     ]
 *   }
 */
inline EvalConfig parse_config(std::string_view text, std::string_view source = "config") {
  using nlohmann::json;
  const std::string where(source);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(where + ": top level must be an object");

  EvalConfig cfg;
  try {
    if (root.contains("missing")) cfg.missing = parse_missing_policy(root.at("missing").get<std::string>());
    if (root.contains("zscore")) {
      const auto z = root.at("zscore").get<std::string>();
      if (z == "population") cfg.zscore = ZscoreConvention::Population;
      else if (z == "sample") cfg.zscore = ZscoreConvention::Sample;
      else throw ConfigError(where + ": zscore must be population|sample");
    }

    for (const auto& jf : root.value("features", json::array())) {
      FeatureSpec f;
      f.name = jf.at("name").get<std::string>();
      f.unit = jf.value("unit", "");
      f.direction = parse_direction(jf.at("direction").get<std::string>());
      if (jf.contains("encoding")) {
        for (const auto& [token, value] : jf.at("encoding").items()) f.encoding.emplace(token, value.get<double>());
      }
      cfg.features.push_back(std::move(f));
      cfg.weights.push_back(jf.contains("weight") ? std::optional(jf.at("weight").get<double>()) : std::nullopt);
    }

    for (const auto& jp : root.value("profiles", json::array())) {
      CapabilityProfile p;
      p.platform = jp.at("platform").get<std::string>();
      p.perception = jp.value("perception", true);
      p.modeling = jp.value("modeling", false);
      p.planning = jp.value("planning", false);
      p.execution = jp.value("execution", false);
      if (jp.contains("evidence")) {
        const auto& ev = jp.at("evidence");
        for (std::size_t i = 0; i < kLayerNames.size(); ++i) p.evidence[i] = ev.value(kLayerNames[i], "");
      }
      if (cfg.find_profile(p.platform)) throw ConfigError(where + ": duplicate profile for '" + p.platform + "'");
      cfg.profiles.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const UsageError& e) {
    throw ConfigError(where + ": " + e.what());
  }

  try {
    if (!cfg.features.empty()) validate_feature_specs(cfg.features);
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return cfg;
}

inline EvalConfig load_config(const std::string& path) { return parse_config(read_file(path), path); }

inline bool is_missing_token(std::string_view s) { return s.empty() || s == "-" || s == "N/A"; }

inline std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Parse a feature CSV (first column platform id, header row of feature
/// names). Feature metadata comes from `config`, matched by name; column order
/// follows the file.
inline FeatureMatrix parse_feature_matrix(std::string_view text, const EvalConfig& config,
                                          std::string_view source = "matrix") {
  const std::string where(source);
  const auto rows = csv::parse(text);
  if (rows.empty()) throw FormatError(where + ": empty file");

  const auto& header = rows.front();
  if (header.size() < 2) throw FormatError(where + ": header needs a platform column and at least one feature");

  std::vector<FeatureSpec> features;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto name = csv::trim(header[c]);
    for (const auto& f : features)
      if (f.name == name) throw FormatError(where + ": duplicate feature name '" + name + "'");
    const FeatureSpec* spec = config.find_feature(name);
    if (!spec) throw FormatError(where + ": feature '" + name + "' has no direction declared in the config");
    features.push_back(*spec);
  }

  std::vector<std::string> platforms;
  std::vector<Cell> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = where + ":" + std::to_string(r + 1);
    if (row.size() != header.size())
      throw FormatError(line + ": expected " + std::to_string(header.size()) + " fields, got " +
                        std::to_string(row.size()));
    platforms.push_back(csv::trim(row[0]));
    if (platforms.back().empty()) throw FormatError(line + ": empty platform id");

    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto token = csv::trim(row[c]);
      const auto& spec = features[c - 1];
      if (is_missing_token(token)) {
        cells.emplace_back(std::nullopt);
      } else if (auto it = spec.encoding.find(token); it != spec.encoding.end()) {
        cells.emplace_back(it->second);
      } else if (auto v = parse_number(token)) {
        if (!std::isfinite(*v)) throw FormatError(line + ": non-finite value '" + token + "' in column '" + spec.name + "'");
        cells.emplace_back(*v);
      } else {
        throw EncodingError(line + ": no encoding for token '" + token + "' (platform '" + platforms.back() +
                            "', column '" + spec.name + "')");
      }
    }
  }
  if (platforms.empty()) throw FormatError(where + ": no platform rows");
  for (std::size_t i = 0; i < platforms.size(); ++i)
    for (std::size_t j = i + 1; j < platforms.size(); ++j)
      if (platforms[i] == platforms[j]) throw FormatError(where + ": duplicate platform '" + platforms[i] + "'");

  return FeatureMatrix(std::move(platforms), std::move(features), std::move(cells));
}

inline FeatureMatrix load_feature_matrix(const std::string& path, const EvalConfig& config) {
  return parse_feature_matrix(read_file(path), config, path);
}

inline std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Inverse of parse_feature_matrix: numbers in shortest round-trip form,
/// Missing as "-".
inline std::string serialize_feature_matrix(const FeatureMatrix& m) {
  std::string out = "platform";
  for (const auto& f : m.features()) out += "," + csv::escape(f.name);
  out += '\n';
  for (std::size_t p = 0; p < m.platform_count(); ++p) {
    out += csv::escape(m.platforms()[p]);
    for (std::size_t f = 0; f < m.feature_count(); ++f) {
      const auto& cell = m.at(p, f);
      out += ',';
      out += cell ? format_shortest(*cell) : "-";
    }
    out += '\n';
  }
  return out;
}

/// Apply the missing-value policy. Error and ColumnMean yield a fully dense
/// matrix; Exclude keeps gaps as presence masks for the aggregators.
inline ResolvedMatrix resolve_missing(const FeatureMatrix& m, MissingPolicy policy) {
  const std::size_t rows = m.platform_count();
  const std::size_t cols = m.feature_count();
  std::vector<double> values(rows * cols, 0.0);
  std::vector<bool> present(rows * cols, true);

  for (std::size_t f = 0; f < cols; ++f) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < rows; ++p) {
      if (const auto& cell = m.at(p, f)) {
        values[p * cols + f] = *cell;
        sum += *cell;
        ++count;
      } else if (policy == MissingPolicy::Error) {
        throw MissingValueError("missing value at platform '" + m.platforms()[p] + "', feature '" +
                                m.features()[f].name + "'");
      }
    }
    if (count == rows) continue;
    if (count == 0) throw DegenerateColumnError("feature '" + m.features()[f].name + "' has no present values");

    const double mean = sum / static_cast<double>(count);
    for (std::size_t p = 0; p < rows; ++p) {
      if (m.at(p, f)) continue;
      if (policy == MissingPolicy::ColumnMean) {
        values[p * cols + f] = mean;
      } else {
        present[p * cols + f] = false;
      }
    }
  }
  return ResolvedMatrix(m.platforms(), m.features(), std::move(values), std::move(present));
}

/// Weights for the matrix's feature order, from the config's per-feature
/// `weight` entries.
inline WeightVector config_weights(const EvalConfig& config, const std::vector<FeatureSpec>& features) {
  std::vector<double> w;
  for (const auto& f : features) {
    std::optional<double> found;
    for (std::size_t i = 0; i < config.features.size(); ++i)
      if (config.features[i].name == f.name) found = config.weights[i];
    if (!found) throw ConfigError("feature '" + f.name + "' has no weight in the config");
    w.push_back(*found);
  }
  try {
    return WeightVector::user_defined(std::move(w));
  } catch (const WeightError& e) {
    throw ConfigError(std::string("config weights: ") + e.what());
  }
}

/// Precomputed N_CP columns: header "platform,<method>,...", one row per
/// platform. Method names as accepted by parse_method.
inline ScoreTable parse_score_table(std::string_view text, std::string_view source = "scores") {
  const std::string where(source);
  const auto rows = csv::parse(text);
  if (rows.empty()) throw FormatError(where + ": empty file");
  const auto& header = rows.front();
  if (header.size() < 2) throw FormatError(where + ": header needs platform and at least one method column");

  ScoreTable table;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto name = csv::trim(header[c]);
    const auto method = find_method(name);
    if (!method) throw FormatError(where + ": unknown method column '" + name + "'");
    if (table.has(*method)) throw FormatError(where + ": duplicate method column '" + name + "'");
    table.methods.push_back(*method);
    table.scores.emplace_back();
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string line = where + ":" + std::to_string(r + 1);
    if (row.size() != header.size()) throw FormatError(line + ": field count mismatch");
    table.platforms.push_back(csv::trim(row[0]));
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto token = csv::trim(row[c]);
      const auto v = parse_number(token);
      if (!v || !std::isfinite(*v)) throw FormatError(line + ": bad score '" + token + "'");
      table.scores[c - 1].push_back(*v);
    }
  }
  table.validate();
  return table;
}

inline ScoreTable load_score_table(const std::string& path) { return parse_score_table(read_file(path), path); }

}  // namespace ncap
