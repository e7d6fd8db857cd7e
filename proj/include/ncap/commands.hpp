#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncap/aggregate.hpp"
#include "ncap/error.hpp"
#include "ncap/geometry.hpp"
#include "ncap/ingest.hpp"
#include "ncap/level.hpp"
#include "ncap/ranking.hpp"

namespace ncap::cli {

enum class OutputFormat { Table, Csv, Jsonl };
enum class WeightChoice { Uniform, Config };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "jsonl" || s == "json-lines") return OutputFormat::Jsonl;
  throw UsageError("unknown format '" + std::string(s) + "' (expected table|csv|jsonl)");
}

inline WeightChoice parse_weight_choice(std::string_view s) {
  if (s == "uniform") return WeightChoice::Uniform;
  if (s == "config") return WeightChoice::Config;
  throw UsageError("unknown weight scheme '" + std::string(s) + "' (expected uniform|config)");
}

inline std::vector<CombinationMethod> parse_method_list(std::string_view list) {
  std::vector<CombinationMethod> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto end = std::min(list.find(',', start), list.size());
    const auto name = csv::trim(list.substr(start, end - start));
    if (!name.empty()) {
      const auto m = parse_method(name);
      if (std::find(out.begin(), out.end(), m) != out.end())
        throw UsageError("method '" + name + "' listed twice");
      out.push_back(m);
    }
    start = end + 1;
  }
  if (out.empty()) throw UsageError("no methods requested");
  return out;
}

// One invocation's inputs and options.
struct RunManifest {
  std::optional<std::string> matrix_path;
  std::optional<std::string> config_path;
  std::optional<std::string> scores_path;  // precomputed N_CP instead of a matrix
  std::vector<CombinationMethod> methods{kAllMethods.begin(), kAllMethods.end()};
  WeightChoice weights = WeightChoice::Uniform;
  std::optional<MissingPolicy> missing;  // overrides the config's policy
  OutputFormat format = OutputFormat::Table;
  bool color = false;
};

namespace detail {

inline std::string bold(const std::string& s, bool color) { return color ? "\x1b[1m" + s + "\x1b[0m" : s; }

// Left-aligned text columns separated by two spaces.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(bool color) const {
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);

    auto line = [&](const std::vector<std::string>& r) {
      std::string out;
      for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i];
        if (i + 1 < r.size()) out += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      return out;
    };
    std::string out = bold(line(header_), color) + "\n";
    for (const auto& r : rows_) out += line(r) + "\n";
    return out;
  }

 private:
  // Code points, so "×" or "°" in ids count as one column.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline EvalConfig require_config(const RunManifest& m) {
  if (!m.config_path) throw UsageError("--config is required");
  return load_config(*m.config_path);
}

inline ScoreTable load_scores(const RunManifest& m, const std::optional<EvalConfig>& config) {
  if (m.methods.empty()) throw UsageError("no methods requested");
  if (m.scores_path) {
    const auto all = load_score_table(*m.scores_path);
    ScoreTable picked{all.platforms, {}, {}};
    for (auto method : m.methods) {
      if (!all.has(method))
        throw UsageError(*m.scores_path + " has no '" + std::string(to_string(method)) + "' column");
      picked.methods.push_back(method);
      picked.scores.push_back(all.column(method));
    }
    return picked;
  }
  if (!m.matrix_path) throw UsageError("one of --matrix or --scores is required");
  if (!config) throw UsageError("--config is required with --matrix");

  const auto matrix = load_feature_matrix(*m.matrix_path, *config);
  const auto resolved = resolve_missing(matrix, m.missing.value_or(config->missing));
  const auto weights = m.weights == WeightChoice::Uniform ? WeightVector::uniform(matrix.feature_count())
                                                          : config_weights(*config, matrix.features());
  return score_all(resolved, weights, m.methods, config->zscore);
}

inline std::optional<EvalConfig> maybe_config(const RunManifest& m) {
  if (!m.config_path) return std::nullopt;
  return load_config(*m.config_path);
}

inline std::vector<AutonomyLevel> levels_for(const EvalConfig& config, const std::vector<std::string>& platforms) {
  std::vector<AutonomyLevel> out;
  for (const auto& p : platforms) {
    const auto* profile = config.find_profile(p);
    if (!profile) throw ConfigError("no capability profile for platform '" + p + "'");
    out.push_back(classify(*profile));
  }
  return out;
}

inline std::vector<int> level_values(const std::vector<AutonomyLevel>& levels) {
  std::vector<int> out;
  for (const auto& l : levels) out.push_back(l.value);
  return out;
}

}  // namespace detail

/// N_CP per platform and method with ranks in parentheses.
inline std::string cmd_score(const RunManifest& m) {
  const auto config = detail::maybe_config(m);
  const auto scores = detail::load_scores(m, config);
  const auto ranks = rank_table(scores);

  std::optional<std::vector<int>> levels;
  if (config && std::all_of(scores.platforms.begin(), scores.platforms.end(),
                            [&](const auto& p) { return config->find_profile(p) != nullptr; }) &&
      !config->profiles.empty()) {
    levels = detail::level_values(detail::levels_for(*config, scores.platforms));
  }

  std::string out;
  switch (m.format) {
    case OutputFormat::Table: {
      std::vector<std::string> header{"Platform"};
      for (auto method : scores.methods) header.emplace_back(label(method));
      if (levels) header.emplace_back("N_AL");
      detail::TextTable table(std::move(header));
      for (std::size_t p = 0; p < scores.platforms.size(); ++p) {
        std::vector<std::string> row{scores.platforms[p]};
        for (std::size_t k = 0; k < scores.methods.size(); ++k)
          row.push_back(fixed(scores.scores[k][p], 2) + " (" + std::to_string(ranks.ranks[k][p]) + ")");
        if (levels) row.push_back(std::to_string((*levels)[p]));
        table.add(std::move(row));
      }
      out = table.render(m.color);
      break;
    }
    case OutputFormat::Csv:
      out = "platform,method,n_cp,rank\n";
      for (std::size_t k = 0; k < scores.methods.size(); ++k)
        for (std::size_t p = 0; p < scores.platforms.size(); ++p)
          out += csv::escape(scores.platforms[p]) + "," + std::string(to_string(scores.methods[k])) + "," +
                 fixed(scores.scores[k][p], 6) + "," + std::to_string(ranks.ranks[k][p]) + "\n";
      break;
    case OutputFormat::Jsonl:
      for (std::size_t k = 0; k < scores.methods.size(); ++k)
        for (std::size_t p = 0; p < scores.platforms.size(); ++p)
          out += "{\"platform\":" + detail::json_string(scores.platforms[p]) + ",\"method\":\"" +
                 std::string(to_string(scores.methods[k])) + "\",\"n_cp\":" + fixed(scores.scores[k][p], 6) +
                 ",\"rank\":" + std::to_string(ranks.ranks[k][p]) + "}\n";
      break;
  }
  return out;
}

/// Autonomy level per platform from the config's capability profiles.
inline std::string cmd_level(const RunManifest& m) {
  const auto config = detail::require_config(m);
  std::vector<std::string> platforms;
  if (m.scores_path) {
    platforms = load_score_table(*m.scores_path).platforms;
  } else if (m.matrix_path) {
    platforms = load_feature_matrix(*m.matrix_path, config).platforms();
  } else {
    for (const auto& p : config.profiles) platforms.push_back(p.platform);
  }
  if (platforms.empty()) throw EmptyInputError("no platforms to classify");
  const auto levels = detail::levels_for(config, platforms);

  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string out;
  switch (m.format) {
    case OutputFormat::Table: {
      detail::TextTable table({"Platform", "Perception", "Modeling", "Planning", "Execution", "N_AL"});
      for (std::size_t i = 0; i < platforms.size(); ++i) {
        const auto& p = *config.find_profile(platforms[i]);
        const std::array<bool, 4> has = {p.perception, p.modeling, p.planning, p.execution};
        std::vector<std::string> row{platforms[i]};
        for (std::size_t layer = 0; layer < 4; ++layer)
          row.push_back(!has[layer] ? "None" : p.evidence[layer].empty() ? "yes" : p.evidence[layer]);
        row.push_back(std::to_string(levels[i].value));
        table.add(std::move(row));
      }
      out = table.render(m.color);
      for (std::size_t i = 0; i < platforms.size(); ++i)
        for (const auto& w : levels[i].warnings) out += "warning: " + platforms[i] + ": " + w + "\n";
      break;
    }
    case OutputFormat::Csv:
      out = "platform,perception,modeling,planning,execution,n_al\n";
      for (std::size_t i = 0; i < platforms.size(); ++i) {
        const auto& p = *config.find_profile(platforms[i]);
        out += csv::escape(platforms[i]) + "," + flag(p.perception) + "," + flag(p.modeling) + "," +
               flag(p.planning) + "," + flag(p.execution) + "," + std::to_string(levels[i].value) + "\n";
      }
      break;
    case OutputFormat::Jsonl:
      for (std::size_t i = 0; i < platforms.size(); ++i) {
        nlohmann::ordered_json j;
        j["platform"] = platforms[i];
        j["n_al"] = levels[i].value;
        j["warnings"] = levels[i].warnings;
        out += j.dump() + "\n";
      }
      break;
  }
  return out;
}

/// Absolute and relative Potential Autonomy Distance per method.
inline std::string cmd_distance(const RunManifest& m) {
  const auto config = detail::require_config(m);
  const auto scores = detail::load_scores(m, config);
  const auto levels = detail::level_values(detail::levels_for(config, scores.platforms));

  std::vector<std::vector<NcapCoordinate>> coords;
  std::vector<DistanceReport> reports;
  for (auto method : scores.methods) {
    coords.push_back(make_coordinates(scores, levels, method));
    reports.push_back(distance_report(coords.back()));
  }

  std::string out;
  switch (m.format) {
    case OutputFormat::Table: {
      std::vector<std::string> header{"Platform"};
      for (auto method : scores.methods) header.push_back("AD_" + std::string(to_string(method)));
      detail::TextTable absolute(header), relative(header);
      for (std::size_t p = 0; p < scores.platforms.size(); ++p) {
        std::vector<std::string> a{scores.platforms[p]}, r{scores.platforms[p]};
        for (const auto& rep : reports) {
          a.push_back(fixed(rep.absolute[p], 2));
          r.push_back(fixed(rep.relative[p], 2));
        }
        absolute.add(std::move(a));
        relative.add(std::move(r));
      }
      out += detail::bold("Potential autonomy distance to <0, 0>", m.color) + "\n" + absolute.render(m.color) + "\n";
      out += detail::bold("Reference (highest distance):", m.color);
      for (const auto& rep : reports) out += " " + std::string(to_string(rep.method)) + "=" + rep.reference;
      out += "\n\n" + detail::bold("Relative potential autonomy distance to reference", m.color) + "\n" +
             relative.render(m.color);
      break;
    }
    case OutputFormat::Csv:
      out = "platform,method,n_al,n_cp,ad,reference,relative_ad\n";
      for (std::size_t k = 0; k < reports.size(); ++k)
        for (std::size_t p = 0; p < scores.platforms.size(); ++p)
          out += csv::escape(scores.platforms[p]) + "," + std::string(to_string(reports[k].method)) + "," +
                 std::to_string(levels[p]) + "," + fixed(coords[k][p].y, 6) + "," + fixed(reports[k].absolute[p], 6) +
                 "," + csv::escape(reports[k].reference) + "," + fixed(reports[k].relative[p], 6) + "\n";
      break;
    case OutputFormat::Jsonl:
      for (std::size_t k = 0; k < reports.size(); ++k)
        for (std::size_t p = 0; p < scores.platforms.size(); ++p)
          out += "{\"platform\":" + detail::json_string(scores.platforms[p]) + ",\"method\":\"" +
                 std::string(to_string(reports[k].method)) + "\",\"n_al\":" + std::to_string(levels[p]) +
                 ",\"n_cp\":" + fixed(coords[k][p].y, 6) + ",\"ad\":" + fixed(reports[k].absolute[p], 6) +
                 ",\"reference\":" + detail::json_string(reports[k].reference) +
                 ",\"relative_ad\":" + fixed(reports[k].relative[p], 6) + "}\n";
      break;
  }
  return out;
}

/// <N_AL, N_CP> rows for external plotting, one block per method.
inline std::string cmd_plotdata(const RunManifest& m) {
  const auto config = detail::require_config(m);
  const auto scores = detail::load_scores(m, config);
  const auto levels = detail::level_values(detail::levels_for(config, scores.platforms));

  std::vector<NcapCoordinate> all;
  for (auto method : scores.methods) {
    auto coords = make_coordinates(scores, levels, method);
    all.insert(all.end(), coords.begin(), coords.end());
  }
  if (m.format != OutputFormat::Jsonl) return coordinate_plot_data(all);

  std::string out;
  for (const auto& c : all)
    out += "{\"platform\":" + detail::json_string(c.platform) + ",\"method\":\"" + std::string(to_string(c.method)) +
           "\",\"n_al\":" + std::to_string(static_cast<int>(c.x)) + ",\"n_cp\":" + fixed(c.y, 6) + "}\n";
  return out;
}

/// Cross-method rank agreement: pairwise Kendall tau-b and unanimous ranks.
inline std::string cmd_compare(const RunManifest& m) {
  const auto config = detail::maybe_config(m);
  const auto scores = detail::load_scores(m, config);
  const auto ranks = rank_table(scores);
  const auto stats = consensus_report(ranks);
  const std::size_t k = stats.methods.size();

  std::string out;
  switch (m.format) {
    case OutputFormat::Table: {
      std::vector<std::string> header{"tau-b"};
      for (auto method : stats.methods) header.emplace_back(label(method));
      detail::TextTable table(std::move(header));
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::string> row{std::string(label(stats.methods[i]))};
        for (std::size_t j = 0; j < k; ++j) row.push_back(fixed(stats.tau[i][j], 2));
        table.add(std::move(row));
      }
      out = table.render(m.color);
      out += "unanimous rank 1:";
      if (stats.unanimous_first.empty()) out += " none";
      for (const auto& p : stats.unanimous_first) out += " " + p;
      out += "\nunanimous at ranks 2+:";
      bool any = false;
      for (const auto& u : stats.unanimous) {
        if (u.rank == 1) continue;
        out += " " + u.platform + "=" + std::to_string(u.rank);
        any = true;
      }
      out += any ? "\n" : " none\n";
      break;
    }
    case OutputFormat::Csv:
      out = "type,a,b,value\n";
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          out += "tau," + std::string(to_string(stats.methods[i])) + "," + std::string(to_string(stats.methods[j])) +
                 "," + fixed(stats.tau[i][j], 6) + "\n";
      for (const auto& u : stats.unanimous)
        out += "unanimous," + csv::escape(u.platform) + ",," + std::to_string(u.rank) + "\n";
      break;
    case OutputFormat::Jsonl:
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          out += "{\"type\":\"tau\",\"a\":\"" + std::string(to_string(stats.methods[i])) + "\",\"b\":\"" +
                 std::string(to_string(stats.methods[j])) + "\",\"tau\":" + fixed(stats.tau[i][j], 6) + "}\n";
      for (const auto& u : stats.unanimous)
        out += "{\"type\":\"unanimous\",\"platform\":" + detail::json_string(u.platform) +
               ",\"rank\":" + std::to_string(u.rank) + "}\n";
      break;
  }
  return out;
}

}  // namespace ncap::cli
