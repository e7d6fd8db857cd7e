#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncap/error.hpp"

namespace ncap {

enum class Direction { MoreIsBetter, LessIsBetter };

// +1 for more-is-better, -1 for less-is-better.
constexpr double sign(Direction d) noexcept { return d == Direction::MoreIsBetter ? 1.0 : -1.0; }

inline std::string_view to_string(Direction d) {
  return d == Direction::MoreIsBetter ? "more_is_better" : "less_is_better";
}

inline Direction parse_direction(std::string_view s) {
  if (s == "more_is_better" || s == "more") return Direction::MoreIsBetter;
  if (s == "less_is_better" || s == "less") return Direction::LessIsBetter;
  throw ConfigError("unknown feature direction '" + std::string(s) + "' (expected more_is_better|less_is_better)");
}

struct FeatureSpec {
  std::string name;
  std::string unit;
  Direction direction = Direction::MoreIsBetter;
  // Qualitative token -> strictly positive value. Tokens are opaque: "4k60p",
  // "100°" and "320×256" are looked up verbatim.
  std::map<std::string, double, std::less<>> encoding;

  bool operator==(const FeatureSpec&) const = default;
};

inline void validate_feature_specs(const std::vector<FeatureSpec>& features) {
  if (features.empty()) throw FormatError("dataset has no features");
  std::set<std::string_view> seen;
  for (const auto& f : features) {
    if (f.name.empty()) throw FormatError("feature with empty name");
    if (!seen.insert(f.name).second) throw FormatError("duplicate feature name '" + f.name + "'");
    for (const auto& [token, value] : f.encoding) {
      if (!std::isfinite(value) || value <= 0.0)
        throw ConfigError("feature '" + f.name + "': encoding for '" + token + "' must be strictly positive and finite");
    }
  }
}

enum class MissingPolicy { Error, ColumnMean, Exclude };

inline std::string_view to_string(MissingPolicy p) {
  switch (p) {
    case MissingPolicy::Error: return "error";
    case MissingPolicy::ColumnMean: return "mean";
    case MissingPolicy::Exclude: return "exclude";
  }
  return "?";
}

inline MissingPolicy parse_missing_policy(std::string_view s) {
  if (s == "error") return MissingPolicy::Error;
  if (s == "mean" || s == "column_mean") return MissingPolicy::ColumnMean;
  if (s == "exclude") return MissingPolicy::Exclude;
  throw UsageError("unknown missing-value policy '" + std::string(s) + "' (expected error|mean|exclude)");
}

using Cell = std::optional<double>;  // nullopt = Missing

// Platforms x features grid of raw feature values, possibly with gaps.
class FeatureMatrix {
 public:
  FeatureMatrix(std::vector<std::string> platforms, std::vector<FeatureSpec> features, std::vector<Cell> cells)
      : platforms_(std::move(platforms)), features_(std::move(features)), cells_(std::move(cells)) {
    if (platforms_.empty()) throw FormatError("dataset has no platforms");
    validate_feature_specs(features_);
    if (cells_.size() != platforms_.size() * features_.size())
      throw FormatError("grid has " + std::to_string(cells_.size()) + " cells, expected " +
                        std::to_string(platforms_.size()) + " x " + std::to_string(features_.size()));
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i] && !std::isfinite(*cells_[i]))
        throw FormatError("non-finite value at platform '" + platforms_[i / features_.size()] + "', feature '" +
                          features_[i % features_.size()].name + "'");
    }
  }

  const std::vector<std::string>& platforms() const noexcept { return platforms_; }
  const std::vector<FeatureSpec>& features() const noexcept { return features_; }
  std::size_t platform_count() const noexcept { return platforms_.size(); }
  std::size_t feature_count() const noexcept { return features_.size(); }

  const Cell& at(std::size_t platform, std::size_t feature) const {
    return cells_.at(platform * features_.size() + feature);
  }

  std::vector<Cell> column(std::size_t feature) const {
    std::vector<Cell> out;
    out.reserve(platforms_.size());
    for (std::size_t p = 0; p < platforms_.size(); ++p) out.push_back(at(p, feature));
    return out;
  }

  std::size_t missing_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::nullopt));
  }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::vector<std::string> platforms_;
  std::vector<FeatureSpec> features_;
  std::vector<Cell> cells_;
};

// Dense matrix ready for scoring. Under MissingPolicy::Exclude some cells are
// absent; absent cells hold 0 and must be skipped via `present()`.
class ResolvedMatrix {
 public:
  ResolvedMatrix(std::vector<std::string> platforms, std::vector<FeatureSpec> features, std::vector<double> values,
                 std::vector<bool> present = {})
      : platforms_(std::move(platforms)),
        features_(std::move(features)),
        values_(std::move(values)),
        present_(std::move(present)) {
    if (platforms_.empty()) throw FormatError("dataset has no platforms");
    validate_feature_specs(features_);
    const std::size_t n = platforms_.size() * features_.size();
    if (values_.size() != n) throw DimensionError("value grid does not match platforms x features");
    if (present_.empty()) present_.assign(n, true);
    if (present_.size() != n) throw DimensionError("presence mask does not match platforms x features");
    for (std::size_t i = 0; i < n; ++i) {
      if (present_[i] && !std::isfinite(values_[i])) throw FormatError("non-finite value in resolved matrix");
    }
  }

  const std::vector<std::string>& platforms() const noexcept { return platforms_; }
  const std::vector<FeatureSpec>& features() const noexcept { return features_; }
  std::size_t platform_count() const noexcept { return platforms_.size(); }
  std::size_t feature_count() const noexcept { return features_.size(); }

  double value(std::size_t platform, std::size_t feature) const {
    return values_.at(platform * features_.size() + feature);
  }
  bool present(std::size_t platform, std::size_t feature) const {
    return present_.at(platform * features_.size() + feature);
  }
  bool has_exclusions() const { return std::find(present_.begin(), present_.end(), false) != present_.end(); }

  // Present values of one feature, in platform order, with their row indices.
  std::vector<double> present_column(std::size_t feature, std::vector<std::size_t>* rows = nullptr) const {
    std::vector<double> out;
    for (std::size_t p = 0; p < platforms_.size(); ++p) {
      if (!present(p, feature)) continue;
      out.push_back(value(p, feature));
      if (rows) rows->push_back(p);
    }
    return out;
  }

  // Rescale one feature column by c (used by invariance checks).
  ResolvedMatrix with_scaled_feature(std::size_t feature, double c) const {
    ResolvedMatrix copy = *this;
    for (std::size_t p = 0; p < platforms_.size(); ++p) copy.values_[p * features_.size() + feature] *= c;
    return copy;
  }

  ResolvedMatrix with_value(std::size_t platform, std::size_t feature, double v) const {
    ResolvedMatrix copy = *this;
    copy.values_.at(platform * features_.size() + feature) = v;
    return copy;
  }

 private:
  std::vector<std::string> platforms_;
  std::vector<FeatureSpec> features_;
  std::vector<double> values_;
  std::vector<bool> present_;
};

}  // namespace ncap
