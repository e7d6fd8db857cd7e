#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncap/error.hpp"
#include "ncap/feature_matrix.hpp"
#include "ncap/normalize.hpp"

namespace ncap {

// The five ways of producing a component-performance score N_CP.
enum class CombinationMethod { Max, Sum, Map, Zsc, Product };

inline constexpr std::array<CombinationMethod, 5> kAllMethods = {
    CombinationMethod::Max, CombinationMethod::Sum, CombinationMethod::Map, CombinationMethod::Zsc,
    CombinationMethod::Product};

inline std::string_view to_string(CombinationMethod m) {
  switch (m) {
    case CombinationMethod::Max: return "max";
    case CombinationMethod::Sum: return "sum";
    case CombinationMethod::Map: return "map";
    case CombinationMethod::Zsc: return "zsc";
    case CombinationMethod::Product: return "product";
  }
  return "?";
}

// Column heading used in report tables.
inline std::string_view label(CombinationMethod m) {
  switch (m) {
    case CombinationMethod::Max: return "S_max";
    case CombinationMethod::Sum: return "S_sum";
    case CombinationMethod::Map: return "S_map";
    case CombinationMethod::Zsc: return "S_zsc";
    case CombinationMethod::Product: return "P";
  }
  return "?";
}

inline std::optional<CombinationMethod> find_method(std::string_view name) {
  for (auto m : kAllMethods) {
    if (name == to_string(m) || name == label(m)) return m;
  }
  if (name == "P" || name == "prod") return CombinationMethod::Product;
  return std::nullopt;
}

inline CombinationMethod parse_method(std::string_view name) {
  if (auto m = find_method(name)) return *m;
  throw UsageError("unknown method '" + std::string(name) + "' (expected max,sum,map,zsc,product)");
}

inline std::optional<NormalizationMethod> normalization_of(CombinationMethod m) {
  switch (m) {
    case CombinationMethod::Max: return NormalizationMethod::Max;
    case CombinationMethod::Sum: return NormalizationMethod::Sum;
    case CombinationMethod::Map: return NormalizationMethod::Map;
    case CombinationMethod::Zsc: return NormalizationMethod::Zsc;
    case CombinationMethod::Product: return std::nullopt;
  }
  return std::nullopt;
}

enum class WeightScheme { Uniform, UserDefined };

// Non-negative weight magnitudes summing to 1. Feature direction is kept on
// FeatureSpec, never folded into the weights.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  static WeightVector uniform(std::size_t n) {
    if (n == 0) throw WeightError("weight vector must not be empty");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)), WeightScheme::Uniform);
  }

  static WeightVector user_defined(std::vector<double> weights) {
    if (weights.empty()) throw WeightError("weight vector must not be empty");
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!std::isfinite(weights[i]) || weights[i] < 0.0)
        throw WeightError("weight " + std::to_string(i) + " must be finite and non-negative");
      total += weights[i];
    }
    if (std::abs(total - 1.0) > kSumTolerance)
      throw WeightError("weights sum to " + std::to_string(total) + ", expected 1");
    return WeightVector(std::move(weights), WeightScheme::UserDefined);
  }

  std::span<const double> values() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_.at(i); }
  std::size_t size() const noexcept { return weights_.size(); }
  WeightScheme scheme() const noexcept { return scheme_; }

 private:
  WeightVector(std::vector<double> w, WeightScheme s) : weights_(std::move(w)), scheme_(s) {}

  std::vector<double> weights_;
  WeightScheme scheme_;
};

// N_CP per platform for each requested method.
struct ScoreTable {
  std::vector<std::string> platforms;
  std::vector<CombinationMethod> methods;
  std::vector<std::vector<double>> scores;  // [method][platform]

  bool has(CombinationMethod m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

  const std::vector<double>& column(CombinationMethod m) const {
    const auto it = std::find(methods.begin(), methods.end(), m);
    if (it == methods.end()) throw UsageError("score table has no '" + std::string(to_string(m)) + "' column");
    return scores[static_cast<std::size_t>(it - methods.begin())];
  }

  void validate() const {
    if (platforms.empty()) throw EmptyInputError("score table has no platforms");
    if (scores.size() != methods.size()) throw DimensionError("score table: method count mismatch");
    for (std::size_t k = 0; k < methods.size(); ++k) {
      if (scores[k].size() != platforms.size()) throw DimensionError("score table: platform count mismatch");
      for (std::size_t p = 0; p < platforms.size(); ++p) {
        if (!std::isfinite(scores[k][p]))
          throw DomainError("non-finite " + std::string(to_string(methods[k])) + " score for '" + platforms[p] + "'");
      }
    }
  }
};

/// Σ s_i·w_i·η_i for one platform, s_i = ±1 by direction.
inline double signed_weighted_sum(std::span<const double> eta, std::span<const double> weights,
                                  std::span<const Direction> directions) {
  if (eta.size() != weights.size() || eta.size() != directions.size())
    throw DimensionError("signed_weighted_sum: length mismatch");
  double score = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) score += sign(directions[i]) * weights[i] * eta[i];
  return score;
}

/// Π φ_i^(s_i·w_i) for one platform on raw (unnormalized) values.
inline double signed_weighted_product(std::span<const double> raw, std::span<const double> weights,
                                      std::span<const Direction> directions) {
  if (raw.size() != weights.size() || raw.size() != directions.size())
    throw DimensionError("signed_weighted_product: length mismatch");
  double log_score = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0)) throw ProductDomainError("value at index " + std::to_string(i) + " is not strictly positive");
    log_score += sign(directions[i]) * weights[i] * std::log(raw[i]);
  }
  return std::exp(log_score);
}

namespace detail {

inline void check_weights(const ResolvedMatrix& m, const WeightVector& w) {
  if (w.size() != m.feature_count())
    throw DimensionError("weight vector has " + std::to_string(w.size()) + " entries for " +
                         std::to_string(m.feature_count()) + " features");
}

// Weights over the features present for one platform, rescaled to sum to 1
// when some are excluded. Absent features get weight 0.
inline std::vector<double> effective_weights(const ResolvedMatrix& m, const WeightVector& w, std::size_t platform) {
  std::vector<double> out(w.values().begin(), w.values().end());
  if (!m.has_exclusions()) return out;
  double kept = 0.0;
  bool any = false;
  for (std::size_t f = 0; f < out.size(); ++f) {
    if (m.present(platform, f)) {
      kept += out[f];
      any = true;
    } else {
      out[f] = 0.0;
    }
  }
  if (!any) throw MissingValueError("platform '" + m.platforms()[platform] + "' has no present features");
  if (kept > 0.0)
    for (double& x : out) x /= kept;
  return out;
}

inline std::vector<Direction> directions(const ResolvedMatrix& m) {
  std::vector<Direction> out;
  for (const auto& f : m.features()) out.push_back(f.direction);
  return out;
}

}  // namespace detail

/// S_k per platform: normalize each feature column with `method`, then take
/// the direction-signed weighted sum across features.
inline std::vector<double> weighted_sum(const ResolvedMatrix& m, const WeightVector& w, NormalizationMethod method,
                                        ZscoreConvention convention = ZscoreConvention::Population) {
  detail::check_weights(m, w);
  const std::size_t rows = m.platform_count();
  const std::size_t cols = m.feature_count();

  std::vector<double> eta(rows * cols, 0.0);
  for (std::size_t f = 0; f < cols; ++f) {
    std::vector<std::size_t> idx;
    const auto column = m.present_column(f, &idx);
    if (column.empty()) throw DegenerateColumnError("feature '" + m.features()[f].name + "' has no present values");
    NormalizedColumn normalized{{}, method};
    try {
      normalized = normalize(column, method, convention);
    } catch (const DomainError& e) {
      throw DomainError("feature '" + m.features()[f].name + "': " + e.what());
    } catch (const EmptyColumnError& e) {
      throw EmptyColumnError("feature '" + m.features()[f].name + "': " + e.what());
    }
    for (std::size_t j = 0; j < idx.size(); ++j) eta[idx[j] * cols + f] = normalized.values[j];
  }

  const auto dirs = detail::directions(m);
  std::vector<double> scores;
  scores.reserve(rows);
  for (std::size_t p = 0; p < rows; ++p) {
    const auto weights = detail::effective_weights(m, w, p);
    scores.push_back(signed_weighted_sum(std::span(eta).subspan(p * cols, cols), weights, dirs));
  }
  return scores;
}

/// P per platform on raw values; no normalization step.
inline std::vector<double> weighted_product(const ResolvedMatrix& m, const WeightVector& w) {
  detail::check_weights(m, w);
  const auto dirs = detail::directions(m);
  std::vector<double> scores;
  scores.reserve(m.platform_count());
  for (std::size_t p = 0; p < m.platform_count(); ++p) {
    const auto weights = detail::effective_weights(m, w, p);
    std::vector<double> raw(m.feature_count(), 1.0);
    for (std::size_t f = 0; f < m.feature_count(); ++f) {
      if (!m.present(p, f)) continue;
      raw[f] = m.value(p, f);
      if (!(raw[f] > 0.0))
        throw ProductDomainError("platform '" + m.platforms()[p] + "', feature '" + m.features()[f].name +
                                 "': value " + std::to_string(raw[f]) + " is not strictly positive");
    }
    scores.push_back(signed_weighted_product(raw, weights, dirs));
  }
  return scores;
}

inline std::vector<double> score(const ResolvedMatrix& m, const WeightVector& w, CombinationMethod method,
                                 ZscoreConvention convention = ZscoreConvention::Population) {
  if (auto norm = normalization_of(method)) return weighted_sum(m, w, *norm, convention);
  return weighted_product(m, w);
}

inline ScoreTable score_all(const ResolvedMatrix& m, const WeightVector& w, std::span<const CombinationMethod> methods,
                            ZscoreConvention convention = ZscoreConvention::Population) {
  if (methods.empty()) throw EmptyInputError("no combination methods requested");
  ScoreTable table{m.platforms(), {methods.begin(), methods.end()}, {}};
  for (auto method : methods) table.scores.push_back(score(m, w, method, convention));
  table.validate();
  return table;
}

}  // namespace ncap
