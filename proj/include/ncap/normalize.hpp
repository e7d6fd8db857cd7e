#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncap/error.hpp"

namespace ncap {

enum class NormalizationMethod { Max, Sum, Map, Zsc };

inline std::string_view to_string(NormalizationMethod m) {
  switch (m) {
    case NormalizationMethod::Max: return "max";
    case NormalizationMethod::Sum: return "sum";
    case NormalizationMethod::Map: return "map";
    case NormalizationMethod::Zsc: return "zsc";
  }
  return "?";
}

// Divisor used for the z-score standard deviation.
enum class ZscoreConvention { Population, Sample };

struct NormalizedColumn {
  std::vector<double> values;
  NormalizationMethod method;
};

namespace detail {

inline void require_positive(std::span<const double> column, std::string_view op) {
  if (column.empty()) throw EmptyColumnError(std::string(op) + ": empty column");
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (!(column[i] > 0.0) || !std::isfinite(column[i]))
      throw DomainError(std::string(op) + ": value at index " + std::to_string(i) + " is not strictly positive");
  }
}

}  // namespace detail

/// Divide by the column maximum. The maximum maps to exactly 1.
inline NormalizedColumn eta_max(std::span<const double> column) {
  detail::require_positive(column, "eta_max");
  const double peak = *std::max_element(column.begin(), column.end());
  NormalizedColumn out{{}, NormalizationMethod::Max};
  out.values.reserve(column.size());
  for (double v : column) out.values.push_back(v / peak);
  return out;
}

/// Divide by the column sum; output is a proportional share of the total.
inline NormalizedColumn eta_sum(std::span<const double> column) {
  detail::require_positive(column, "eta_sum");
  const double total = std::accumulate(column.begin(), column.end(), 0.0);
  NormalizedColumn out{{}, NormalizationMethod::Sum};
  out.values.reserve(column.size());
  for (double v : column) out.values.push_back(v / total);
  return out;
}

/// Min-max range mapping onto [0, 1]. An all-equal column maps to 0.5.
inline NormalizedColumn eta_map(std::span<const double> column) {
  if (column.empty()) throw EmptyColumnError("eta_map: empty column");
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double low = *lo;
  const double range = *hi - low;
  NormalizedColumn out{{}, NormalizationMethod::Map};
  out.values.reserve(column.size());
  for (double v : column) out.values.push_back(range > 0.0 ? (v - low) / range : 0.5);
  return out;
}

/// Standard score (v - mean) / stddev. A zero-spread column maps to 0.
inline NormalizedColumn eta_zsc(std::span<const double> column,
                                ZscoreConvention convention = ZscoreConvention::Population) {
  if (column.size() < 2) throw EmptyColumnError("eta_zsc: need at least 2 values");
  NormalizedColumn out{{}, NormalizationMethod::Zsc};
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  if (*lo == *hi) {
    // Rounding in the mean would otherwise turn a constant column into +-1.
    out.values.assign(column.size(), 0.0);
    return out;
  }
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double squares = 0.0;
  for (double v : column) squares += (v - mean) * (v - mean);
  const double stddev = std::sqrt(squares / (convention == ZscoreConvention::Population ? n : n - 1.0));

  out.values.reserve(column.size());
  for (double v : column) out.values.push_back(stddev > 0.0 ? (v - mean) / stddev : 0.0);
  return out;
}

inline NormalizedColumn normalize(std::span<const double> column, NormalizationMethod method,
                                  ZscoreConvention convention = ZscoreConvention::Population) {
  switch (method) {
    case NormalizationMethod::Max: return eta_max(column);
    case NormalizationMethod::Sum: return eta_sum(column);
    case NormalizationMethod::Map: return eta_map(column);
    case NormalizationMethod::Zsc: return eta_zsc(column, convention);
  }
  throw DomainError("unknown normalization method");
}

}  // namespace ncap
