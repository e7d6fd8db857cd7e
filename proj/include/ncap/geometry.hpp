#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "ncap/aggregate.hpp"
#include "ncap/csv.hpp"
#include "ncap/error.hpp"

namespace ncap {

// A platform placed in autonomy space: x = N_AL, y = N_CP under one method.
// y may be negative (z-score sums are centred on zero).
struct NcapCoordinate {
  std::string platform;
  double x = 0.0;
  double y = 0.0;
  CombinationMethod method = CombinationMethod::Product;

  static NcapCoordinate make(std::string platform, int level, double n_cp, CombinationMethod method) {
    if (level < 0 || level > 3)
      throw DomainError("autonomy level " + std::to_string(level) + " for '" + platform + "' outside 0..3");
    if (!std::isfinite(n_cp)) throw DomainError("non-finite N_CP for '" + platform + "'");
    return {std::move(platform), static_cast<double>(level), n_cp, method};
  }
};

// Potential Autonomy Distance: Euclidean distance to the origin <0, 0>.
inline double autonomy_distance(const NcapCoordinate& c) { return std::hypot(c.x, c.y); }

// Point-to-point Euclidean distance between two coordinates of the same method.
inline double relative_distance(const NcapCoordinate& c, const NcapCoordinate& ref) {
  if (c.method != ref.method)
    throw MethodMismatchError("cannot compare '" + c.platform + "' (" + std::string(to_string(c.method)) +
                              ") with '" + ref.platform + "' (" + std::string(to_string(ref.method)) + ")");
  return std::hypot(c.x - ref.x, c.y - ref.y);
}

/// Index of the coordinate with the largest autonomy distance. Ties go to the
/// lexicographically smallest platform id.
inline std::size_t select_reference_index(std::span<const NcapCoordinate> coords) {
  if (coords.empty()) throw EmptyInputError("select_reference: no coordinates");
  std::size_t best = 0;
  double best_ad = autonomy_distance(coords[0]);
  for (std::size_t i = 1; i < coords.size(); ++i) {
    const double ad = autonomy_distance(coords[i]);
    if (ad > best_ad || (ad == best_ad && coords[i].platform < coords[best].platform)) {
      best = i;
      best_ad = ad;
    }
  }
  return best;
}

inline std::string select_reference(std::span<const NcapCoordinate> coords) {
  return coords[select_reference_index(coords)].platform;
}

struct DistanceReport {
  CombinationMethod method = CombinationMethod::Product;
  std::vector<std::string> platforms;
  std::vector<double> absolute;
  std::string reference;
  std::vector<double> relative;
};

inline DistanceReport distance_report(std::span<const NcapCoordinate> coords) {
  const std::size_t ref = select_reference_index(coords);
  DistanceReport report;
  report.method = coords[ref].method;
  report.reference = coords[ref].platform;
  for (const auto& c : coords) {
    report.platforms.push_back(c.platform);
    report.absolute.push_back(autonomy_distance(c));
    report.relative.push_back(relative_distance(c, coords[ref]));
  }
  return report;
}

/// Coordinates of every platform under one method column.
inline std::vector<NcapCoordinate> make_coordinates(const ScoreTable& scores, std::span<const int> levels,
                                                    CombinationMethod method) {
  if (levels.size() != scores.platforms.size())
    throw DimensionError("got " + std::to_string(levels.size()) + " autonomy levels for " +
                         std::to_string(scores.platforms.size()) + " platforms");
  const auto& column = scores.column(method);
  std::vector<NcapCoordinate> coords;
  for (std::size_t p = 0; p < levels.size(); ++p)
    coords.push_back(NcapCoordinate::make(scores.platforms[p], levels[p], column[p], method));
  return coords;
}

inline std::string fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Plot-ready CSV rows "platform,method,n_al,n_cp"; N_CP at 6 decimals.
inline std::string coordinate_plot_data(std::span<const NcapCoordinate> coords) {
  std::string out = "platform,method,n_al,n_cp\n";
  for (const auto& c : coords) {
    out += csv::escape(c.platform);
    out += ',';
    out += to_string(c.method);
    out += ',';
    out += std::to_string(static_cast<int>(c.x));
    out += ',';
    out += fixed(c.y, 6);
    out += '\n';
  }
  return out;
}

}  // namespace ncap
