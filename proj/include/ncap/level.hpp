#pragma once

#include <array>
#include <string>
#include <vector>

#include "ncap/error.hpp"

namespace ncap {

enum class Layer { Perception = 0, Modeling = 1, Planning = 2, Execution = 3 };

inline constexpr std::array<const char*, 4> kLayerNames = {"perception", "modeling", "planning", "execution"};

// What a platform can do in each of the four NCAP layers. Layers are
// cumulative: each builds on the one below it.
struct CapabilityProfile {
  std::string platform;
  bool perception = true;
  bool modeling = false;
  bool planning = false;
  bool execution = false;
  std::array<std::string, 4> evidence{};  // free text per layer, reporting only

  bool operator==(const CapabilityProfile&) const = default;
};

struct AutonomyLevel {
  int value = 0;  // 0 (no autonomy) .. 3 (full autonomy)
  std::vector<std::string> warnings;
};

// Level = length of the consecutive true prefix of (modeling, planning,
// execution). Capabilities above the first gap do not count and are reported.
inline AutonomyLevel classify(const CapabilityProfile& p) {
  if (!p.perception)
    throw InadmissibleProfileError("platform '" + p.platform + "' has no perception layer");

  const std::array<bool, 3> layers = {p.modeling, p.planning, p.execution};
  AutonomyLevel level;
  while (level.value < 3 && layers[static_cast<std::size_t>(level.value)]) ++level.value;

  for (std::size_t i = static_cast<std::size_t>(level.value) + 1; i < layers.size(); ++i) {
    if (layers[i]) {
      level.warnings.push_back(std::string(kLayerNames[i + 1]) + " present without " +
                               kLayerNames[static_cast<std::size_t>(level.value) + 1] + "; ignored");
    }
  }
  return level;
}

}  // namespace ncap
