#pragma once

// Test-only oracles and random generators. Nothing here calls into the
// library's algorithms; the oracles recompute from definitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ncap/feature_matrix.hpp"

namespace ncap::test {

inline std::string data_path(const std::string& name) { return std::string(NCAP_DATA_DIR) + "/" + name; }

inline bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Exhaustive O(n^2) tau-b: count every pair.
inline double brute_kendall_tau_b(const std::vector<int>& a, const std::vector<int>& b) {
  std::int64_t concordant = 0, discordant = 0, tied_a = 0, tied_b = 0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = (a[i] > a[j]) - (a[i] < a[j]);
      const int db = (b[i] > b[j]) - (b[i] < b[j]);
      if (da == 0 && db == 0) continue;
      if (da == 0) ++tied_a;
      else if (db == 0) ++tied_b;
      else if (da == db) ++concordant;
      else ++discordant;
    }
  }
  // n0 - n1 = pairs not tied in a = concordant + discordant + tied_b (tied only in b)
  const auto not_tied_a = concordant + discordant + tied_b;
  const auto not_tied_b = concordant + discordant + tied_a;
  if (not_tied_a == 0 || not_tied_b == 0) return a == b ? 1.0 : 0.0;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(not_tied_a) * static_cast<double>(not_tied_b));
}

// Pairwise "i strictly before j" comparison of two score vectors' orderings.
inline bool same_order(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] < a[j]) != (b[i] < b[j])) return false;
  return true;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<double> column(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  // Random point on the probability simplex.
  std::vector<double> simplex(std::size_t n) {
    std::vector<double> w(n);
    for (auto& x : w) x = std::exponential_distribution<double>(1.0)(rng_);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    return w;
  }

  // Random ranking of n items, with ties when `ties` is set.
  std::vector<int> ranking(std::size_t n, bool ties) {
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = ties ? integer(1, static_cast<int>(n)) : static_cast<int>(i) + 1;
    if (!ties) std::shuffle(r.begin(), r.end(), rng_);
    return r;
  }

  ResolvedMatrix matrix(std::size_t platforms, std::size_t features, double lo, double hi, bool mixed_directions) {
    std::vector<std::string> ids;
    for (std::size_t p = 0; p < platforms; ++p) ids.push_back("P" + std::to_string(p));
    std::vector<FeatureSpec> specs;
    for (std::size_t f = 0; f < features; ++f) {
      FeatureSpec s;
      s.name = "f" + std::to_string(f);
      s.direction = mixed_directions && coin() ? Direction::LessIsBetter : Direction::MoreIsBetter;
      specs.push_back(std::move(s));
    }
    return ResolvedMatrix(std::move(ids), std::move(specs), column(platforms * features, lo, hi));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ncap::test
