#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ncap/aggregate.hpp"
#include "ncap/error.hpp"

namespace ncap {

/// Competition ranks, highest score = 1. Equal scores share the smallest rank
/// of their group and the following rank numbers are skipped.
inline std::vector<int> rank_scores(std::span<const double> scores) {
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (!std::isfinite(scores[i])) throw DomainError("rank_scores: non-finite score at index " + std::to_string(i));

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });

  std::vector<int> ranks(scores.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const bool tied = pos > 0 && scores[order[pos]] == scores[order[pos - 1]];
    ranks[order[pos]] = tied ? ranks[order[pos - 1]] : static_cast<int>(pos) + 1;
  }
  return ranks;
}

// Groups of platform indices sharing one rank (size >= 2 only).
inline std::vector<std::vector<std::size_t>> tie_groups(std::span<const int> ranks) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> seen(ranks.size(), false);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < ranks.size(); ++j) {
      if (ranks[j] == ranks[i]) {
        group.push_back(j);
        seen[j] = true;
      }
    }
    if (group.size() > 1) groups.push_back(std::move(group));
  }
  return groups;
}

struct RankColumn {
  std::vector<std::string> platforms;
  std::vector<int> ranks;
};

struct RankTable {
  std::vector<std::string> platforms;
  std::vector<CombinationMethod> methods;
  std::vector<std::vector<int>> ranks;  // [method][platform]

  RankColumn column(std::size_t k) const { return {platforms, ranks.at(k)}; }
};

inline RankTable rank_table(const ScoreTable& scores) {
  RankTable table{scores.platforms, scores.methods, {}};
  for (const auto& column : scores.scores) table.ranks.push_back(rank_scores(column));
  return table;
}

namespace detail {

// Merge sort on `v`, returning the number of inversions (pairs i<j with
// v[i] > v[j]). Equal elements are not inversions.
inline std::int64_t count_inversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Σ t(t-1)/2 over runs of equal values in an already-sorted range.
template <typename Eq>
std::int64_t tied_pairs(std::size_t n, Eq equal_to_prev) {
  std::int64_t pairs = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal_to_prev(i)) {
      ++run;
    } else {
      pairs += run * (run - 1) / 2;
      run = 1;
    }
  }
  return pairs;
}

}  // namespace detail

/// Kendall tau-b between two rank vectors over the same items, via Knight's
/// O(n log n) algorithm. If either ranking is constant the coefficient is
/// undefined; we return 1 when the vectors are identical and 0 otherwise.
inline double kendall_tau(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw DimensionError("kendall_tau: rankings have different lengths");
  const std::size_t n = a.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a[i] != a[j] ? a[i] < a[j] : b[i] < b[j]; });

  const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n > 0 ? n - 1 : 0) / 2;
  const auto ties_a = detail::tied_pairs(n, [&](std::size_t i) { return a[order[i]] == a[order[i - 1]]; });
  const auto ties_ab = detail::tied_pairs(
      n, [&](std::size_t i) { return a[order[i]] == a[order[i - 1]] && b[order[i]] == b[order[i - 1]]; });

  std::vector<int> bs(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = b[order[i]];
  std::vector<int> scratch(n);
  const auto discordant = detail::count_inversions(bs, scratch, 0, n);
  // bs is now sorted, so runs of equal b are adjacent.
  const auto ties_b = detail::tied_pairs(n, [&](std::size_t i) { return bs[i] == bs[i - 1]; });

  const std::int64_t concordant_minus_discordant = n0 - ties_a - ties_b + ties_ab - 2 * discordant;
  const auto denom_a = n0 - ties_a;
  const auto denom_b = n0 - ties_b;
  if (denom_a == 0 || denom_b == 0) return std::equal(a.begin(), a.end(), b.begin()) ? 1.0 : 0.0;
  return static_cast<double>(concordant_minus_discordant) /
         std::sqrt(static_cast<double>(denom_a) * static_cast<double>(denom_b));
}

/// Tau-b between two rank columns, pairing platforms by id.
inline double kendall_tau(const RankColumn& a, const RankColumn& b) {
  if (a.platforms.size() != b.platforms.size() || a.ranks.size() != a.platforms.size() ||
      b.ranks.size() != b.platforms.size())
    throw DimensionError("kendall_tau: platform sets differ in size");
  std::vector<int> aligned(b.ranks.size());
  for (std::size_t i = 0; i < a.platforms.size(); ++i) {
    const auto it = std::find(b.platforms.begin(), b.platforms.end(), a.platforms[i]);
    if (it == b.platforms.end()) throw DimensionError("kendall_tau: platform '" + a.platforms[i] + "' missing");
    aligned[i] = b.ranks[static_cast<std::size_t>(it - b.platforms.begin())];
  }
  return kendall_tau(a.ranks, aligned);
}

struct UnanimousRank {
  std::string platform;
  int rank;
};

struct AgreementStats {
  std::vector<CombinationMethod> methods;
  std::vector<std::vector<double>> tau;         // [method][method], symmetric, unit diagonal
  std::vector<std::string> unanimous_first;     // platforms every method ranks 1
  std::vector<UnanimousRank> unanimous;         // every platform whose rank is the same under all methods
};

inline AgreementStats consensus_report(const RankTable& table) {
  const std::size_t k = table.methods.size();
  if (k < 2) throw InsufficientMethodsError("consensus needs at least 2 methods, got " + std::to_string(k));

  AgreementStats stats;
  stats.methods = table.methods;
  stats.tau.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      stats.tau[i][j] = stats.tau[j][i] = kendall_tau(table.ranks[i], table.ranks[j]);
    }
  }

  for (std::size_t p = 0; p < table.platforms.size(); ++p) {
    const int first = table.ranks[0][p];
    const bool same = std::all_of(table.ranks.begin(), table.ranks.end(), [&](const auto& r) { return r[p] == first; });
    if (!same) continue;
    stats.unanimous.push_back({table.platforms[p], first});
    if (first == 1) stats.unanimous_first.push_back(table.platforms[p]);
  }
  return stats;
}

}  // namespace ncap
