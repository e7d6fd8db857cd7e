#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncap/ranking.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace ncap;

TEST_CASE("competition ranking, highest first", "[ranking]") {
  CHECK(rank_scores(std::vector<double>{0.18, 0.17, 0.20, 0.35, 0.53, 0.39, 0.38}) ==
        std::vector<int>{6, 7, 5, 4, 1, 2, 3});
  CHECK(rank_scores(std::vector<double>{1.0, 1.0}) == std::vector<int>{1, 1});
  CHECK(rank_scores(std::vector<double>{3, 1, 2}) == std::vector<int>{1, 3, 2});
  CHECK(rank_scores(std::vector<double>{5, 7, 7, 1}) == std::vector<int>{3, 1, 1, 4});
  CHECK(rank_scores(std::vector<double>{}).empty());
  CHECK_THROWS_AS(rank_scores(std::vector<double>{1.0, INFINITY}), DomainError);
}

TEST_CASE("tie groups", "[ranking]") {
  const auto groups = tie_groups(std::vector<int>{3, 1, 1, 4, 3});
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::vector<std::size_t>{0, 4});
  CHECK(groups[1] == std::vector<std::size_t>{1, 2});
}

TEST_CASE("ranks are invariant under increasing transforms", "[ranking][property]") {
  test::Gen gen(8);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = gen.column(static_cast<std::size_t>(gen.integer(1, 10)), -5, 5);
    if (gen.coin()) x.back() = x.front();  // exercise ties
    std::vector<double> y;
    for (double v : x) y.push_back(std::exp(v) * 3.0 + 1.0);
    REQUIRE(rank_scores(x) == rank_scores(y));
  }
}

TEST_CASE("kendall tau-b", "[ranking]") {
  const std::vector<int> a = {1, 2, 3, 4};
  CHECK(kendall_tau(a, a) == 1.0);
  CHECK(kendall_tau(a, std::vector<int>{4, 3, 2, 1}) == -1.0);

  // 14 concordant, 7 discordant over 21 pairs
  const std::vector<int> s_max = {6, 7, 5, 4, 1, 2, 3}, s_zsc = {7, 2, 5, 4, 1, 3, 6};
  CHECK(kendall_tau(s_max, s_zsc) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(kendall_tau(s_max, s_zsc) == test::brute_kendall_tau_b(s_max, s_zsc));

  // constant ranking: undefined coefficient
  CHECK(kendall_tau(std::vector<int>{1, 1}, std::vector<int>{1, 1}) == 1.0);
  CHECK(kendall_tau(std::vector<int>{1, 1}, std::vector<int>{1, 2}) == 0.0);
  CHECK(kendall_tau(std::vector<int>{1}, std::vector<int>{1}) == 1.0);
  CHECK_THROWS_AS(kendall_tau(std::vector<int>{1, 2}, std::vector<int>{1}), DimensionError);
}

TEST_CASE("kendall tau by platform id", "[ranking]") {
  const RankColumn a{{"x", "y", "z"}, {1, 2, 3}};
  const RankColumn b{{"z", "x", "y"}, {3, 1, 2}};
  CHECK(kendall_tau(a, b) == 1.0);
  const RankColumn c{{"x", "y", "w"}, {1, 2, 3}};
  CHECK_THROWS_AS(kendall_tau(a, c), DimensionError);
}

TEST_CASE("kendall tau matches the pair-counting oracle", "[ranking][property]") {
  test::Gen gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(0, 8));
    const auto a = gen.ranking(n, gen.coin());
    const auto b = gen.ranking(n, gen.coin());
    const double tau = kendall_tau(a, b);
    REQUIRE(tau == test::brute_kendall_tau_b(a, b));
    REQUIRE(tau == kendall_tau(b, a));
    REQUIRE((tau >= -1.0 && tau <= 1.0));
  }
}

TEST_CASE("consensus report", "[ranking]") {
  ScoreTable scores{{"A", "B", "C"},
                    {CombinationMethod::Max, CombinationMethod::Sum},
                    {{0.1, 0.9, 0.5}, {0.1, 0.9, 0.5}}};
  const auto stats = consensus_report(rank_table(scores));
  CHECK(stats.tau[0][1] == 1.0);
  CHECK(stats.tau[1][0] == 1.0);
  CHECK(stats.unanimous_first == std::vector<std::string>{"B"});
  CHECK(stats.unanimous.size() == 3);

  scores.scores[1] = {0.5, 0.9, 0.1};
  const auto split = consensus_report(rank_table(scores));
  CHECK(split.unanimous_first == std::vector<std::string>{"B"});
  CHECK(split.unanimous.size() == 1);
  CHECK(split.tau[0][1] == Approx(1.0 / 3.0));

  ScoreTable single{{"A"}, {CombinationMethod::Max}, {{1.0}}};
  CHECK_THROWS_AS(consensus_report(rank_table(single)), InsufficientMethodsError);
}
