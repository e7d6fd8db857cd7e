#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "ncap/ingest.hpp"
#include "support.hpp"

using namespace ncap;

namespace {

EvalConfig small_config() {
  return parse_config(R"({
    "features": [
      {"name": "res", "direction": "more_is_better", "weight": 0.5, "encoding": {"FHD": 2073600, "HD": 921600}},
      {"name": "charge", "unit": "min", "direction": "less_is_better", "weight": 0.5}
    ]
  })");
}

}  // namespace

TEST_CASE("qualitative tokens resolve through the encoding map", "[ingest]") {
  const auto m = parse_feature_matrix("platform,res,charge\nX,FHD,10\nY,HD,N/A\nZ,-,\n", small_config());
  REQUIRE(m.platform_count() == 3);
  REQUIRE(m.feature_count() == 2);
  CHECK(m.at(0, 0) == 2073600.0);
  CHECK(m.at(1, 0) == 921600.0);
  CHECK(m.at(0, 1) == 10.0);
  CHECK_FALSE(m.at(1, 1).has_value());  // "N/A"
  CHECK_FALSE(m.at(2, 0).has_value());  // "-"
  CHECK_FALSE(m.at(2, 1).has_value());  // empty
  CHECK(m.features()[1].direction == Direction::LessIsBetter);
  CHECK(m.features()[1].unit == "min");
}

TEST_CASE("the UAS fixture parses to 7 platforms x 10 features with 4 gaps", "[ingest]") {
  const auto config = load_config(test::data_path("uas_config.json"));
  const auto m = load_feature_matrix(test::data_path("uas_features.csv"), config);
  CHECK(m.platform_count() == 7);
  CHECK(m.feature_count() == 10);
  CHECK(m.missing_count() == 4);
  CHECK_FALSE(m.at(0, 5).has_value());  // A thermal
  CHECK_FALSE(m.at(2, 1).has_value());  // C charge
  CHECK_FALSE(m.at(2, 3).has_value());  // C fov
  CHECK_FALSE(m.at(6, 1).has_value());  // G charge
  CHECK(m.at(1, 5) == 19200.0);         // "160×120"
  CHECK(m.at(4, 3) == 200.0);           // "200°"
  CHECK(config.profiles.size() == 7);
}

TEST_CASE("parse errors name the offending cell", "[ingest]") {
  const auto config = small_config();
  try {
    parse_feature_matrix("platform,res,charge\nX,4k,10\n", config, "m.csv");
    FAIL("expected EncodingError");
  } catch (const EncodingError& e) {
    const std::string what = e.what();
    CHECK(what.find("m.csv:2") != std::string::npos);
    CHECK(what.find("'4k'") != std::string::npos);
    CHECK(what.find("res") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,charge\nX,FHD\n", config), FormatError);
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,res\nX,FHD,HD\n", config), FormatError);
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,speed\nX,FHD,3\n", config), FormatError);
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,charge\n", config), FormatError);
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,charge\nX,FHD,inf\n", config), FormatError);
  CHECK_THROWS_AS(parse_feature_matrix("platform,res,charge\nX,FHD,1\nX,HD,2\n", config), FormatError);
}

TEST_CASE("config validation", "[ingest]") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"features":[{"name":"a","direction":"up"}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"features":[{"name":"a","direction":"more"},{"name":"a","direction":"more"}]})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"features":[{"name":"a","direction":"more","encoding":{"x":0}}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"missing":"guess"})"), ConfigError);

  const auto cfg = parse_config(R"({"missing":"exclude","zscore":"sample"})");
  CHECK(cfg.missing == MissingPolicy::Exclude);
  CHECK(cfg.zscore == ZscoreConvention::Sample);
}

TEST_CASE("resolve_missing policies", "[ingest]") {
  const auto config = parse_config(R"({"features":[{"name":"a","direction":"more"},{"name":"b","direction":"more"}]})");
  const auto m = parse_feature_matrix("platform,a,b\nX,10,1\nY,-,2\nZ,20,3\n", config);

  CHECK_THROWS_AS(resolve_missing(m, MissingPolicy::Error), MissingValueError);

  const auto mean = resolve_missing(m, MissingPolicy::ColumnMean);
  CHECK(mean.value(0, 0) == 10.0);
  CHECK(mean.value(1, 0) == 15.0);
  CHECK(mean.value(2, 0) == 20.0);
  CHECK_FALSE(mean.has_exclusions());

  const auto excl = resolve_missing(m, MissingPolicy::Exclude);
  CHECK(excl.has_exclusions());
  CHECK_FALSE(excl.present(1, 0));
  CHECK(excl.present(1, 1));

  const auto gaps = parse_feature_matrix("platform,a,b\nX,-,1\nY,-,2\n", config);
  CHECK_THROWS_AS(resolve_missing(gaps, MissingPolicy::ColumnMean), DegenerateColumnError);
}

TEST_CASE("resolve_missing never alters present cells", "[ingest][property]") {
  const auto config = parse_config(R"({"features":[{"name":"a","direction":"more"},{"name":"b","direction":"less"},
                                                   {"name":"c","direction":"more"}]})");
  test::Gen gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = static_cast<std::size_t>(gen.integer(1, 6));
    std::vector<std::string> ids;
    std::vector<Cell> cells;
    for (std::size_t p = 0; p < rows; ++p) {
      ids.push_back("p" + std::to_string(p));
      for (int f = 0; f < 3; ++f) cells.push_back(p == 0 || gen.integer(0, 3) ? Cell(gen.uniform(0.1, 50)) : Cell());
    }
    const FeatureMatrix m(ids, config.features, cells);
    for (auto policy : {MissingPolicy::ColumnMean, MissingPolicy::Exclude}) {
      const auto r = resolve_missing(m, policy);
      for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t f = 0; f < 3; ++f) {
          if (m.at(p, f)) REQUIRE(r.value(p, f) == *m.at(p, f));
          if (policy == MissingPolicy::ColumnMean) REQUIRE(r.present(p, f));
        }
    }
  }
}

TEST_CASE("parse -> serialize -> parse round-trips", "[ingest][property]") {
  const auto config = load_config(test::data_path("uas_config.json"));
  const auto m = load_feature_matrix(test::data_path("uas_features.csv"), config);
  const auto again = parse_feature_matrix(serialize_feature_matrix(m), config);
  CHECK(again == m);

  const auto small = small_config();
  test::Gen gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> ids;
    std::vector<Cell> cells;
    const auto rows = static_cast<std::size_t>(gen.integer(1, 5));
    for (std::size_t p = 0; p < rows; ++p) {
      ids.push_back(p % 2 ? "id, \"quoted\" " + std::to_string(p) : "P" + std::to_string(p));
      for (int f = 0; f < 2; ++f) cells.push_back(gen.integer(0, 4) ? Cell(gen.uniform(-1e6, 1e6)) : Cell());
    }
    // trim() strips outer whitespace; keep ids trim-stable
    for (auto& id : ids) id = csv::trim(id);
    const FeatureMatrix original(ids, small.features, cells);
    REQUIRE(parse_feature_matrix(serialize_feature_matrix(original), small) == original);
  }
}

TEST_CASE("score tables load from CSV", "[ingest]") {
  const auto t = load_score_table(test::data_path("uas_scores_uniform.csv"));
  CHECK(t.platforms.size() == 7);
  CHECK(t.methods.size() == 5);
  CHECK(t.column(CombinationMethod::Product)[4] == 4.63);
  CHECK_THROWS_AS(parse_score_table("platform,bogus\nA,1\n"), FormatError);
  CHECK_THROWS_AS(parse_score_table("platform,max\nA,x\n"), FormatError);
}
