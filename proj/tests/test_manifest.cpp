#include <gtest/gtest.h>

#include <regex>

#include "driftbench/manifest.hpp"

using namespace driftbench;

TEST(Manifest, JsonRoundTrip) {
  RunManifest m;
  m.subcommand = "train";
  m.parameters = {{"dim", 25}, {"objective", "neg:5"}};
  m.input_digests = {{"corpus.txt", std::string(64, 'a')}};
  m.seed = 7;
  m.timestamp = utc_timestamp();
  const auto back = manifest_from_json(nlohmann::json::parse(to_json(m).dump()));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.timestamp, m.timestamp);
  EXPECT_EQ(back.tool_version, kToolVersion);
}

TEST(Manifest, EqualityIgnoresTimestampOnly) {
  RunManifest a;
  a.subcommand = "stats";
  auto b = a;
  b.timestamp = "2000-01-01T00:00:00Z";
  EXPECT_EQ(a, b);
  b.seed = 1;
  EXPECT_NE(a, b);
  EXPECT_TRUE(to_json(a)["seed"].is_null());
}

TEST(Manifest, TimestampFormat) {
  EXPECT_TRUE(std::regex_match(utc_timestamp(), std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

TEST(Manifest, MalformedIsDataError) {
  EXPECT_THROW(manifest_from_json(nlohmann::json::object()), DataError);
  EXPECT_THROW(manifest_from_json(nlohmann::json{{"subcommand", 3}}), DataError);
}
