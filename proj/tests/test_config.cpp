// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include <sstream>

#include <gtest/gtest.h>

#include "cegocd/config.hpp"
#include "cegocd/errors.hpp"
#include "test_support.hpp"

namespace cegocd {
namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, Defaults) {
  const Config c;
  EXPECT_EQ(c.top_k, 10u);
  EXPECT_EQ(c.max_hops, 5u);
  EXPECT_EQ(c.max_paths, 10u);
  EXPECT_EQ(c.theta_max, 3u);
  EXPECT_EQ(c.max_in_flight, 4u);
  EXPECT_DOUBLE_EQ(c.prune_ramp.min_quantile, 0.25);
  EXPECT_DOUBLE_EQ(c.prune_ramp.max_quantile, 0.75);
  EXPECT_DOUBLE_EQ(c.prune_ramp.edges_at_max, 400.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesEverySection) {
  const auto c = parse(R"(
# comment
[retrieval]
top_k = 7        # trailing comment
max_hops = 3
title_type = "Paper"
[optimization]
prune_threshold_override = 0.9
keyword_aggregation = "mean"
completion_relation_types = ["similar_to"]
[community]
theta_max = 1
[providers]
target_types = ["Task"]
cache_dir = "cache # not a comment"
timeout_seconds = 5
[report]
include_timings = false
)");
  EXPECT_EQ(c.top_k, 7u);
  EXPECT_EQ(c.max_hops, 3u);
  EXPECT_EQ(c.title_type, "Paper");
  EXPECT_EQ(c.prune_threshold_override, 0.9);
  EXPECT_EQ(c.aggregation, KeywordAggregation::kMean);
  EXPECT_EQ(c.completion_relation_types, std::vector<std::string>{"similar_to"});
  EXPECT_EQ(c.theta_max, 1u);
  EXPECT_EQ(c.mock_target_types, std::vector<std::string>{"Task"});
  EXPECT_EQ(c.cache_dir->string(), "cache # not a comment");
  EXPECT_EQ(c.timeout.count(), 5);
  EXPECT_FALSE(c.include_timings);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse("[nowhere]\n"), ConfigError);
  EXPECT_THROW(parse("[retrieval]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("[retrieval]\ntop_k = 0\n"), ConfigError);
  EXPECT_THROW(parse("[retrieval]\ntop_k = 2.5\n"), ConfigError);
  EXPECT_THROW(parse("[retrieval]\ntop_k = \"ten\"\n"), ConfigError);
  EXPECT_THROW(parse("[optimization]\ncompletion_relation_types = [\"cites\"]\n"), ConfigError);
  EXPECT_THROW(parse("[optimization]\nprune_min_quantile = 0.9\nprune_max_quantile = 0.1\n"), ConfigError);
  EXPECT_THROW(parse("[optimization]\nkeyword_aggregation = \"median\"\n"), ConfigError);
  EXPECT_THROW(parse("[retrieval]\ntop_k\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent.toml"), ConfigError);
}

TEST(Config, ErrorNamesLine) {
  try {
    parse("[retrieval]\n\ntop_k = 1\nwhat = 2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Config, FixtureConfigLoads) {
  const auto c = load_config(testing::fixtures_dir() / "toy_config.toml");
  EXPECT_FALSE(c.include_timings);
  EXPECT_EQ(c.theta_max, 3u);
}

}  // namespace
}  // namespace cegocd
