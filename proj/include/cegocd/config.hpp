// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Every tunable of the pipeline, loadable from a TOML-style key/value file:
//
//   # comment
//   [retrieval]
//   top_k = 10
//   target_types = ["Dataset", "Task"]
//
// Values are quoted strings, numbers, booleans or flat arrays of strings.

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cegocd/optimization.hpp"

namespace cegocd {

struct Config {
  // [retrieval]
  std::size_t top_k = 10;
  std::size_t max_hops = 5;
  std::size_t max_paths = 10;
  std::string title_type = "Title";

  // [optimization]
  PruneRamp prune_ramp;
  std::optional<double> prune_threshold_override;
  KeywordAggregation aggregation = KeywordAggregation::kMax;
  std::vector<std::string> completion_relation_types{kCompletionRelationTypes.begin(),
                                                     kCompletionRelationTypes.end()};

  // [community]
  std::size_t theta_max = 3;

  // [providers]
  std::vector<std::string> mock_target_types{"Dataset", "Task"};
  std::optional<std::filesystem::path> cache_dir;
  std::size_t max_in_flight = 4;
  std::chrono::seconds timeout{60};
  std::optional<std::filesystem::path> prompt_file;

  // [report]
  bool include_timings = true;

  /// Throws ConfigError on an out-of-range value.
  void validate() const;
};

/// Unknown sections or keys are rejected with ConfigError naming the line.
Config parse_config(std::istream& in, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});

}  // namespace cegocd
