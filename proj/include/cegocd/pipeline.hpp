// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// End-to-end query flow: retrieval, refinement, community detection and
// answer generation, recorded in a RunReport.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cegocd/community.hpp"
#include "cegocd/config.hpp"
#include "cegocd/entity_index.hpp"
#include "cegocd/kg_store.hpp"
#include "cegocd/optimization.hpp"
#include "cegocd/provider_decorators.hpp"
#include "cegocd/providers.hpp"

namespace cegocd {

inline constexpr std::string_view kReportSchema = "cegocd-report/1";

struct KeywordStats {
  std::string keyword;
  std::size_t candidates = 0;
  std::size_t retained = 0;
  bool operator==(const KeywordStats&) const = default;
};

struct RetrievalStats {
  std::vector<KeywordStats> keywords;
  std::size_t entity_candidates = 0;
  std::size_t filtered_entities = 0;
  std::size_t candidate_relation_types = 0;
  std::size_t filtered_relation_types = 0;
  std::size_t pair_count = 0;
  std::size_t path_count = 0;
  std::size_t subgraph_nodes = 0;
  std::size_t subgraph_edges = 0;
  bool operator==(const RetrievalStats&) const = default;
};

/// Edge counts and mean keyword relevance before pruning, after pruning and
/// after completion.
struct TripleMetrics {
  std::size_t edges_before_prune = 0;
  std::size_t edges_after_prune = 0;
  std::size_t edges_after_completion = 0;
  std::size_t nodes_before_prune = 0;
  std::size_t nodes_after_prune = 0;
  double mean_semantic_before_prune = 0.0;
  double mean_semantic_after_prune = 0.0;
  double mean_semantic_after_completion = 0.0;
  std::optional<double> prune_threshold;
  std::size_t completed_edges = 0;
  bool operator==(const TripleMetrics&) const = default;
};

struct CommunityReport {
  std::size_t id = 0;
  std::vector<std::string> members;
  std::optional<std::string> central_title;
  std::string verbalization;
  std::optional<std::string> theme;
  std::optional<std::string> answer;  // unset when the provider failed
  bool operator==(const CommunityReport&) const = default;
};

struct PartitionSummary {
  double modularity = 0.0;
  std::size_t theta_max = 3;
  std::vector<MergeStep> merges;
  bool operator==(const PartitionSummary&) const = default;
};

struct RunReport {
  std::string schema{kReportSchema};
  QueryContext context;
  std::vector<std::string> dropped_target_types;
  RetrievalStats retrieval;
  TripleMetrics triples;
  bool degraded_empty_subgraph = false;
  bool no_evidence = false;
  PartitionSummary partition;
  std::vector<CommunityReport> communities;
  std::string final_answer;
  std::vector<CallRecord> provider_calls;
  double total_seconds = 0.0;

  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& report);
/// Throws Error when the schema tag or a required field is missing.
RunReport report_from_json(const nlohmann::json& j);
/// Pretty-printed, newline-terminated.
std::string dump_report(const RunReport& report);

nlohmann::json subgraph_to_json(const KnowledgeGraph& graph, const WeightedSubgraph& wsub);

/// The backends used by one or more pipeline runs.
struct Providers {
  std::shared_ptr<LanguageModel> llm;
  std::shared_ptr<Embedder> embedder;
};

/// Mock backends, or remote ones configured from the environment. In both
/// cases the language model is wrapped in a response cache.
Providers make_mock_providers(const Config& config);
Providers make_remote_providers(const Config& config);

class Pipeline {
 public:
  Pipeline(const KnowledgeGraph& graph, Providers providers, Config config);

  /// Throws EmptyKeywordsError, ProtocolViolation and TransportError from the
  /// extraction and filtering stages; later provider failures degrade.
  RunReport answer(const std::string& query, WeightedSubgraph* refined_out = nullptr) const;

  const EntityIndex& index() const { return index_; }
  const Config& config() const { return config_; }

 private:
  const KnowledgeGraph& graph_;
  Providers providers_;
  Config config_;
  EntityIndex index_;
};

RunReport answer(const std::string& query, const KnowledgeGraph& graph, Providers providers,
                 const Config& config, WeightedSubgraph* refined_out = nullptr);

}  // namespace cegocd
