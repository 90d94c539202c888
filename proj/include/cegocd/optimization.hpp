// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Subgraph refinement: edge weighting and adaptive pruning, then completion of
// implicit same-type relations found by 1-D embedding projection.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cegocd/kg_store.hpp"
#include "cegocd/providers.hpp"
#include "cegocd/retrieval.hpp"

namespace cegocd {

struct WeightedEdge {
  Relation relation;
  double weight = 0.0;    // S_semantic * W_type, in [0, 1]
  double semantic = 0.0;  // S_semantic alone
  std::string description;  // set on completed edges

  bool operator==(const WeightedEdge&) const = default;
};

struct CompletionRecord {
  EntityPair pair;
  std::string relation_type;
  std::string description;
  double weight = 0.0;

  bool operator==(const CompletionRecord&) const = default;
};

struct ProjectionResult {
  std::string entity_type;
  std::vector<std::string> entity_ids;
  std::vector<double> z;
  std::vector<double> gaps;  // over ascending-sorted z
  std::optional<double> threshold;

  bool operator==(const ProjectionResult&) const = default;
};

struct WeightedSubgraph {
  std::set<std::string> nodes;
  std::vector<WeightedEdge> edges;  // sorted by relation
  std::optional<double> prune_threshold_used;
  std::vector<CompletionRecord> completions;
  std::vector<ProjectionResult> projections;

  std::size_t count(Provenance p) const;
  /// Mean S_semantic over the current edges; 0 when there are none.
  double mean_semantic() const;
  std::vector<double> weights() const;

  bool operator==(const WeightedSubgraph&) const = default;
};

enum class KeywordAggregation { kMax, kMean };

/// "<name_i> <relation type, underscores as spaces> <name_j>"
std::string verbalize_triplet(const Entity& a, std::string_view relation_type, const Entity& b);

/// Maps cosine into [0, 1] via (c + 1) / 2.
double unit_cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Scores texts against a keyword set; keyword embeddings computed once.
class SemanticScorer {
 public:
  SemanticScorer(Embedder& embedder, const std::vector<std::string>& keywords,
                 KeywordAggregation aggregation = KeywordAggregation::kMax);

  std::vector<double> score(const std::vector<std::string>& texts) const;

 private:
  Embedder& embedder_;
  std::vector<EmbeddingVector> keyword_vectors_;
  KeywordAggregation aggregation_;
};

double semantic_similarity(const Entity& a, std::string_view relation_type, const Entity& b,
                           const std::vector<std::string>& keywords, Embedder& embedder,
                           KeywordAggregation aggregation = KeywordAggregation::kMax);

WeightedSubgraph weight_edges(const KnowledgeGraph& graph, const Subgraph& sub,
                              const std::vector<std::string>& keywords, const TypeWeightTable& weights,
                              Embedder& embedder,
                              KeywordAggregation aggregation = KeywordAggregation::kMax);

/// Linear interpolation between order statistics, h = (n - 1) p.
double linear_quantile(std::vector<double> values, double p);

struct PruneRamp {
  double min_quantile = 0.25;
  double max_quantile = 0.75;
  double edges_at_max = 400.0;

  /// q = min(max_quantile, max(min_quantile, |E| / edges_at_max))
  double quantile_for(std::size_t edge_count) const;
};

double adaptive_prune_threshold(std::span<const double> edge_weights, const PruneRamp& ramp = {});

/// Drops edges with w < theta, then nodes left without edges. Throws
/// EmptySubgraphError when no edge survives.
WeightedSubgraph prune(const WeightedSubgraph& wsub, double theta);

/// Coordinates along the first principal component (power iteration on the
/// sample covariance); the component's first nonzero loading is positive.
std::vector<double> project_1d(const std::vector<EmbeddingVector>& vectors);

/// Gaps between consecutive sorted coordinates.
std::vector<double> sorted_gaps(std::vector<double> z);

/// Q75(gaps) + IQR(gaps); nullopt when fewer than three coordinates.
std::optional<double> completion_threshold(const std::vector<double>& z);

/// Index pairs (i < j) with |z_i - z_j| <= theta, ordered by (i, j).
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<double>& z,
                                                                 double theta);

struct CompletionOptions {
  KeywordAggregation aggregation = KeywordAggregation::kMax;
  /// Proposals outside this list are skipped.
  std::vector<std::string> relation_types{kCompletionRelationTypes.begin(),
                                          kCompletionRelationTypes.end()};
};

/// Adds completed same-type edges; never removes anything.
WeightedSubgraph complete(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                          const std::vector<std::string>& target_types, LanguageModel& llm,
                          Embedder& embedder, const QueryContext& ctx,
                          const TypeWeightTable& weights, CompletionOptions options = {});

}  // namespace cegocd
