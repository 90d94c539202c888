// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Modularity-based partitioning of the refined subgraph, capped community
// count, central title selection and verbalization.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cegocd/kg_store.hpp"
#include "cegocd/optimization.hpp"

namespace cegocd {

using Assignment = std::map<std::string, std::size_t>;

struct Community {
  std::size_t id = 0;
  std::vector<std::string> members;  // sorted
  std::optional<std::string> central_title;
  std::optional<std::string> theme;

  bool operator==(const Community&) const = default;
};

struct MergeStep {
  std::string first;   // smallest member id of each merged community
  std::string second;
  double inter_weight = 0.0;
  double modularity_after = 0.0;

  bool operator==(const MergeStep&) const = default;
};

struct CommunityPartition {
  Assignment assignment;
  std::vector<Community> communities;  // ordered by smallest member id; id == index
  double modularity = 0.0;
  std::size_t theta_max = 3;
  std::vector<MergeStep> merges;

  bool operator==(const CommunityPartition&) const = default;
};

/// Q = (1/2m) sum_ij [w_ij - k_i k_j / 2m] delta(c_i, c_j) with m the total
/// undirected edge weight; parallel edges between a node pair are summed.
/// Zero total weight gives Q = 0. Throws std::invalid_argument unless the
/// assignment covers every node.
double modularity(const WeightedSubgraph& wsub, const Assignment& assignment);

/// Deterministic two-phase Louvain: local moves in ascending node-id order
/// with strict-gain acceptance, then aggregation, until nothing moves.
CommunityPartition louvain(const WeightedSubgraph& wsub);

/// Repeatedly merges the pair with the greatest inter-community weight (ties:
/// fewer combined nodes, then smallest member ids) until at most theta_max
/// communities remain.
CommunityPartition merge_to_max(const CommunityPartition& partition, const WeightedSubgraph& wsub,
                                std::size_t theta_max = 3);

/// Title member with the highest within-community weighted degree; ties by
/// ascending id.
std::optional<std::string> central_title(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                                         const std::vector<std::string>& members,
                                         std::string_view title_type = kDefaultTitleType);

/// Header line naming the central title, then one line per intra-community
/// edge by descending weight.
std::string verbalize(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                      const std::vector<std::string>& members,
                      const std::optional<std::string>& central);

inline constexpr std::string_view kUnanchoredHeader = "unanchored community";

/// louvain, merge_to_max and central_title in one call.
CommunityPartition detect_communities(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                                      std::size_t theta_max = 3,
                                      std::string_view title_type = kDefaultTitleType);

}  // namespace cegocd
