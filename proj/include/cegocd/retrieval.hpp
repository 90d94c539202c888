// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Relevance subgraph retrieval: cross-keyword entity pairs, bounded simple
// paths between them, and title-anchored neighborhoods.

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cegocd/kg_store.hpp"

namespace cegocd {

using EntityPair = std::pair<std::string, std::string>;

struct Path {
  std::vector<std::string> nodes;
  std::vector<Relation> edges;

  std::size_t hops() const { return edges.size(); }
  bool operator==(const Path&) const = default;
};

enum class Origin { kFromPath, kFromTitleNeighborhood, kBoth };

std::string_view to_string(Origin o);

/// Element sets tagged by where they came from. Ordered containers keep every
/// iteration deterministic.
struct Subgraph {
  std::map<std::string, Origin> nodes;
  std::map<Relation, Origin> edges;

  bool empty() const { return nodes.empty() && edges.empty(); }
  void add_node(const std::string& id, Origin origin);
  void add_edge(const Relation& r, Origin origin);

  bool operator==(const Subgraph&) const = default;
};

/// All unordered cross-group pairs (a < b), de-duplicated and sorted.
std::vector<EntityPair> pair_entities(const std::vector<std::vector<std::string>>& groups);

struct PathSearchLimits {
  std::size_t max_hops = 5;
  std::size_t max_paths = 10;
};

/// Simple paths between the pair over edges whose type is in `allowed`,
/// traversed in either direction. Shortest first; equal lengths ordered by
/// node-id sequence, then relation types. Throws UnknownEntityError for a
/// missing endpoint and std::invalid_argument for an empty `allowed` set.
std::vector<Path> find_paths(const KnowledgeGraph& graph, const EntityPair& pair,
                             const TypeSet& allowed, PathSearchLimits limits = {});

/// Titles adjacent to each relevant entity (a title is its own anchor), plus
/// every edge from an included title to an entity whose type is in
/// `target_types`.
Subgraph title_neighbor_subgraph(const KnowledgeGraph& graph, const std::set<std::string>& relevant,
                                 const TypeSet& target_types,
                                 std::string_view title_type = kDefaultTitleType);

Subgraph assemble_subgraph(const std::vector<Path>& paths, const Subgraph& neighborhoods);

}  // namespace cegocd
