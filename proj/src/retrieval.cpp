// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/retrieval.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cegocd/errors.hpp"

namespace cegocd {

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::kFromPath:
      return "path";
    case Origin::kFromTitleNeighborhood:
      return "title_neighborhood";
    case Origin::kBoth:
      return "both";
  }
  return "path";
}

namespace {

Origin merge(Origin a, Origin b) { return a == b ? a : Origin::kBoth; }

}  // namespace

void Subgraph::add_node(const std::string& id, Origin origin) {
  auto [it, inserted] = nodes.emplace(id, origin);
  if (!inserted) it->second = merge(it->second, origin);
}

void Subgraph::add_edge(const Relation& r, Origin origin) {
  auto [it, inserted] = edges.emplace(r, origin);
  if (!inserted) it->second = merge(it->second, origin);
}

std::vector<EntityPair> pair_entities(const std::vector<std::vector<std::string>>& groups) {
  std::set<EntityPair> pairs;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      for (const auto& a : groups[i]) {
        for (const auto& b : groups[j]) {
          if (a == b) continue;
          pairs.insert(a < b ? EntityPair{a, b} : EntityPair{b, a});
        }
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

namespace {

class PathEnumerator {
 public:
  PathEnumerator(const KnowledgeGraph& graph, const TypeSet& allowed, const std::string& target,
                 const std::unordered_map<std::string, std::size_t>& dist)
      : graph_(graph), allowed_(allowed), target_(target), dist_(dist) {}

  /// Every simple path of exactly `hops` edges from `start` to the target.
  std::vector<Path> run(const std::string& start, std::size_t hops) {
    found_.clear();
    current_ = Path{{start}, {}};
    on_path_ = {start};
    extend(hops);
    return std::move(found_);
  }

 private:
  void extend(std::size_t remaining) {
    const std::string& here = current_.nodes.back();
    if (remaining == 0) {
      if (here == target_) found_.push_back(current_);
      return;
    }
    if (here == target_) return;
    for (const auto& nb : graph_.neighbors(here, &allowed_)) {
      const std::string& next = nb.entity->id;
      if (on_path_.contains(next)) continue;
      auto d = dist_.find(next);
      if (d == dist_.end() || d->second > remaining - 1) continue;
      current_.nodes.push_back(next);
      current_.edges.push_back(*nb.relation);
      on_path_.insert(next);
      extend(remaining - 1);
      on_path_.erase(next);
      current_.edges.pop_back();
      current_.nodes.pop_back();
    }
  }

  const KnowledgeGraph& graph_;
  const TypeSet& allowed_;
  const std::string& target_;
  const std::unordered_map<std::string, std::size_t>& dist_;
  Path current_;
  std::unordered_set<std::string> on_path_;
  std::vector<Path> found_;
};

}  // namespace

std::vector<Path> find_paths(const KnowledgeGraph& graph, const EntityPair& pair,
                             const TypeSet& allowed, PathSearchLimits limits) {
  const auto& [from, to] = pair;
  if (!graph.contains(from)) throw UnknownEntityError(from);
  if (!graph.contains(to)) throw UnknownEntityError(to);
  if (allowed.empty()) throw std::invalid_argument("find_paths: allowed relation set is empty");
  std::vector<Path> out;
  if (from == to || limits.max_paths == 0) return out;

  // Hop distance to the target, bounded by max_hops.
  std::unordered_map<std::string, std::size_t> dist{{to, 0}};
  std::deque<std::string> queue{to};
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    const std::size_t dv = dist[v];
    if (dv == limits.max_hops) continue;
    for (const auto& nb : graph.neighbors(v, &allowed)) {
      if (dist.emplace(nb.entity->id, dv + 1).second) queue.push_back(nb.entity->id);
    }
  }
  auto start = dist.find(from);
  if (start == dist.end()) return out;

  PathEnumerator enumerator(graph, allowed, to, dist);
  for (std::size_t hops = start->second; hops <= limits.max_hops; ++hops) {
    auto layer = enumerator.run(from, hops);
    std::sort(layer.begin(), layer.end(), [](const Path& a, const Path& b) {
      if (a.nodes != b.nodes) return a.nodes < b.nodes;
      return std::lexicographical_compare(
          a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
          [](const Relation& x, const Relation& y) { return x.relation_type < y.relation_type; });
    });
    for (auto& p : layer) {
      if (out.size() == limits.max_paths) return out;
      out.push_back(std::move(p));
    }
  }
  return out;
}

Subgraph title_neighbor_subgraph(const KnowledgeGraph& graph, const std::set<std::string>& relevant,
                                 const TypeSet& target_types, std::string_view title_type) {
  Subgraph sub;
  constexpr Origin kOrigin = Origin::kFromTitleNeighborhood;
  std::set<std::string> titles;
  for (const auto& id : relevant) {
    const Entity& e = graph.entity(id);
    if (e.entity_type == title_type) {
      sub.add_node(e.id, kOrigin);
      titles.insert(e.id);
      continue;
    }
    for (const auto& nb : graph.neighbors(id)) {
      if (nb.entity->entity_type != title_type) continue;
      sub.add_node(e.id, kOrigin);
      sub.add_node(nb.entity->id, kOrigin);
      sub.add_edge(*nb.relation, kOrigin);
      titles.insert(nb.entity->id);
    }
  }
  for (const auto& title : titles) {
    for (const auto& nb : graph.neighbors(title)) {
      if (!target_types.contains(nb.entity->entity_type)) continue;
      sub.add_node(nb.entity->id, kOrigin);
      sub.add_edge(*nb.relation, kOrigin);
    }
  }
  return sub;
}

Subgraph assemble_subgraph(const std::vector<Path>& paths, const Subgraph& neighborhoods) {
  Subgraph sub = neighborhoods;
  for (const auto& p : paths) {
    for (const auto& n : p.nodes) sub.add_node(n, Origin::kFromPath);
    for (const auto& e : p.edges) sub.add_edge(e, Origin::kFromPath);
  }
  return sub;
}

}  // namespace cegocd
