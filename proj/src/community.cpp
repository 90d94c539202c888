// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/community.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace cegocd {

namespace {

/// Undirected weighted graph over dense indices; self-loop weights kept apart.
struct IndexedGraph {
  std::vector<std::string> ids;  // sorted
  std::vector<std::map<std::size_t, double>> adj;  // no self entries
  std::vector<double> loops;

  std::size_t size() const { return ids.size(); }

  double degree(std::size_t i) const {
    double k = 2.0 * loops[i];
    for (const auto& [j, w] : adj[i]) k += w;
    return k;
  }

  double total_weight() const {  // m
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      m += loops[i];
      for (const auto& [j, w] : adj[i]) {
        if (j > i) m += w;
      }
    }
    return m;
  }
};

IndexedGraph index_graph(const WeightedSubgraph& wsub) {
  IndexedGraph g;
  g.ids.assign(wsub.nodes.begin(), wsub.nodes.end());
  g.adj.resize(g.ids.size());
  g.loops.assign(g.ids.size(), 0.0);
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < g.ids.size(); ++i) pos.emplace(g.ids[i], i);
  for (const auto& e : wsub.edges) {
    auto s = pos.find(e.relation.source);
    auto t = pos.find(e.relation.target);
    if (s == pos.end() || t == pos.end()) {
      throw std::invalid_argument(fmt::format("edge {} -> {} leaves the node set", e.relation.source,
                                              e.relation.target));
    }
    if (s->second == t->second) {
      g.loops[s->second] += e.weight;
      continue;
    }
    g.adj[s->second][t->second] += e.weight;
    g.adj[t->second][s->second] += e.weight;
  }
  return g;
}

double modularity_of(const IndexedGraph& g, const std::vector<std::size_t>& community) {
  const double m = g.total_weight();
  if (m <= 0.0) return 0.0;
  std::size_t k = 0;
  for (auto c : community) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), tot(k, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    tot[community[i]] += g.degree(i);
    internal[community[i]] += g.loops[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (j > i && community[i] == community[j]) internal[community[i]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    q += internal[c] / m - (tot[c] / (2.0 * m)) * (tot[c] / (2.0 * m));
  }
  return q;
}

/// Relabels so that community ids follow first appearance in node order.
std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> remap;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.emplace(labels[i], remap.size());
    out[i] = it->second;
  }
  return out;
}

/// One Louvain level of local moves. Returns true if any node moved.
bool local_moves(const IndexedGraph& g, std::vector<std::size_t>& community) {
  const double m2 = 2.0 * g.total_weight();
  if (m2 <= 0.0) return false;
  std::vector<double> tot(g.size(), 0.0);
  std::vector<double> k(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    k[i] = g.degree(i);
    tot[community[i]] += k[i];
  }

  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::size_t current = community[i];
      std::map<std::size_t, double> links;  // community -> weight from i
      for (const auto& [j, w] : g.adj[i]) links[community[j]] += w;
      tot[current] -= k[i];

      const auto gain = [&](std::size_t c) {
        auto it = links.find(c);
        const double in = it == links.end() ? 0.0 : it->second;
        return in - tot[c] * k[i] / m2;
      };
      std::size_t best = current;
      double best_gain = gain(current);
      const double eps = 1e-12 * std::max(1.0, k[i]);
      for (const auto& [c, w] : links) {
        if (c == current) continue;
        const double gc = gain(c);
        if (gc > best_gain + eps) {
          best_gain = gc;
          best = c;
        }
      }
      tot[best] += k[i];
      if (best != current) {
        community[i] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

IndexedGraph aggregate(const IndexedGraph& g, const std::vector<std::size_t>& community,
                       std::size_t count) {
  IndexedGraph out;
  out.ids.resize(count);
  for (std::size_t c = 0; c < count; ++c) out.ids[c] = std::to_string(c);
  out.adj.resize(count);
  out.loops.assign(count, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.loops[community[i]] += g.loops[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (j < i) continue;
      const auto ci = community[i], cj = community[j];
      if (ci == cj) {
        out.loops[ci] += w;
      } else {
        out.adj[ci][cj] += w;
        out.adj[cj][ci] += w;
      }
    }
  }
  return out;
}

CommunityPartition make_partition(const std::vector<std::string>& ids,
                                  const std::vector<std::size_t>& labels) {
  // ids are sorted, so first-appearance labels order communities by their
  // smallest member id.
  const auto canon = canonical_labels(labels);
  CommunityPartition p;
  std::size_t count = 0;
  for (auto c : canon) count = std::max(count, c + 1);
  p.communities.resize(count);
  for (std::size_t c = 0; c < count; ++c) p.communities[c].id = c;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    p.assignment[ids[i]] = canon[i];
    p.communities[canon[i]].members.push_back(ids[i]);
  }
  return p;
}

std::vector<std::size_t> labels_for(const IndexedGraph& g, const Assignment& assignment) {
  std::vector<std::size_t> labels(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto it = assignment.find(g.ids[i]);
    if (it == assignment.end()) {
      throw std::invalid_argument(fmt::format("assignment does not cover node '{}'", g.ids[i]));
    }
    labels[i] = it->second;
  }
  return labels;
}

}  // namespace

double modularity(const WeightedSubgraph& wsub, const Assignment& assignment) {
  const IndexedGraph g = index_graph(wsub);
  const auto labels = labels_for(g, assignment);
  // Dense relabel keeps per-community arrays small for arbitrary ids.
  return modularity_of(g, canonical_labels(labels));
}

CommunityPartition louvain(const WeightedSubgraph& wsub) {
  const IndexedGraph base = index_graph(wsub);
  std::vector<std::size_t> node_to_community(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) node_to_community[i] = i;

  IndexedGraph level = base;
  while (true) {
    std::vector<std::size_t> community(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) community[i] = i;
    if (!local_moves(level, community)) break;
    community = canonical_labels(community);
    std::size_t count = 0;
    for (auto c : community) count = std::max(count, c + 1);
    for (auto& c : node_to_community) c = community[c];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }

  double q = modularity_of(base, canonical_labels(node_to_community));
  if (base.total_weight() > 0.0 && q < 0.0) {
    std::fill(node_to_community.begin(), node_to_community.end(), 0);
    q = 0.0;
  }
  CommunityPartition p = make_partition(base.ids, node_to_community);
  p.modularity = modularity_of(base, canonical_labels(node_to_community));
  return p;
}

CommunityPartition merge_to_max(const CommunityPartition& partition, const WeightedSubgraph& wsub,
                                std::size_t theta_max) {
  if (theta_max == 0) throw std::invalid_argument("theta_max must be at least 1");
  const IndexedGraph g = index_graph(wsub);
  std::vector<std::size_t> labels = canonical_labels(labels_for(g, partition.assignment));
  std::vector<MergeStep> merges = partition.merges;

  while (true) {
    std::size_t count = 0;
    for (auto c : labels) count = std::max(count, c + 1);
    if (count <= theta_max) break;

    std::vector<std::vector<double>> between(count, std::vector<double>(count, 0.0));
    std::vector<std::size_t> sizes(count, 0);
    std::vector<std::string> first_member(count);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (sizes[labels[i]]++ == 0) first_member[labels[i]] = g.ids[i];
      for (const auto& [j, w] : g.adj[i]) {
        if (j > i && labels[i] != labels[j]) {
          between[labels[i]][labels[j]] += w;
          between[labels[j]][labels[i]] += w;
        }
      }
    }

    std::size_t best_a = 0, best_b = 1;
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) {
        const double w = between[a][b], bw = between[best_a][best_b];
        const std::size_t size = sizes[a] + sizes[b], best_size = sizes[best_a] + sizes[best_b];
        // Labels follow smallest member id, so (a, b) order is the final tie-break.
        if (w > bw || (w == bw && size < best_size)) {
          best_a = a;
          best_b = b;
        }
      }
    }
    const double inter = between[best_a][best_b];
    for (auto& c : labels) {
      if (c == best_b) c = best_a;
    }
    labels = canonical_labels(labels);
    merges.push_back({first_member[best_a], first_member[best_b], inter, modularity_of(g, labels)});
  }

  CommunityPartition out = make_partition(g.ids, labels);
  out.modularity = modularity_of(g, labels);
  out.theta_max = theta_max;
  out.merges = std::move(merges);
  return out;
}

std::optional<std::string> central_title(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                                         const std::vector<std::string>& members,
                                         std::string_view title_type) {
  const std::set<std::string> inside(members.begin(), members.end());
  std::map<std::string, double> degree;
  for (const auto& id : inside) {
    if (graph.entity(id).entity_type == title_type) degree.emplace(id, 0.0);
  }
  if (degree.empty()) return std::nullopt;
  for (const auto& e : wsub.edges) {
    const auto& s = e.relation.source;
    const auto& t = e.relation.target;
    if (!inside.contains(s) || !inside.contains(t)) continue;
    if (auto it = degree.find(s); it != degree.end()) it->second += e.weight;
    if (auto it = degree.find(t); it != degree.end()) it->second += e.weight;
  }
  auto best = degree.begin();
  for (auto it = degree.begin(); it != degree.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

std::string verbalize(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                      const std::vector<std::string>& members,
                      const std::optional<std::string>& central) {
  const std::set<std::string> inside(members.begin(), members.end());
  std::string out;
  if (central) {
    out = fmt::format("Community anchored by \"{}\" [{}]", graph.entity(*central).name, *central);
  } else {
    out = std::string(kUnanchoredHeader);
  }

  std::vector<const WeightedEdge*> edges;
  for (const auto& e : wsub.edges) {
    if (inside.contains(e.relation.source) && inside.contains(e.relation.target)) edges.push_back(&e);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge* a, const WeightedEdge* b) {
    if (a->weight != b->weight) return a->weight > b->weight;
    return a->relation < b->relation;
  });
  for (const auto* e : edges) {
    std::string rel = e->relation.relation_type;
    std::replace(rel.begin(), rel.end(), '_', ' ');
    std::string tail;
    if (e->relation.provenance == Provenance::kCompleted && !e->description.empty()) {
      tail = fmt::format("completed: {}", e->description);
    } else {
      tail = std::string(to_string(e->relation.provenance));
    }
    out += fmt::format("\n{} —{}— {} (weight {:.4f}, {})", graph.entity(e->relation.source).name,
                       rel, graph.entity(e->relation.target).name, e->weight, tail);
  }
  return out;
}

CommunityPartition detect_communities(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                                      std::size_t theta_max, std::string_view title_type) {
  CommunityPartition p = merge_to_max(louvain(wsub), wsub, theta_max);
  for (auto& c : p.communities) c.central_title = central_title(graph, wsub, c.members, title_type);
  return p;
}

}  // namespace cegocd
