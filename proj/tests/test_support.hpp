// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Shared fixture access and random-graph builders for the test binaries.

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cegocd/kg_store.hpp"
#include "cegocd/optimization.hpp"

namespace cegocd::testing {

inline std::filesystem::path fixtures_dir() { return CEGOCD_FIXTURES_DIR; }

inline const nlohmann::json& manifest() {
  static const nlohmann::json m = [] {
    std::ifstream in(fixtures_dir() / "manifest.json");
    return nlohmann::json::parse(in);
  }();
  return m;
}

inline const KnowledgeGraph& toy_graph() {
  static const KnowledgeGraph g = load_graph(fixtures_dir() / "toy_kg.jsonl");
  return g;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string scripted_query() { return manifest().at("end_to_end").at("query").get<std::string>(); }

/// Nodes "n0".."n{n-1}" of type "Node"; each unordered pair linked with
/// probability p by one of `types`.
inline KnowledgeGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                   const std::vector<std::string>& types = {"a", "b"}) {
  std::vector<Entity> entities;
  for (std::size_t i = 0; i < n; ++i) {
    entities.push_back({"n" + std::to_string(i), "node " + std::to_string(i), "Node", {}, {}});
  }
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
  std::vector<Relation> rels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) rels.push_back({entities[i].id, entities[j].id, types[pick(rng)]});
    }
  }
  return KnowledgeGraph::build(std::move(entities), std::move(rels));
}

/// Weighted subgraph over nodes "v0".."v{n-1}" with uniform random weights.
inline WeightedSubgraph random_weighted(std::mt19937_64& rng, std::size_t n, double p) {
  WeightedSubgraph w;
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) w.nodes.insert("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!coin(rng)) continue;
      WeightedEdge e;
      e.relation = {"v" + std::to_string(i), "v" + std::to_string(j), "r"};
      e.semantic = weight(rng);
      e.weight = e.semantic;
      w.edges.push_back(e);
    }
  }
  std::sort(w.edges.begin(), w.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.relation < b.relation; });
  return w;
}

/// Builds a weighted subgraph from manifest edge records.
inline WeightedSubgraph weighted_from_json(const nlohmann::json& nodes, const nlohmann::json& edges) {
  WeightedSubgraph w;
  for (const auto& n : nodes) w.nodes.insert(n.get<std::string>());
  for (const auto& e : edges) {
    WeightedEdge we;
    const bool completed = e.contains("description");
    we.relation = {e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                   e.at("relation_type").get<std::string>(),
                   completed ? Provenance::kCompleted : Provenance::kOriginal};
    we.weight = e.at("weight").get<double>();
    we.semantic = e.value("semantic", we.weight);
    if (completed) we.description = e.at("description").get<std::string>();
    w.edges.push_back(we);
  }
  std::sort(w.edges.begin(), w.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.relation < b.relation; });
  return w;
}

}  // namespace cegocd::testing
