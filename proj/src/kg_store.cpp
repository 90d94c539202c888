// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"

namespace cegocd {

using nlohmann::json;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kOriginal:
      return "original";
    case Provenance::kCompleted:
      return "completed";
  }
  return "original";
}

KnowledgeGraph KnowledgeGraph::build(std::vector<Entity> entities,
                                     std::vector<Relation> relations) {
  KnowledgeGraph g;
  std::sort(entities.begin(), entities.end(),
            [](const Entity& a, const Entity& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].id.empty()) {
      throw GraphLoadError("entity with empty id");
    }
    if (i > 0 && entities[i].id == entities[i - 1].id) {
      throw GraphLoadError(fmt::format("duplicate entity id '{}'", entities[i].id));
    }
  }
  g.entities_ = std::move(entities);
  g.index_.reserve(g.entities_.size());
  for (std::size_t i = 0; i < g.entities_.size(); ++i) {
    g.index_.emplace(g.entities_[i].id, i);
    g.type_index_[g.entities_[i].entity_type].push_back(i);
    g.entity_types_.insert(g.entities_[i].entity_type);
  }

  for (const auto& r : relations) {
    if (!g.index_.contains(r.source) || !g.index_.contains(r.target)) {
      const auto& missing = g.index_.contains(r.source) ? r.target : r.source;
      throw GraphLoadError(fmt::format("relation {} -[{}]-> {} references unknown entity '{}'",
                                       r.source, r.relation_type, r.target, missing));
    }
  }

  std::vector<Relation> kept;
  kept.reserve(relations.size());
  for (auto& r : relations) {
    if (r.source == r.target) {
      ++g.stats_.dropped_self_loops;
      continue;
    }
    kept.push_back(std::move(r));
  }
  std::sort(kept.begin(), kept.end());
  const auto same_triple = [](const Relation& a, const Relation& b) {
    return a.source == b.source && a.target == b.target && a.relation_type == b.relation_type;
  };
  auto last = std::unique(kept.begin(), kept.end(), same_triple);
  g.stats_.collapsed_duplicates = static_cast<std::size_t>(kept.end() - last);
  kept.erase(last, kept.end());
  g.relations_ = std::move(kept);

  g.adjacency_.assign(g.entities_.size(), {});
  for (std::size_t e = 0; e < g.relations_.size(); ++e) {
    const auto& r = g.relations_[e];
    g.adjacency_[g.index_.at(r.source)].push_back(e);
    g.adjacency_[g.index_.at(r.target)].push_back(e);
    g.relation_types_.insert(r.relation_type);
  }
  for (std::size_t v = 0; v < g.adjacency_.size(); ++v) {
    const auto& self = g.entities_[v].id;
    auto& adj = g.adjacency_[v];
    std::sort(adj.begin(), adj.end(), [&](std::size_t a, std::size_t b) {
      const auto& ra = g.relations_[a];
      const auto& rb = g.relations_[b];
      return std::tie(ra.other(self), ra.relation_type, a) <
             std::tie(rb.other(self), rb.relation_type, b);
    });
  }

  if (g.stats_.dropped_self_loops > 0) {
    spdlog::warn("dropped {} self-loop edge(s)", g.stats_.dropped_self_loops);
  }
  return g;
}

const Entity* KnowledgeGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &entities_[it->second];
}

const Entity& KnowledgeGraph::entity(std::string_view id) const {
  const Entity* e = find(id);
  if (e == nullptr) throw UnknownEntityError(std::string(id));
  return *e;
}

std::vector<Neighbor> KnowledgeGraph::neighbors(std::string_view id,
                                                const TypeSet* relation_filter) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw UnknownEntityError(std::string(id));
  std::vector<Neighbor> out;
  for (std::size_t e : adjacency_[it->second]) {
    const Relation& r = relations_[e];
    if (relation_filter != nullptr && !relation_filter->contains(r.relation_type)) continue;
    out.push_back({&r, &entities_[index_.at(r.other(id))]});
  }
  return out;
}

std::vector<const Entity*> KnowledgeGraph::entities_of_type(std::string_view type) const {
  std::vector<const Entity*> out;
  auto it = type_index_.find(type);
  if (it == type_index_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&entities_[i]);
  return out;
}

TypeSet KnowledgeGraph::relation_types_touching(std::string_view entity_type) const {
  TypeSet out;
  auto it = type_index_.find(entity_type);
  if (it == type_index_.end()) return out;
  for (std::size_t v : it->second) {
    for (std::size_t e : adjacency_[v]) out.insert(relations_[e].relation_type);
  }
  return out;
}

namespace {

std::string required_string(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw GraphLoadError(fmt::format("line {}: missing or non-string field '{}'", line, key));
  }
  return it->get<std::string>();
}

}  // namespace

KnowledgeGraph parse_graph(std::istream& in) {
  std::vector<Entity> entities;
  std::vector<Relation> relations;
  std::unordered_map<std::string, std::size_t> entity_line;
  std::vector<std::size_t> relation_line;

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw GraphLoadError(fmt::format("line {}: malformed JSON: {}", line, e.what()));
    }
    if (!j.is_object()) throw GraphLoadError(fmt::format("line {}: expected a JSON object", line));
    const std::string kind = required_string(j, "kind", line);
    if (kind == "entity") {
      Entity e;
      e.id = required_string(j, "id", line);
      if (e.id.empty()) throw GraphLoadError(fmt::format("line {}: empty entity id", line));
      e.name = required_string(j, "name", line);
      e.entity_type = required_string(j, "type", line);
      if (auto it = j.find("description"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
          throw GraphLoadError(fmt::format("line {}: 'description' must be a string", line));
        }
        e.description = it->get<std::string>();
      }
      if (auto it = j.find("aliases"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) {
          throw GraphLoadError(fmt::format("line {}: 'aliases' must be an array", line));
        }
        for (const auto& a : *it) {
          if (!a.is_string()) {
            throw GraphLoadError(fmt::format("line {}: alias must be a string", line));
          }
          e.aliases.push_back(a.get<std::string>());
        }
      }
      auto [pos, inserted] = entity_line.emplace(e.id, line);
      if (!inserted) {
        throw GraphLoadError(fmt::format("line {}: duplicate entity id '{}' (first seen on line {})",
                                         line, e.id, pos->second));
      }
      entities.push_back(std::move(e));
    } else if (kind == "relation") {
      Relation r;
      r.source = required_string(j, "source", line);
      r.target = required_string(j, "target", line);
      r.relation_type = required_string(j, "type", line);
      relations.push_back(std::move(r));
      relation_line.push_back(line);
    } else {
      throw GraphLoadError(fmt::format("line {}: unknown kind '{}'", line, kind));
    }
  }

  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto& r = relations[i];
    for (const auto* endpoint : {&r.source, &r.target}) {
      if (!entity_line.contains(*endpoint)) {
        throw GraphLoadError(fmt::format("line {}: relation {} -[{}]-> {} has dangling endpoint '{}'",
                                         relation_line[i], r.source, r.relation_type, r.target,
                                         *endpoint));
      }
    }
  }
  return KnowledgeGraph::build(std::move(entities), std::move(relations));
}

KnowledgeGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphLoadError(fmt::format("cannot open graph file '{}'", path.string()));
  return parse_graph(in);
}

void write_graph(const KnowledgeGraph& graph, std::ostream& out) {
  for (const auto& e : graph.entities()) {
    json j = {{"kind", "entity"}, {"id", e.id}, {"name", e.name}, {"type", e.entity_type}};
    if (e.description) j["description"] = *e.description;
    j["aliases"] = e.aliases;
    out << j.dump() << '\n';
  }
  for (const auto& r : graph.relations()) {
    json j = {{"kind", "relation"}, {"source", r.source}, {"target", r.target}, {"type", r.relation_type}};
    out << j.dump() << '\n';
  }
}

void save_graph(const KnowledgeGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write graph file '{}'", path.string()));
  write_graph(graph, out);
}

}  // namespace cegocd
