// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Immutable, indexed academic knowledge graph loaded from JSONL.

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cegocd {

using TypeSet = std::set<std::string, std::less<>>;

inline constexpr std::string_view kDefaultTitleType = "Title";

enum class Provenance { kOriginal, kCompleted };

std::string_view to_string(Provenance p);

struct Entity {
  std::string id;
  std::string name;
  std::string entity_type;
  std::optional<std::string> description;
  std::vector<std::string> aliases;

  bool operator==(const Entity&) const = default;
};

struct Relation {
  std::string source;
  std::string target;
  std::string relation_type;
  Provenance provenance = Provenance::kOriginal;

  /// Whether `id` is one of the two endpoints.
  bool touches(std::string_view id) const { return source == id || target == id; }
  /// The endpoint that is not `id`.
  const std::string& other(std::string_view id) const {
    return source == id ? target : source;
  }

  bool operator==(const Relation&) const = default;
  auto operator<=>(const Relation&) const = default;
};

/// One incident edge seen from a node, with the opposite endpoint.
struct Neighbor {
  const Relation* relation;
  const Entity* entity;
};

struct LoadStats {
  std::size_t dropped_self_loops = 0;
  std::size_t collapsed_duplicates = 0;
};

class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  /// Validates and indexes. Drops self-loops and collapses duplicate
  /// (source, target, relation_type) triples; throws GraphLoadError on a
  /// duplicate entity id, an empty id or a dangling endpoint.
  static KnowledgeGraph build(std::vector<Entity> entities,
                              std::vector<Relation> relations);

  const Entity* find(std::string_view id) const;
  /// Throws UnknownEntityError.
  const Entity& entity(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  /// Sorted by id.
  std::span<const Entity> entities() const { return entities_; }
  /// Sorted by (source, target, relation_type).
  std::span<const Relation> relations() const { return relations_; }

  /// Incident edges in either direction, ordered by neighbor id then
  /// relation type. An unset filter admits every relation type.
  std::vector<Neighbor> neighbors(std::string_view id,
                                  const TypeSet* relation_filter = nullptr) const;

  /// Sorted by id; empty for an unknown type.
  std::vector<const Entity*> entities_of_type(std::string_view type) const;

  const TypeSet& entity_types() const { return entity_types_; }
  const TypeSet& relation_types() const { return relation_types_; }
  /// Relation types incident to at least one entity of `entity_type`.
  TypeSet relation_types_touching(std::string_view entity_type) const;

  const LoadStats& load_stats() const { return stats_; }

  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }

 private:
  std::vector<Entity> entities_;
  std::vector<Relation> relations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> type_index_;
  TypeSet entity_types_;
  TypeSet relation_types_;
  LoadStats stats_;
};

/// Two-pass JSONL parse: every line is read before endpoints are resolved.
KnowledgeGraph parse_graph(std::istream& in);
KnowledgeGraph load_graph(const std::filesystem::path& path);

void write_graph(const KnowledgeGraph& graph, std::ostream& out);
void save_graph(const KnowledgeGraph& graph, const std::filesystem::path& path);

}  // namespace cegocd
