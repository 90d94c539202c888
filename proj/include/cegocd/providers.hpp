// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Language-model and embedding backends. Backends implement the raw virtual
// interface; callers go through the free functions below, which enforce the
// operation contracts (subset rules, clamping, vocabulary checks) no matter
// which backend answered.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cegocd/entity_index.hpp"
#include "cegocd/kg_store.hpp"

namespace cegocd {

struct QueryContext {
  std::string query;
  std::vector<std::string> keywords;
  std::vector<std::string> target_types;

  bool operator==(const QueryContext&) const = default;
};

class TypeWeightTable {
 public:
  explicit TypeWeightTable(double default_weight = 0.5) : default_weight_(default_weight) {}

  void set(std::string relation_type, double weight) { weights_[std::move(relation_type)] = weight; }
  double lookup(std::string_view relation_type) const {
    auto it = weights_.find(relation_type);
    return it == weights_.end() ? default_weight_ : it->second;
  }
  bool contains(std::string_view relation_type) const { return weights_.contains(relation_type); }

  double default_weight() const { return default_weight_; }
  void set_default_weight(double w) { default_weight_ = w; }
  const std::map<std::string, double, std::less<>>& weights() const { return weights_; }

  bool operator==(const TypeWeightTable&) const = default;

 private:
  std::map<std::string, double, std::less<>> weights_;
  double default_weight_;
};

struct EmbeddingVector {
  std::vector<double> values;
  std::size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

/// Closed vocabulary for relations proposed during completion.
inline constexpr std::array<std::string_view, 3> kCompletionRelationTypes = {
    "similar_to", "related_method", "related_task"};

bool is_completion_relation_type(std::string_view type);

struct HiddenRelation {
  std::string relation_type;
  std::string description;
  bool operator==(const HiddenRelation&) const = default;
};

struct CommunitySummary {
  std::string theme;
  std::string answer;
  bool operator==(const CommunitySummary&) const = default;
};

/// Candidates retrieved for one keyword.
struct KeywordCandidates {
  std::string keyword;
  std::vector<ScoredEntity> entities;
};

inline constexpr std::string_view kNoEvidenceAnswer =
    "No evidence was found in the knowledge graph for this query.";

class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::string name() const = 0;
  virtual QueryContext extract_context(const std::string& query) = 0;
  /// Retained entity ids, one list per input group, same group order.
  virtual std::vector<std::vector<std::string>> filter_entities(
      const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) = 0;
  virtual std::vector<std::string> filter_relations(const QueryContext& ctx,
                                                    const TypeSet& candidate_types) = 0;
  virtual TypeWeightTable assign_type_weights(const TypeSet& types) = 0;
  virtual std::optional<HiddenRelation> judge_hidden_relation(const Entity& a, const Entity& b,
                                                              const QueryContext& ctx) = 0;
  virtual CommunitySummary summarize_community(const std::string& verbalization,
                                               const QueryContext& ctx) = 0;
  virtual std::string synthesize_final(const std::vector<CommunitySummary>& answers,
                                       const QueryContext& ctx) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string name() const = 0;
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
};

// Contract-enforcing entry points.

/// Trims and de-duplicates keywords; throws EmptyKeywordsError when none remain.
QueryContext extract_context(LanguageModel& llm, const std::string& query);

/// Each output group is a subset of its input group, kept in input order.
/// Throws ProtocolViolation if the backend returns an id it was not offered.
std::vector<std::vector<ScoredEntity>> filter_entities(
    LanguageModel& llm, const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates);

TypeSet filter_relations(LanguageModel& llm, const QueryContext& ctx, const TypeSet& candidates);

/// Out-of-range weights are clamped into [0, 1] with a warning.
TypeWeightTable assign_type_weights(LanguageModel& llm, const TypeSet& types);

/// Requires a.entity_type == b.entity_type. Proposals outside the completion
/// vocabulary raise ProtocolViolation.
std::optional<HiddenRelation> judge_hidden_relation(LanguageModel& llm, const Entity& a,
                                                    const Entity& b, const QueryContext& ctx);

CommunitySummary summarize_community(LanguageModel& llm, const std::string& verbalization,
                                     const QueryContext& ctx);

/// Returns kNoEvidenceAnswer without calling the backend when `answers` is empty.
std::string synthesize_final(LanguageModel& llm, const std::vector<CommunitySummary>& answers,
                             const QueryContext& ctx);

/// One finite vector per text, uniform dimension, input order.
std::vector<EmbeddingVector> embed(Embedder& embedder, const std::vector<std::string>& texts);

// Deterministic offline backends.

class MockLanguageModel final : public LanguageModel {
 public:
  explicit MockLanguageModel(std::vector<std::string> target_types = {"Dataset", "Task"})
      : target_types_(std::move(target_types)) {}

  std::string name() const override { return "mock-llm"; }
  /// Keywords: distinct query tokens of length >= 4, first-occurrence order.
  QueryContext extract_context(const std::string& query) override;
  /// Keeps candidates whose name shares at least one token with the keyword.
  std::vector<std::vector<std::string>> filter_entities(
      const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) override;
  std::vector<std::string> filter_relations(const QueryContext& ctx,
                                            const TypeSet& candidate_types) override;
  /// 1.0 for every type, default 0.5.
  TypeWeightTable assign_type_weights(const TypeSet& types) override;
  /// "similar_to" iff the names share at least two distinct tokens.
  std::optional<HiddenRelation> judge_hidden_relation(const Entity& a, const Entity& b,
                                                      const QueryContext& ctx) override;
  /// Theme is the first (header) line; answer joins the next five lines.
  CommunitySummary summarize_community(const std::string& verbalization,
                                       const QueryContext& ctx) override;
  std::string synthesize_final(const std::vector<CommunitySummary>& answers,
                               const QueryContext& ctx) override;

 private:
  std::vector<std::string> target_types_;
};

class MockEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDimension = 32;

  std::string name() const override { return "mock-embedder"; }
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

  /// Coordinate i is splitmix64(fnv1a64(text) ^ golden * (i + 1)) mapped to
  /// [-1, 1]; the vector is then L2-normalized.
  static EmbeddingVector embed_one(std::string_view text);
};

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cegocd
