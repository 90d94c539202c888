// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// Wrappers layered over any backend: response caching and call accounting.

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cegocd/providers.hpp"

namespace cegocd {

/// ceil(bytes / 4): a model-agnostic token estimate.
std::size_t estimate_tokens(std::string_view text);

struct CallRecord {
  std::string operation;
  std::string provider;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  double seconds = 0.0;

  bool operator==(const CallRecord&) const = default;
};

class CallLedger {
 public:
  explicit CallLedger(bool record_timings = true) : record_timings_(record_timings) {}

  void record(CallRecord r);
  std::vector<CallRecord> records() const;
  bool record_timings() const { return record_timings_; }

 private:
  mutable std::mutex mu_;
  std::vector<CallRecord> records_;
  bool record_timings_;
};

/// Caches extract/filter/type-weight responses. Type weights are cached per
/// relation type in memory for the wrapper's lifetime; with a cache directory
/// every cached response is also persisted as <hash>.json, keyed by the
/// operation name, the backend name and the canonical request body.
class CachingLanguageModel final : public LanguageModel {
 public:
  CachingLanguageModel(std::shared_ptr<LanguageModel> inner,
                       std::optional<std::filesystem::path> cache_dir = std::nullopt);

  std::string name() const override { return inner_->name(); }
  QueryContext extract_context(const std::string& query) override;
  std::vector<std::vector<std::string>> filter_entities(
      const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) override;
  std::vector<std::string> filter_relations(const QueryContext& ctx,
                                            const TypeSet& candidate_types) override;
  TypeWeightTable assign_type_weights(const TypeSet& types) override;
  std::optional<HiddenRelation> judge_hidden_relation(const Entity& a, const Entity& b,
                                                      const QueryContext& ctx) override {
    return inner_->judge_hidden_relation(a, b, ctx);
  }
  CommunitySummary summarize_community(const std::string& verbalization,
                                       const QueryContext& ctx) override {
    return inner_->summarize_community(verbalization, ctx);
  }
  std::string synthesize_final(const std::vector<CommunitySummary>& answers,
                               const QueryContext& ctx) override {
    return inner_->synthesize_final(answers, ctx);
  }

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  std::string key_for(std::string_view operation, const nlohmann::json& request) const;
  std::optional<nlohmann::json> lookup(const std::string& key);
  void store(const std::string& key, const nlohmann::json& response);

  std::shared_ptr<LanguageModel> inner_;
  std::optional<std::filesystem::path> cache_dir_;
  mutable std::mutex mu_;
  std::map<std::string, nlohmann::json> memory_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Records every call (operation, token estimates, wall time) into a ledger.
class InstrumentedLanguageModel final : public LanguageModel {
 public:
  InstrumentedLanguageModel(std::shared_ptr<LanguageModel> inner, std::shared_ptr<CallLedger> ledger)
      : inner_(std::move(inner)), ledger_(std::move(ledger)) {}

  std::string name() const override { return inner_->name(); }
  QueryContext extract_context(const std::string& query) override;
  std::vector<std::vector<std::string>> filter_entities(
      const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) override;
  std::vector<std::string> filter_relations(const QueryContext& ctx,
                                            const TypeSet& candidate_types) override;
  TypeWeightTable assign_type_weights(const TypeSet& types) override;
  std::optional<HiddenRelation> judge_hidden_relation(const Entity& a, const Entity& b,
                                                      const QueryContext& ctx) override;
  CommunitySummary summarize_community(const std::string& verbalization,
                                       const QueryContext& ctx) override;
  std::string synthesize_final(const std::vector<CommunitySummary>& answers,
                               const QueryContext& ctx) override;

 private:
  std::shared_ptr<LanguageModel> inner_;
  std::shared_ptr<CallLedger> ledger_;
};

/// Records calls and rejects a dimension change between calls of one run.
class InstrumentedEmbedder final : public Embedder {
 public:
  InstrumentedEmbedder(std::shared_ptr<Embedder> inner, std::shared_ptr<CallLedger> ledger)
      : inner_(std::move(inner)), ledger_(std::move(ledger)) {}

  std::string name() const override { return inner_->name(); }
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

 private:
  std::shared_ptr<Embedder> inner_;
  std::shared_ptr<CallLedger> ledger_;
  std::mutex mu_;
  std::optional<std::size_t> dimension_;
};

}  // namespace cegocd
