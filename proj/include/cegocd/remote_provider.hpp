// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>

#include <nlohmann/json.hpp>

#include "cegocd/providers.hpp"

namespace cegocd {

struct RemoteSettings {
  std::string base_url;  // e.g. "http://127.0.0.1:8080"
  std::string token;     // sent as "Authorization: Bearer <token>" when non-empty
  std::size_t max_in_flight = 4;
  std::chrono::seconds timeout{60};
  /// Prompt template per operation ("extract", "summarize", ...), sent as the
  /// request's "prompt" field when present.
  std::map<std::string, std::string> prompts;
};

/// Reads a JSON object of operation name -> template string.
std::map<std::string, std::string> load_prompts(const std::filesystem::path& path);

/// Reads CEGOCD_LLM_URL / CEGOCD_LLM_TOKEN. Returns nullopt if the URL is unset.
std::optional<RemoteSettings> llm_settings_from_env();
/// Reads CEGOCD_EMBED_URL (token shared with CEGOCD_LLM_TOKEN).
std::optional<RemoteSettings> embed_settings_from_env();

/// JSON-over-HTTP POST client with an in-flight cap and a single retry on
/// transport failure.
class JsonEndpoint {
 public:
  explicit JsonEndpoint(RemoteSettings settings);
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

 private:
  nlohmann::json post_once(const std::string& path, const std::string& body);

  RemoteSettings settings_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
};

class RemoteLanguageModel final : public LanguageModel {
 public:
  explicit RemoteLanguageModel(RemoteSettings settings) : endpoint_(std::move(settings)) {}

  std::string name() const override { return "remote-llm"; }
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
  JsonEndpoint endpoint_;
};

class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteSettings settings) : endpoint_(std::move(settings)) {}

  std::string name() const override { return "remote-embedder"; }
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;

 private:
  JsonEndpoint endpoint_;
};

}  // namespace cegocd
