// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/provider_decorators.hpp"

#include <chrono>
#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"
#include "cegocd/provider_wire.hpp"

namespace cegocd {

using nlohmann::json;

std::size_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

void CallLedger::record(CallRecord r) {
  if (!record_timings_) r.seconds = 0.0;
  std::lock_guard lock(mu_);
  records_.push_back(std::move(r));
}

std::vector<CallRecord> CallLedger::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

// ---------------------------------------------------------------------------

CachingLanguageModel::CachingLanguageModel(std::shared_ptr<LanguageModel> inner,
                                           std::optional<std::filesystem::path> cache_dir)
    : inner_(std::move(inner)), cache_dir_(std::move(cache_dir)) {
  if (cache_dir_) std::filesystem::create_directories(*cache_dir_);
}

std::string CachingLanguageModel::key_for(std::string_view operation, const json& request) const {
  const std::string canonical = fmt::format("{}\n{}\n{}", operation, inner_->name(), request.dump());
  return fmt::format("{}-{:016x}", operation, fnv1a64(canonical));
}

std::optional<json> CachingLanguageModel::lookup(const std::string& key) {
  std::lock_guard lock(mu_);
  if (auto it = memory_.find(key); it != memory_.end()) {
    ++hits_;
    return it->second;
  }
  if (cache_dir_) {
    const auto path = *cache_dir_ / (key + ".json");
    std::ifstream in(path);
    if (in) {
      try {
        json j = json::parse(in);
        memory_.emplace(key, j);
        ++hits_;
        return j;
      } catch (const json::parse_error&) {
        spdlog::warn("ignoring corrupt cache entry {}", path.string());
      }
    }
  }
  ++misses_;
  return std::nullopt;
}

void CachingLanguageModel::store(const std::string& key, const json& response) {
  std::lock_guard lock(mu_);
  memory_[key] = response;
  if (!cache_dir_) return;
  const auto path = *cache_dir_ / (key + ".json");
  const auto tmp = *cache_dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp);
    if (!out) {
      spdlog::warn("cannot write cache entry {}", tmp.string());
      return;
    }
    out << response.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) spdlog::warn("cannot commit cache entry {}: {}", path.string(), ec.message());
}

std::size_t CachingLanguageModel::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t CachingLanguageModel::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

QueryContext CachingLanguageModel::extract_context(const std::string& query) {
  const auto key = key_for("extract", wire::extract_request(query));
  if (auto hit = lookup(key)) return wire::parse_extract_response(*hit, query);
  QueryContext ctx = inner_->extract_context(query);
  store(key, {{"keywords", ctx.keywords}, {"target_types", ctx.target_types}});
  return ctx;
}

std::vector<std::vector<std::string>> CachingLanguageModel::filter_entities(
    const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) {
  const auto key = key_for("filter_entities", wire::filter_entities_request(ctx, candidates));
  if (auto hit = lookup(key)) return wire::parse_filter_entities_response(*hit);
  auto retained = inner_->filter_entities(ctx, candidates);
  store(key, {{"retained", retained}});
  return retained;
}

std::vector<std::string> CachingLanguageModel::filter_relations(const QueryContext& ctx,
                                                                const TypeSet& candidate_types) {
  const auto key = key_for("filter_relations", wire::filter_relations_request(ctx, candidate_types));
  if (auto hit = lookup(key)) return wire::parse_filter_relations_response(*hit);
  auto retained = inner_->filter_relations(ctx, candidate_types);
  store(key, {{"retained", retained}});
  return retained;
}

TypeWeightTable CachingLanguageModel::assign_type_weights(const TypeSet& types) {
  std::optional<double> default_weight;
  TypeWeightTable table;
  TypeSet missing;
  for (const auto& t : types) {
    const auto key = key_for("type_weight", json{{"type", t}});
    if (auto hit = lookup(key)) {
      table.set(t, hit->at("weight").get<double>());
      default_weight = hit->at("default_weight").get<double>();
    } else {
      missing.insert(t);
    }
  }
  if (!missing.empty() || types.empty()) {
    TypeWeightTable fresh = inner_->assign_type_weights(missing);
    default_weight = fresh.default_weight();
    for (const auto& t : missing) {
      const double w = fresh.lookup(t);
      table.set(t, w);
      store(key_for("type_weight", json{{"type", t}}), {{"weight", w}, {"default_weight", *default_weight}});
    }
  }
  table.set_default_weight(default_weight.value_or(table.default_weight()));
  return table;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Fn>
auto timed(CallLedger& ledger, std::string_view op, const std::string& provider,
           const json& request, Fn&& fn, const auto& response_json) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  ledger.record({std::string(op), provider, estimate_tokens(request.dump()),
                 estimate_tokens(response_json(result).dump()), elapsed.count()});
  return result;
}

}  // namespace

QueryContext InstrumentedLanguageModel::extract_context(const std::string& query) {
  return timed(*ledger_, "extract", name(), wire::extract_request(query),
               [&] { return inner_->extract_context(query); },
               [](const QueryContext& c) { return wire::context_to_json(c); });
}

std::vector<std::vector<std::string>> InstrumentedLanguageModel::filter_entities(
    const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) {
  return timed(*ledger_, "filter_entities", name(), wire::filter_entities_request(ctx, candidates),
               [&] { return inner_->filter_entities(ctx, candidates); },
               [](const auto& r) { return json{{"retained", r}}; });
}

std::vector<std::string> InstrumentedLanguageModel::filter_relations(const QueryContext& ctx,
                                                                     const TypeSet& candidate_types) {
  return timed(*ledger_, "filter_relations", name(),
               wire::filter_relations_request(ctx, candidate_types),
               [&] { return inner_->filter_relations(ctx, candidate_types); },
               [](const auto& r) { return json{{"retained", r}}; });
}

TypeWeightTable InstrumentedLanguageModel::assign_type_weights(const TypeSet& types) {
  return timed(*ledger_, "type_weights", name(), wire::type_weights_request(types),
               [&] { return inner_->assign_type_weights(types); },
               [](const TypeWeightTable& t) { return wire::type_weights_to_json(t); });
}

std::optional<HiddenRelation> InstrumentedLanguageModel::judge_hidden_relation(
    const Entity& a, const Entity& b, const QueryContext& ctx) {
  return timed(*ledger_, "judge_pair", name(), wire::judge_pair_request(a, b, ctx),
               [&] { return inner_->judge_hidden_relation(a, b, ctx); },
               [](const std::optional<HiddenRelation>& r) {
                 return r ? json{{"relation_type", r->relation_type}, {"description", r->description}}
                          : json{{"relation_type", nullptr}};
               });
}

CommunitySummary InstrumentedLanguageModel::summarize_community(const std::string& verbalization,
                                                                const QueryContext& ctx) {
  return timed(*ledger_, "summarize", name(), wire::summarize_request(verbalization, ctx),
               [&] { return inner_->summarize_community(verbalization, ctx); },
               [](const CommunitySummary& s) { return wire::summary_to_json(s); });
}

std::string InstrumentedLanguageModel::synthesize_final(const std::vector<CommunitySummary>& answers,
                                                        const QueryContext& ctx) {
  return timed(*ledger_, "synthesize", name(), wire::synthesize_request(answers, ctx),
               [&] { return inner_->synthesize_final(answers, ctx); },
               [](const std::string& s) { return json{{"answer", s}}; });
}

std::vector<EmbeddingVector> InstrumentedEmbedder::embed(const std::vector<std::string>& texts) {
  auto vectors = timed(*ledger_, "embed", name(), wire::embed_request(texts),
                       [&] { return inner_->embed(texts); },
                       // Output size for embeddings is the vector payload, not text.
                       [](const std::vector<EmbeddingVector>& vs) {
                         json j = json::array();
                         for (const auto& v : vs) j.push_back(v.values.size());
                         return j;
                       });
  std::lock_guard lock(mu_);
  for (const auto& v : vectors) {
    if (!dimension_) dimension_ = v.dimension();
    if (v.dimension() != *dimension_) {
      throw ProtocolViolation(fmt::format("embedding dimension drift within run: {} then {}",
                                          *dimension_, v.dimension()));
    }
  }
  return vectors;
}

}  // namespace cegocd
