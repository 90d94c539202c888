// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/remote_provider.hpp"

#include <cstdlib>
#include <fstream>

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"
#include "cegocd/provider_wire.hpp"

namespace cegocd {

using nlohmann::json;

namespace {

std::optional<std::string> getenv_string(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

}  // namespace

std::optional<RemoteSettings> llm_settings_from_env() {
  auto url = getenv_string("CEGOCD_LLM_URL");
  if (!url) return std::nullopt;
  RemoteSettings s;
  s.base_url = *url;
  s.token = getenv_string("CEGOCD_LLM_TOKEN").value_or("");
  return s;
}

std::optional<RemoteSettings> embed_settings_from_env() {
  auto url = getenv_string("CEGOCD_EMBED_URL");
  if (!url) return std::nullopt;
  RemoteSettings s;
  s.base_url = *url;
  s.token = getenv_string("CEGOCD_LLM_TOKEN").value_or("");
  return s;
}

std::map<std::string, std::string> load_prompts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open prompt file '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("prompt file '{}': {}", path.string(), e.what()));
  }
  if (!j.is_object()) throw ConfigError("prompt file must hold a JSON object");
  std::map<std::string, std::string> prompts;
  for (const auto& [op, tmpl] : j.items()) {
    if (!tmpl.is_string()) throw ConfigError(fmt::format("prompt for '{}' must be a string", op));
    prompts.emplace(op, tmpl.get<std::string>());
  }
  return prompts;
}

JsonEndpoint::JsonEndpoint(RemoteSettings settings)
    : settings_(std::move(settings)),
      slots_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, settings_.max_in_flight)))) {
  if (settings_.base_url.empty()) throw ConfigError("remote provider needs a base URL");
}

json JsonEndpoint::post_once(const std::string& path, const std::string& body) {
  httplib::Client client(settings_.base_url);
  client.set_connection_timeout(settings_.timeout);
  client.set_read_timeout(settings_.timeout);
  client.set_write_timeout(settings_.timeout);
  httplib::Headers headers;
  if (!settings_.token.empty()) headers.emplace("Authorization", "Bearer " + settings_.token);

  auto res = client.Post(path, headers, body, "application/json");
  if (!res) {
    throw TransportError(fmt::format("POST {}{} failed: {}", settings_.base_url, path,
                                     httplib::to_string(res.error())));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(
        fmt::format("POST {}{} returned HTTP {}", settings_.base_url, path, res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ProtocolViolation(fmt::format("POST {} returned invalid JSON: {}", path, e.what()));
  }
}

json JsonEndpoint::post(const std::string& path, const json& body) {
  slots_->acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{slots_.get()};

  std::string payload;
  if (auto it = settings_.prompts.find(path.substr(1)); it != settings_.prompts.end()) {
    json with_prompt = body;
    with_prompt["prompt"] = it->second;
    payload = with_prompt.dump();
  } else {
    payload = body.dump();
  }
  try {
    return post_once(path, payload);
  } catch (const TransportError& e) {
    spdlog::warn("{}; retrying once", e.what());
    return post_once(path, payload);
  }
}

QueryContext RemoteLanguageModel::extract_context(const std::string& query) {
  return wire::parse_extract_response(endpoint_.post("/extract", wire::extract_request(query)), query);
}

std::vector<std::vector<std::string>> RemoteLanguageModel::filter_entities(
    const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) {
  return wire::parse_filter_entities_response(
      endpoint_.post("/filter_entities", wire::filter_entities_request(ctx, candidates)));
}

std::vector<std::string> RemoteLanguageModel::filter_relations(const QueryContext& ctx,
                                                               const TypeSet& candidate_types) {
  return wire::parse_filter_relations_response(
      endpoint_.post("/filter_relations", wire::filter_relations_request(ctx, candidate_types)));
}

TypeWeightTable RemoteLanguageModel::assign_type_weights(const TypeSet& types) {
  return wire::type_weights_from_json(endpoint_.post("/type_weights", wire::type_weights_request(types)));
}

std::optional<HiddenRelation> RemoteLanguageModel::judge_hidden_relation(const Entity& a,
                                                                         const Entity& b,
                                                                         const QueryContext& ctx) {
  return wire::parse_judge_response(endpoint_.post("/judge_pair", wire::judge_pair_request(a, b, ctx)));
}

CommunitySummary RemoteLanguageModel::summarize_community(const std::string& verbalization,
                                                          const QueryContext& ctx) {
  return wire::summary_from_json(
      endpoint_.post("/summarize", wire::summarize_request(verbalization, ctx)));
}

std::string RemoteLanguageModel::synthesize_final(const std::vector<CommunitySummary>& answers,
                                                  const QueryContext& ctx) {
  return wire::parse_synthesize_response(
      endpoint_.post("/synthesize", wire::synthesize_request(answers, ctx)));
}

std::vector<EmbeddingVector> RemoteEmbedder::embed(const std::vector<std::string>& texts) {
  return wire::parse_embed_response(endpoint_.post("/embed", wire::embed_request(texts)));
}

}  // namespace cegocd
