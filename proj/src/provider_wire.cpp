// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/provider_wire.hpp"

#include <fmt/format.h>

#include "cegocd/errors.hpp"

namespace cegocd::wire {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ProtocolViolation("response is not a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ProtocolViolation(fmt::format("response lacks field '{}'", key));
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw ProtocolViolation(fmt::format("'{}' must be an array", what));
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw ProtocolViolation(fmt::format("'{}' must contain strings", what));
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ProtocolViolation(fmt::format("field '{}' must be a string", key));
  return v.get<std::string>();
}

}  // namespace

json context_to_json(const QueryContext& ctx) {
  return {{"query", ctx.query}, {"keywords", ctx.keywords}, {"target_types", ctx.target_types}};
}

QueryContext context_from_json(const json& j) {
  QueryContext ctx;
  ctx.query = string_field(j, "query");
  ctx.keywords = string_list(field(j, "keywords"), "keywords");
  ctx.target_types = string_list(field(j, "target_types"), "target_types");
  return ctx;
}

json entity_to_json(const Entity& e) {
  json j = {{"id", e.id}, {"name", e.name}, {"type", e.entity_type}, {"aliases", e.aliases}};
  j["description"] = e.description ? json(*e.description) : json(nullptr);
  return j;
}

json type_weights_to_json(const TypeWeightTable& table) {
  json weights = json::object();
  for (const auto& [type, w] : table.weights()) weights[type] = w;
  return {{"weights", weights}, {"default_weight", table.default_weight()}};
}

TypeWeightTable type_weights_from_json(const json& j) {
  const json& d = field(j, "default_weight");
  if (!d.is_number()) throw ProtocolViolation("'default_weight' must be a number");
  TypeWeightTable table(d.get<double>());
  const json& weights = field(j, "weights");
  if (!weights.is_object()) throw ProtocolViolation("'weights' must be an object");
  for (const auto& [type, w] : weights.items()) {
    if (!w.is_number()) throw ProtocolViolation(fmt::format("weight for '{}' must be a number", type));
    table.set(type, w.get<double>());
  }
  return table;
}

json summary_to_json(const CommunitySummary& s) { return {{"theme", s.theme}, {"answer", s.answer}}; }

CommunitySummary summary_from_json(const json& j) {
  return {string_field(j, "theme"), string_field(j, "answer")};
}

json extract_request(const std::string& query) { return {{"query", query}}; }

QueryContext parse_extract_response(const json& j, const std::string& query) {
  QueryContext ctx;
  ctx.query = query;
  ctx.keywords = string_list(field(j, "keywords"), "keywords");
  ctx.target_types = string_list(field(j, "target_types"), "target_types");
  return ctx;
}

json filter_entities_request(const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) {
  json groups = json::array();
  for (const auto& g : candidates) {
    json entities = json::array();
    for (const auto& s : g.entities) {
      json e = entity_to_json(*s.entity);
      e["score"] = s.score;
      entities.push_back(std::move(e));
    }
    groups.push_back({{"keyword", g.keyword}, {"entities", std::move(entities)}});
  }
  return {{"context", context_to_json(ctx)}, {"candidates", std::move(groups)}};
}

std::vector<std::vector<std::string>> parse_filter_entities_response(const json& j) {
  const json& retained = field(j, "retained");
  if (!retained.is_array()) throw ProtocolViolation("'retained' must be an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (const auto& group : retained) out.push_back(string_list(group, "retained"));
  return out;
}

json filter_relations_request(const QueryContext& ctx, const TypeSet& types) {
  return {{"context", context_to_json(ctx)},
          {"candidate_types", std::vector<std::string>(types.begin(), types.end())}};
}

std::vector<std::string> parse_filter_relations_response(const json& j) {
  return string_list(field(j, "retained"), "retained");
}

json type_weights_request(const TypeSet& types) {
  return {{"types", std::vector<std::string>(types.begin(), types.end())}};
}

json judge_pair_request(const Entity& a, const Entity& b, const QueryContext& ctx) {
  return {{"context", context_to_json(ctx)},
          {"pair", json::array({entity_to_json(a), entity_to_json(b)})}};
}

std::optional<HiddenRelation> parse_judge_response(const json& j) {
  if (!j.is_object()) throw ProtocolViolation("response is not a JSON object");
  auto it = j.find("relation_type");
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ProtocolViolation("'relation_type' must be a string or null");
  HiddenRelation r;
  r.relation_type = it->get<std::string>();
  if (auto d = j.find("description"); d != j.end() && d->is_string()) r.description = d->get<std::string>();
  return r;
}

json summarize_request(const std::string& verbalization, const QueryContext& ctx) {
  return {{"context", context_to_json(ctx)}, {"verbalization", verbalization}};
}

json synthesize_request(const std::vector<CommunitySummary>& answers, const QueryContext& ctx) {
  json list = json::array();
  for (const auto& a : answers) list.push_back(summary_to_json(a));
  return {{"context", context_to_json(ctx)}, {"community_answers", std::move(list)}};
}

std::string parse_synthesize_response(const json& j) { return string_field(j, "answer"); }

json embed_request(const std::vector<std::string>& texts) { return {{"texts", texts}}; }

std::vector<EmbeddingVector> parse_embed_response(const json& j) {
  const json& vectors = field(j, "vectors");
  if (!vectors.is_array()) throw ProtocolViolation("'vectors' must be an array");
  std::vector<EmbeddingVector> out;
  for (const auto& v : vectors) {
    if (!v.is_array()) throw ProtocolViolation("each vector must be an array");
    EmbeddingVector e;
    for (const auto& x : v) {
      if (!x.is_number()) throw ProtocolViolation("vector entries must be numbers");
      e.values.push_back(x.get<double>());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace cegocd::wire
