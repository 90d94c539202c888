// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// JSON request/response bodies for the remote provider endpoints. The same
// canonical request bodies key the on-disk response cache.
//
//   POST /extract           {"query"}                          -> {"keywords","target_types"}
//   POST /filter_entities   {"context","candidates":[{"keyword","entities":[...]}]}
//                                                              -> {"retained":[[id...],...]}
//   POST /filter_relations  {"context","candidate_types"}      -> {"retained":[type...]}
//   POST /type_weights      {"types"}                          -> {"weights":{type:w},"default_weight"}
//   POST /judge_pair        {"context","pair":[entity,entity]} -> {"relation_type"|null,"description"}
//   POST /summarize         {"context","verbalization"}        -> {"theme","answer"}
//   POST /synthesize        {"context","community_answers":[{"theme","answer"}]} -> {"answer"}
//   POST /embed             {"texts"}                          -> {"vectors":[[...],...]}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cegocd/providers.hpp"

namespace cegocd::wire {

using nlohmann::json;

json context_to_json(const QueryContext& ctx);
QueryContext context_from_json(const json& j);

json entity_to_json(const Entity& e);
json type_weights_to_json(const TypeWeightTable& table);
TypeWeightTable type_weights_from_json(const json& j);
json summary_to_json(const CommunitySummary& s);
CommunitySummary summary_from_json(const json& j);

json extract_request(const std::string& query);
QueryContext parse_extract_response(const json& j, const std::string& query);

json filter_entities_request(const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates);
std::vector<std::vector<std::string>> parse_filter_entities_response(const json& j);

json filter_relations_request(const QueryContext& ctx, const TypeSet& types);
std::vector<std::string> parse_filter_relations_response(const json& j);

json type_weights_request(const TypeSet& types);

json judge_pair_request(const Entity& a, const Entity& b, const QueryContext& ctx);
std::optional<HiddenRelation> parse_judge_response(const json& j);

json summarize_request(const std::string& verbalization, const QueryContext& ctx);
json synthesize_request(const std::vector<CommunitySummary>& answers, const QueryContext& ctx);
std::string parse_synthesize_response(const json& j);

json embed_request(const std::vector<std::string>& texts);
std::vector<EmbeddingVector> parse_embed_response(const json& j);

}  // namespace cegocd::wire
