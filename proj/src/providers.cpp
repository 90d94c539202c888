// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/providers.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"

namespace cegocd {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

std::set<std::string> token_set(std::string_view text) {
  auto tokens = tokenize(text);
  return {tokens.begin(), tokens.end()};
}

std::size_t shared_tokens(std::string_view a, std::string_view b) {
  const auto ta = token_set(a);
  const auto tb = token_set(b);
  std::size_t n = 0;
  for (const auto& t : ta) n += tb.count(t);
  return n;
}

}  // namespace

bool is_completion_relation_type(std::string_view type) {
  return std::find(kCompletionRelationTypes.begin(), kCompletionRelationTypes.end(), type) !=
         kCompletionRelationTypes.end();
}

QueryContext extract_context(LanguageModel& llm, const std::string& query) {
  if (is_blank(query)) throw EmptyKeywordsError("query is blank");
  QueryContext ctx = llm.extract_context(query);
  ctx.query = query;
  std::vector<std::string> keywords;
  for (const auto& k : ctx.keywords) {
    auto t = trim(k);
    if (t.empty()) continue;
    if (std::find(keywords.begin(), keywords.end(), t) == keywords.end()) {
      keywords.push_back(std::move(t));
    }
  }
  if (keywords.empty()) {
    throw EmptyKeywordsError(fmt::format("no keywords could be extracted from query '{}'", query));
  }
  ctx.keywords = std::move(keywords);
  return ctx;
}

std::vector<std::vector<ScoredEntity>> filter_entities(
    LanguageModel& llm, const QueryContext& ctx, const std::vector<KeywordCandidates>& candidates) {
  std::vector<std::vector<ScoredEntity>> out(candidates.size());
  if (candidates.empty()) return out;
  const auto retained = llm.filter_entities(ctx, candidates);
  if (retained.size() != candidates.size()) {
    throw ProtocolViolation(fmt::format("filter_entities returned {} groups for {} keywords",
                                        retained.size(), candidates.size()));
  }
  for (std::size_t g = 0; g < candidates.size(); ++g) {
    std::set<std::string> keep;
    for (const auto& id : retained[g]) {
      const auto& offered = candidates[g].entities;
      const bool known = std::any_of(offered.begin(), offered.end(),
                                     [&](const ScoredEntity& s) { return s.entity->id == id; });
      if (!known) {
        throw ProtocolViolation(fmt::format(
            "filter_entities returned '{}' which was not a candidate for keyword '{}'", id,
            candidates[g].keyword));
      }
      keep.insert(id);
    }
    for (const auto& s : candidates[g].entities) {
      if (keep.contains(s.entity->id)) out[g].push_back(s);
    }
  }
  return out;
}

TypeSet filter_relations(LanguageModel& llm, const QueryContext& ctx, const TypeSet& candidates) {
  if (candidates.empty()) return {};
  TypeSet out;
  for (auto& t : llm.filter_relations(ctx, candidates)) {
    if (!candidates.contains(t)) {
      throw ProtocolViolation(
          fmt::format("filter_relations returned '{}' which was not offered", t));
    }
    out.insert(std::move(t));
  }
  return out;
}

TypeWeightTable assign_type_weights(LanguageModel& llm, const TypeSet& types) {
  TypeWeightTable raw = llm.assign_type_weights(types);
  const auto clamp = [](std::string_view what, double w) {
    if (std::isnan(w)) throw ProtocolViolation(fmt::format("type weight for '{}' is NaN", what));
    if (w < 0.0 || w > 1.0) {
      const double c = std::clamp(w, 0.0, 1.0);
      spdlog::warn("type weight {} for '{}' outside [0,1], clamped to {}", w, what, c);
      return c;
    }
    return w;
  };
  TypeWeightTable table(clamp("<default>", raw.default_weight()));
  for (const auto& [type, w] : raw.weights()) table.set(type, clamp(type, w));
  return table;
}

std::optional<HiddenRelation> judge_hidden_relation(LanguageModel& llm, const Entity& a,
                                                    const Entity& b, const QueryContext& ctx) {
  if (a.entity_type != b.entity_type) {
    throw std::invalid_argument(fmt::format("judge_hidden_relation: '{}' and '{}' differ in type",
                                            a.id, b.id));
  }
  auto proposal = llm.judge_hidden_relation(a, b, ctx);
  if (proposal && !is_completion_relation_type(proposal->relation_type)) {
    throw ProtocolViolation(fmt::format("judge_hidden_relation proposed unknown type '{}'",
                                        proposal->relation_type));
  }
  return proposal;
}

CommunitySummary summarize_community(LanguageModel& llm, const std::string& verbalization,
                                     const QueryContext& ctx) {
  if (is_blank(verbalization)) throw std::invalid_argument("summarize_community: empty verbalization");
  return llm.summarize_community(verbalization, ctx);
}

std::string synthesize_final(LanguageModel& llm, const std::vector<CommunitySummary>& answers,
                             const QueryContext& ctx) {
  if (answers.empty()) return std::string(kNoEvidenceAnswer);
  return llm.synthesize_final(answers, ctx);
}

std::vector<EmbeddingVector> embed(Embedder& embedder, const std::vector<std::string>& texts) {
  for (const auto& t : texts) {
    if (is_blank(t)) throw std::invalid_argument("embed: blank text");
  }
  if (texts.empty()) return {};
  auto vectors = embedder.embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProtocolViolation(
        fmt::format("embed returned {} vectors for {} texts", vectors.size(), texts.size()));
  }
  const std::size_t d = vectors.front().dimension();
  if (d == 0) throw ProtocolViolation("embed returned a zero-dimensional vector");
  for (const auto& v : vectors) {
    if (v.dimension() != d) {
      throw ProtocolViolation(
          fmt::format("embedding dimension drift: {} vs {}", v.dimension(), d));
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) throw ProtocolViolation("embed returned a non-finite value");
    }
  }
  return vectors;
}

// ---------------------------------------------------------------------------
// Mocks

QueryContext MockLanguageModel::extract_context(const std::string& query) {
  QueryContext ctx;
  ctx.query = query;
  for (auto& t : tokenize(query)) {
    if (t.size() < 4) continue;
    if (std::find(ctx.keywords.begin(), ctx.keywords.end(), t) == ctx.keywords.end()) {
      ctx.keywords.push_back(std::move(t));
    }
  }
  ctx.target_types = target_types_;
  return ctx;
}

std::vector<std::vector<std::string>> MockLanguageModel::filter_entities(
    const QueryContext&, const std::vector<KeywordCandidates>& candidates) {
  std::vector<std::vector<std::string>> out;
  out.reserve(candidates.size());
  for (const auto& group : candidates) {
    auto& kept = out.emplace_back();
    for (const auto& s : group.entities) {
      if (shared_tokens(s.entity->name, group.keyword) >= 1) kept.push_back(s.entity->id);
    }
  }
  return out;
}

std::vector<std::string> MockLanguageModel::filter_relations(const QueryContext&,
                                                             const TypeSet& candidate_types) {
  return {candidate_types.begin(), candidate_types.end()};
}

TypeWeightTable MockLanguageModel::assign_type_weights(const TypeSet& types) {
  TypeWeightTable table(0.5);
  for (const auto& t : types) table.set(t, 1.0);
  return table;
}

std::optional<HiddenRelation> MockLanguageModel::judge_hidden_relation(const Entity& a,
                                                                       const Entity& b,
                                                                       const QueryContext&) {
  const auto ta = token_set(a.name);
  const auto tb = token_set(b.name);
  std::vector<std::string> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
  if (common.size() < 2) return std::nullopt;
  return HiddenRelation{"similar_to",
                        fmt::format("{} and {} share {}", a.name, b.name, fmt::join(common, ", "))};
}

CommunitySummary MockLanguageModel::summarize_community(const std::string& verbalization,
                                                        const QueryContext&) {
  std::istringstream in(verbalization);
  std::string line;
  CommunitySummary s;
  std::getline(in, s.theme);
  std::vector<std::string> lines;
  while (lines.size() < 5 && std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  s.answer = fmt::format("{}", fmt::join(lines, "; "));
  return s;
}

std::string MockLanguageModel::synthesize_final(const std::vector<CommunitySummary>& answers,
                                                const QueryContext&) {
  std::string out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += fmt::format("[{}] {}\n{}", i + 1, answers[i].theme, answers[i].answer);
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

EmbeddingVector MockEmbedder::embed_one(std::string_view text) {
  const std::uint64_t h = fnv1a64(text);
  EmbeddingVector v;
  v.values.resize(kDimension);
  double norm = 0.0;
  for (std::size_t i = 0; i < kDimension; ++i) {
    const std::uint64_t x = splitmix64(h ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
    v.values[i] = 2.0 * u - 1.0;
    norm += v.values[i] * v.values[i];
  }
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v.values) x /= norm;
  }
  return v;
}

std::vector<EmbeddingVector> MockEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

}  // namespace cegocd
