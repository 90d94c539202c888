// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#pragma once

#include <atomic>
#include <functional>

#include "cegocd/providers.hpp"

namespace cegocd::testing {

/// Mock language model whose answers can be overridden per operation.
class ScriptedLanguageModel : public LanguageModel {
 public:
  std::function<QueryContext(const std::string&)> on_extract;
  std::function<std::vector<std::vector<std::string>>(const std::vector<KeywordCandidates>&)> on_filter;
  std::function<std::vector<std::string>(const TypeSet&)> on_relations;
  std::function<TypeWeightTable(const TypeSet&)> on_weights;
  std::function<std::optional<HiddenRelation>(const Entity&, const Entity&)> on_judge;
  std::function<CommunitySummary(const std::string&)> on_summarize;
  std::atomic<int> calls{0};

  std::string name() const override { return "scripted"; }
  QueryContext extract_context(const std::string& q) override {
    ++calls;
    return on_extract ? on_extract(q) : mock_.extract_context(q);
  }
  std::vector<std::vector<std::string>> filter_entities(
      const QueryContext& ctx, const std::vector<KeywordCandidates>& c) override {
    ++calls;
    return on_filter ? on_filter(c) : mock_.filter_entities(ctx, c);
  }
  std::vector<std::string> filter_relations(const QueryContext& ctx, const TypeSet& t) override {
    ++calls;
    return on_relations ? on_relations(t) : mock_.filter_relations(ctx, t);
  }
  TypeWeightTable assign_type_weights(const TypeSet& t) override {
    ++calls;
    return on_weights ? on_weights(t) : mock_.assign_type_weights(t);
  }
  std::optional<HiddenRelation> judge_hidden_relation(const Entity& a, const Entity& b,
                                                      const QueryContext& ctx) override {
    ++calls;
    return on_judge ? on_judge(a, b) : mock_.judge_hidden_relation(a, b, ctx);
  }
  CommunitySummary summarize_community(const std::string& v, const QueryContext& ctx) override {
    ++calls;
    return on_summarize ? on_summarize(v) : mock_.summarize_community(v, ctx);
  }
  std::string synthesize_final(const std::vector<CommunitySummary>& a, const QueryContext& ctx) override {
    ++calls;
    return mock_.synthesize_final(a, ctx);
  }

 private:
  MockLanguageModel mock_;
};

}  // namespace cegocd::testing
