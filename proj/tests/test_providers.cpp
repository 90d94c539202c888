// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cegocd/errors.hpp"
#include "cegocd/providers.hpp"
#include "scripted_llm.hpp"
#include "test_support.hpp"

namespace cegocd {
namespace {

using testing::ScriptedLanguageModel;

Entity ent(std::string id, std::string name, std::string type = "Model") {
  return {std::move(id), std::move(name), std::move(type), {}, {}};
}

TEST(MockEmbedder, DeterministicUnitVectors) {
  MockEmbedder m;
  const auto v = m.embed({"graph attention network", "graph attention network", "other"});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], v[1]);
  EXPECT_NE(v[0], v[2]);
  for (const auto& x : v) {
    EXPECT_EQ(x.dimension(), MockEmbedder::kDimension);
    double n = 0.0;
    for (double c : x.values) n += c * c;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-9);
  }
}

TEST(MockEmbedder, MatchesManifestVector) {
  const auto& e = testing::manifest().at("semantic").at("embedding");
  const auto got = MockEmbedder::embed_one(e.at("text").get<std::string>());
  const auto want = e.at("vector").get<std::vector<double>>();
  ASSERT_EQ(got.values.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.values[i], want[i], 1e-15);
}

TEST(MockEmbedder, HashPrimitives) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(MockLanguageModel, KeywordsAreLongDistinctTokens) {
  MockLanguageModel llm;
  const auto ctx = extract_context(llm, "Which graph models use the graph attention idea?");
  EXPECT_EQ(ctx.keywords, (std::vector<std::string>{"which", "graph", "models", "attention", "idea"}));
  EXPECT_EQ(ctx.target_types, (std::vector<std::string>{"Dataset", "Task"}));
}

TEST(MockLanguageModel, EmptyKeywords) {
  MockLanguageModel llm;
  EXPECT_THROW(extract_context(llm, "   "), EmptyKeywordsError);
  EXPECT_THROW(extract_context(llm, "a an the of"), EmptyKeywordsError);
}

TEST(MockLanguageModel, JudgeSharesTwoTokens) {
  MockLanguageModel llm;
  const QueryContext ctx;
  const auto r = judge_hidden_relation(llm, ent("a", "graph attention network"),
                                       ent("b", "graph attention model"), ctx);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->relation_type, "similar_to");
  EXPECT_EQ(r->description, "graph attention network and graph attention model share attention, graph");
  EXPECT_FALSE(judge_hidden_relation(llm, ent("a", "pointer network"), ent("b", "dense retriever"), ctx));
  EXPECT_FALSE(judge_hidden_relation(llm, ent("a", "graph network"), ent("b", "graph model"), ctx));
}

TEST(MockLanguageModel, JudgeRequiresSameType) {
  MockLanguageModel llm;
  EXPECT_THROW(judge_hidden_relation(llm, ent("a", "x y", "Model"), ent("b", "x y", "Task"), {}),
               std::invalid_argument);
}

TEST(MockLanguageModel, TypeWeights) {
  MockLanguageModel llm;
  const auto t = assign_type_weights(llm, {"cites", "uses"});
  EXPECT_DOUBLE_EQ(t.lookup("cites"), 1.0);
  EXPECT_DOUBLE_EQ(t.lookup("other"), 0.5);
}

TEST(MockLanguageModel, SummarizeOneLine) {
  MockLanguageModel llm;
  const auto s = summarize_community(llm, "header only", {});
  EXPECT_EQ(s.theme, "header only");
  EXPECT_EQ(s.answer, "");
}

TEST(MockLanguageModel, SummarizeFiveAndTwentyLines) {
  MockLanguageModel llm;
  std::string five = "head", twenty = "head";
  for (int i = 1; i <= 20; ++i) {
    if (i <= 5) five += "\nl" + std::to_string(i);
    twenty += "\nl" + std::to_string(i);
  }
  EXPECT_EQ(summarize_community(llm, five, {}).answer, "l1; l2; l3; l4; l5");
  EXPECT_EQ(summarize_community(llm, twenty, {}).answer, "l1; l2; l3; l4; l5");
  EXPECT_THROW(summarize_community(llm, " \n", {}), std::invalid_argument);
}

TEST(MockLanguageModel, Synthesize) {
  MockLanguageModel llm;
  EXPECT_EQ(synthesize_final(llm, {}, {}), kNoEvidenceAnswer);
  EXPECT_EQ(synthesize_final(llm, {{"t1", "a1"}}, {}), "[1] t1\na1");
  EXPECT_EQ(synthesize_final(llm, {{"t1", "a1"}, {"t2", "a2"}}, {}), "[1] t1\na1\n\n[2] t2\na2");
  EXPECT_EQ(synthesize_final(llm, {{"t1", "a1"}, {"t2", "a2"}, {"t3", "a3"}}, {}),
            "[1] t1\na1\n\n[2] t2\na2\n\n[3] t3\na3");
}

TEST(Contracts, FilterEntitiesSubsetKeepsOrder) {
  const Entity a = ent("a", "graph net"), b = ent("b", "graph model"), c = ent("c", "other");
  std::vector<KeywordCandidates> cands{{"graph", {{&a, 0.9}, {&b, 0.8}, {&c, 0.1}}}};
  ScriptedLanguageModel llm;
  llm.on_filter = [](const auto&) { return std::vector<std::vector<std::string>>{{"b", "a"}}; };
  const auto out = filter_entities(llm, {}, cands);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_EQ(out[0].size(), 2u);
  EXPECT_EQ(out[0][0].entity->id, "a");
  EXPECT_EQ(out[0][1].entity->id, "b");
}

TEST(Contracts, FilterEntitiesRejectsForeignIds) {
  const Entity a = ent("a", "graph net");
  std::vector<KeywordCandidates> cands{{"graph", {{&a, 0.9}}}};
  ScriptedLanguageModel llm;
  llm.on_filter = [](const auto&) { return std::vector<std::vector<std::string>>{{"zzz"}}; };
  EXPECT_THROW(filter_entities(llm, {}, cands), ProtocolViolation);
  llm.on_filter = [](const auto&) { return std::vector<std::vector<std::string>>{}; };
  EXPECT_THROW(filter_entities(llm, {}, cands), ProtocolViolation);
}

TEST(Contracts, FilterRelationsSubset) {
  ScriptedLanguageModel llm;
  llm.on_relations = [](const TypeSet&) { return std::vector<std::string>{"cites", "invented"}; };
  EXPECT_THROW(filter_relations(llm, {}, {"cites", "uses"}), ProtocolViolation);
  llm.on_relations = [](const TypeSet&) { return std::vector<std::string>{"uses"}; };
  EXPECT_EQ(filter_relations(llm, {}, {"cites", "uses"}), TypeSet{"uses"});
  EXPECT_TRUE(filter_relations(llm, {}, {}).empty());
}

TEST(Contracts, TypeWeightsClampedAndDefaulted) {
  ScriptedLanguageModel llm;
  llm.on_weights = [](const TypeSet&) {
    TypeWeightTable t(0.5);
    t.set("cites", 0.3);
    t.set("uses", 1.7);
    t.set("neg", -2.0);
    return t;
  };
  const auto t = assign_type_weights(llm, {"cites", "uses", "neg"});
  EXPECT_DOUBLE_EQ(t.lookup("cites"), 0.3);
  EXPECT_DOUBLE_EQ(t.lookup("uses"), 1.0);
  EXPECT_DOUBLE_EQ(t.lookup("neg"), 0.0);
  EXPECT_DOUBLE_EQ(t.lookup("other"), 0.5);
  llm.on_weights = [](const TypeSet&) {
    TypeWeightTable t;
    t.set("cites", std::numeric_limits<double>::quiet_NaN());
    return t;
  };
  EXPECT_THROW(assign_type_weights(llm, {"cites"}), ProtocolViolation);
}

TEST(Contracts, JudgeVocabularyEnforced) {
  ScriptedLanguageModel llm;
  llm.on_judge = [](const Entity&, const Entity&) { return HiddenRelation{"cites", "nope"}; };
  EXPECT_THROW(judge_hidden_relation(llm, ent("a", "x"), ent("b", "y"), {}), ProtocolViolation);
  llm.on_judge = [](const Entity&, const Entity&) { return std::nullopt; };
  EXPECT_FALSE(judge_hidden_relation(llm, ent("a", "x"), ent("b", "y"), {}));
}

class BrokenEmbedder : public Embedder {
 public:
  std::vector<EmbeddingVector> reply;
  std::string name() const override { return "broken"; }
  std::vector<EmbeddingVector> embed(const std::vector<std::string>&) override { return reply; }
};

TEST(Contracts, EmbedShapeChecked) {
  BrokenEmbedder b;
  b.reply = {{{1.0, 0.0}}};
  EXPECT_THROW(embed(b, {"x", "y"}), ProtocolViolation);
  b.reply = {{{1.0, 0.0}}, {{1.0}}};
  EXPECT_THROW(embed(b, {"x", "y"}), ProtocolViolation);
  b.reply = {{{std::nan("")}}};
  EXPECT_THROW(embed(b, {"x"}), ProtocolViolation);
  EXPECT_THROW(embed(b, {" "}), std::invalid_argument);
  EXPECT_TRUE(embed(b, {}).empty());
}

TEST(Contracts, CompletionVocabulary) {
  EXPECT_TRUE(is_completion_relation_type("similar_to"));
  EXPECT_TRUE(is_completion_relation_type("related_method"));
  EXPECT_TRUE(is_completion_relation_type("related_task"));
  EXPECT_FALSE(is_completion_relation_type("cites"));
}

}  // namespace
}  // namespace cegocd
