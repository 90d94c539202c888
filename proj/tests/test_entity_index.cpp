// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include <gtest/gtest.h>

#include "cegocd/entity_index.hpp"
#include "test_support.hpp"

namespace cegocd {
namespace {

using testing::manifest;
using testing::toy_graph;

TEST(Tokenize, LowercasesAndSplits) {
  EXPECT_EQ(tokenize("Graph-Attention  NETWORK, v2"),
            (std::vector<std::string>{"graph", "attention", "network", "v2"}));
  EXPECT_EQ(tokenize("a b cd"), (std::vector<std::string>{"cd"}));
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Tokenize, NonAsciiBytesSeparate) {
  EXPECT_EQ(tokenize("na\xc3\xafve bayes"), (std::vector<std::string>{"na", "ve", "bayes"}));
}

TEST(EntityIndex, VocabularyMatchesManifest) {
  const auto index = EntityIndex::build(toy_graph());
  EXPECT_EQ(index.vocabulary_size(), manifest().at("index").at("vocabulary_size").get<std::size_t>());
  EXPECT_EQ(index.corpus_size(), toy_graph().num_entities());
}

TEST(EntityIndex, AttentionRankingMatchesManifest) {
  const auto index = EntityIndex::build(toy_graph());
  const auto got = index.top_k("attention", 10);
  const auto& want = manifest().at("index").at("top_k");
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].entity->id, want[i].at("id").get<std::string>()) << "rank " << i;
    EXPECT_NEAR(got[i].score, want[i].at("score").get<double>(), 1e-12);
  }
}

TEST(EntityIndex, ScoresDescendAndBounded) {
  const auto index = EntityIndex::build(toy_graph());
  const auto got = index.top_k("reading comprehension dataset", 25);
  ASSERT_FALSE(got.empty());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_GT(got[i].score, 0.0);
    EXPECT_LE(got[i].score, 1.0 + 1e-12);
    if (i > 0) {
      EXPECT_TRUE(got[i - 1].score > got[i].score ||
                  (got[i - 1].score == got[i].score && got[i - 1].entity->id < got[i].entity->id));
    }
  }
}

TEST(EntityIndex, UnknownTermsGiveNothing) {
  const auto index = EntityIndex::build(toy_graph());
  EXPECT_TRUE(index.top_k("xyzzyplugh").empty());
  EXPECT_TRUE(index.top_k("").empty());
}

TEST(EntityIndex, ZeroKRejected) {
  const auto index = EntityIndex::build(toy_graph());
  EXPECT_THROW(index.top_k("attention", 0), std::invalid_argument);
}

TEST(EntityIndex, TiesBreakById) {
  std::vector<Entity> es{{"b", "alpha", "T", {}, {}}, {"a", "alpha", "T", {}, {}}, {"c", "beta", "T", {}, {}}};
  const auto g = KnowledgeGraph::build(es, {});
  const auto index = EntityIndex::build(g);
  const auto got = index.top_k("alpha", 10);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].entity->id, "a");
  EXPECT_EQ(got[1].entity->id, "b");
  EXPECT_DOUBLE_EQ(got[0].score, 1.0);
}

}  // namespace
}  // namespace cegocd
