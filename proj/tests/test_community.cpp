// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "cegocd/community.hpp"
#include "test_support.hpp"

namespace cegocd {
namespace {

using testing::manifest;
using testing::toy_graph;

WeightedSubgraph from_case(const nlohmann::json& c) {
  WeightedSubgraph w;
  for (const auto& n : c.at("nodes")) w.nodes.insert(n.get<std::string>());
  for (const auto& e : c.at("edges")) {
    WeightedEdge we;
    we.relation = {e[0].get<std::string>(), e[1].get<std::string>(), "r"};
    we.weight = e[2].get<double>();
    w.edges.push_back(we);
  }
  return w;
}

Assignment assignment_of(const nlohmann::json& groups) {
  Assignment a;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& n : groups[g]) a[n.get<std::string>()] = g;
  }
  return a;
}

std::vector<std::vector<std::string>> groups_of(const CommunityPartition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : p.communities) out.push_back(c.members);
  return out;
}

WeightedSubgraph two_triangles() {
  WeightedSubgraph w;
  for (const char* n : {"a", "b", "c", "d", "e", "f"}) w.nodes.insert(n);
  for (auto [s, t] : std::vector<std::pair<const char*, const char*>>{
           {"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"e", "f"}, {"d", "f"}}) {
    w.edges.push_back({Relation{s, t, "r"}, 1.0, 1.0, ""});
  }
  return w;
}

TEST(Modularity, TwoTrianglesExact) {
  const auto w = two_triangles();
  const auto p = louvain(w);
  EXPECT_EQ(p.modularity, 0.5);
  EXPECT_EQ(p.communities.size(), 2u);
  EXPECT_EQ(modularity(w, {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 1}, {"e", 1}, {"f", 1}}), 0.5);
}

TEST(Modularity, TrivialIdentities) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = testing::random_weighted(rng, 3 + trial % 10, 0.5);
    if (w.edges.empty()) continue;
    Assignment one, singletons;
    std::size_t i = 0;
    for (const auto& n : w.nodes) {
      one[n] = 0;
      singletons[n] = i++;
    }
    EXPECT_NEAR(modularity(w, one), 0.0, 1e-12);
    EXPECT_LT(modularity(w, singletons), 0.0);
  }
}

TEST(Modularity, RangeOnRandomAssignments) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = testing::random_weighted(rng, 2 + trial % 12, 0.4);
    std::uniform_int_distribution<std::size_t> label(0, 4);
    Assignment a;
    for (const auto& n : w.nodes) a[n] = label(rng);
    const double q = modularity(w, a);
    EXPECT_GE(q, -1.0);
    EXPECT_LE(q, 1.0);
  }
}

TEST(Modularity, ScaleInvariant) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto w = testing::random_weighted(rng, 8, 0.5);
    std::uniform_int_distribution<std::size_t> label(0, 2);
    Assignment a;
    for (const auto& n : w.nodes) a[n] = label(rng);
    const double q = modularity(w, a);
    for (auto& e : w.edges) e.weight *= 7.5;
    EXPECT_NEAR(modularity(w, a), q, 1e-12);
  }
}

TEST(Modularity, EmptyAndIncompleteInputs) {
  WeightedSubgraph w;
  w.nodes = {"a", "b"};
  EXPECT_EQ(modularity(w, {{"a", 0}, {"b", 1}}), 0.0);
  EXPECT_THROW(modularity(w, {{"a", 0}}), std::invalid_argument);
  const auto p = louvain(w);
  EXPECT_EQ(p.communities.size(), 2u);
  EXPECT_EQ(p.modularity, 0.0);
}

TEST(Modularity, ManifestPartitionsScoreAsRecorded) {
  for (const auto& c : manifest().at("modularity_cases")) {
    const auto w = from_case(c);
    EXPECT_NEAR(modularity(w, assignment_of(c.at("optimal_partition"))),
                c.at("optimal_modularity").get<double>(), 1e-12);
  }
}

TEST(Louvain, MatchesReferenceImplementation) {
  for (const auto& c : manifest().at("modularity_cases")) {
    const auto w = from_case(c);
    const auto p = louvain(w);
    EXPECT_NEAR(p.modularity, c.at("louvain_modularity").get<double>(), 1e-9);
    EXPECT_NEAR(p.modularity, modularity(w, p.assignment), 1e-12);
    EXPECT_LE(p.modularity, c.at("optimal_modularity").get<double>() + 1e-9);
  }
}

// Greedy local moves get stuck below the exhaustive optimum on these cases;
// the reference implementation stalls at the same values.
const std::set<std::size_t> kKnownLocalOptima = {14, 27, 33, 37};

TEST(Louvain, ReachesBruteForceOptimumOutsideKnownLocalOptima) {
  const auto& cases = manifest().at("modularity_cases");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto p = louvain(from_case(cases[i]));
    const double gap = cases[i].at("optimal_modularity").get<double>() - p.modularity;
    if (kKnownLocalOptima.count(i)) {
      EXPECT_GT(gap, 1e-9) << "case " << i;
    } else {
      EXPECT_LE(gap, 1e-9) << "case " << i;
    }
  }
}

TEST(Louvain, DeterministicLabels) {
  const auto w = two_triangles();
  const auto a = louvain(w), b = louvain(w);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.communities[0].members, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(a.communities[0].id, 0u);
}

class FixtureCase : public ::testing::TestWithParam<std::string> {};

TEST_P(FixtureCase, PartitionMergesCentralTitlesAndText) {
  const auto& c = manifest().at("partitions").at(GetParam());
  const auto w = testing::weighted_from_json(c.at("nodes"), c.at("edges"));
  const auto p = louvain(w);
  EXPECT_NEAR(p.modularity, c.at("optimal_modularity").get<double>(), 1e-9);
  EXPECT_EQ(groups_of(p), c.at("optimal_partition").get<std::vector<std::vector<std::string>>>());

  const auto theta = c.at("theta_max").get<std::size_t>();
  const auto merged = detect_communities(toy_graph(), w, theta);
  EXPECT_EQ(groups_of(merged), c.at("merged_partition").get<std::vector<std::vector<std::string>>>());
  const auto& steps = c.at("merges");
  ASSERT_EQ(merged.merges.size(), steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    EXPECT_EQ(merged.merges[i].first, steps[i].at("first").get<std::string>());
    EXPECT_EQ(merged.merges[i].second, steps[i].at("second").get<std::string>());
    EXPECT_NEAR(merged.merges[i].inter_weight, steps[i].at("inter_weight").get<double>(), 1e-12);
    EXPECT_NEAR(merged.merges[i].modularity_after, steps[i].at("modularity_after").get<double>(), 1e-12);
  }
  ASSERT_EQ(merged.communities.size(), c.at("central_titles").size());
  for (std::size_t i = 0; i < merged.communities.size(); ++i) {
    const auto& want = c.at("central_titles")[i];
    if (want.is_null()) {
      EXPECT_FALSE(merged.communities[i].central_title);
    } else {
      EXPECT_EQ(merged.communities[i].central_title, want.get<std::string>());
    }
    EXPECT_EQ(verbalize(toy_graph(), w, merged.communities[i].members, merged.communities[i].central_title),
              c.at("verbalizations")[i].get<std::string>());
  }
  EXPECT_LE(merged.communities.size(), theta);
}

INSTANTIATE_TEST_SUITE_P(Manifest, FixtureCase,
                         ::testing::Values("refined_subset", "four_neighborhoods",
                                           "four_neighborhoods_theta1"));

TEST(MergeToMax, NoOpUnderCapAndRejectsZero) {
  const auto w = two_triangles();
  const auto p = louvain(w);
  EXPECT_EQ(merge_to_max(p, w, 3).communities.size(), 2u);
  EXPECT_TRUE(merge_to_max(p, w, 3).merges.empty());
  EXPECT_THROW(merge_to_max(p, w, 0), std::invalid_argument);
  const auto one = merge_to_max(p, w, 1);
  ASSERT_EQ(one.communities.size(), 1u);
  EXPECT_EQ(one.modularity, 0.0);
}

TEST(MergeToMax, TieBreaksBySizeThenLabel) {
  // Four isolated pairs of unequal size: zero inter weight everywhere, so the
  // two smallest combined communities go first.
  WeightedSubgraph w;
  const std::vector<std::pair<std::string, std::string>> edges{
      {"a1", "a2"}, {"a2", "a3"}, {"b1", "b2"}, {"c1", "c2"}, {"d1", "d2"}, {"d2", "d3"}};
  for (const auto& [s, t] : edges) {
    w.nodes.insert(s);
    w.nodes.insert(t);
    w.edges.push_back({Relation{s, t, "r"}, 1.0, 1.0, ""});
  }
  const auto p = merge_to_max(louvain(w), w, 3);
  ASSERT_EQ(p.merges.size(), 1u);
  EXPECT_EQ(p.merges[0].first, "b1");
  EXPECT_EQ(p.merges[0].second, "c1");
}

TEST(CentralTitle, RandomCommunitiesByDirectSummation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> n(2, 15);
  std::bernoulli_distribution is_title(0.4), edge(0.4), integral(0.3);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = n(rng);
    std::vector<Entity> es;
    for (std::size_t i = 0; i < size; ++i) {
      es.push_back({"e" + std::to_string(100 + i), "x", is_title(rng) ? "Title" : "Model", {}, {}});
    }
    const bool coarse = integral(rng);  // integer weights make ties likely
    WeightedSubgraph w;
    for (const auto& e : es) w.nodes.insert(e.id);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        if (!edge(rng)) continue;
        const double x = coarse ? std::floor(weight(rng) * 3.0) : weight(rng);
        w.edges.push_back({Relation{es[i].id, es[j].id, "r"}, x, x, ""});
      }
    }
    const auto g = KnowledgeGraph::build(es, {});
    std::vector<std::string> members(w.nodes.begin(), w.nodes.end());
    // Direct summation over the edge list.
    std::optional<std::string> want;
    double best = -1.0;
    for (const auto& id : members) {
      if (g.entity(id).entity_type != "Title") continue;
      double d = 0.0;
      for (const auto& e : w.edges) {
        if (e.relation.touches(id)) d += e.weight;
      }
      if (d > best) best = d, want = id;  // ascending ids, strict > keeps the first
    }
    EXPECT_EQ(central_title(g, w, members), want) << "trial " << trial;
  }
}

TEST(CentralTitle, TieGoesToSmallestIdAndMissingTitle) {
  const auto g = KnowledgeGraph::build(
      {{"t2", "Two", "Title", {}, {}}, {"t1", "One", "Title", {}, {}}, {"m", "M", "Model", {}, {}}}, {});
  WeightedSubgraph w;
  w.nodes = {"t1", "t2", "m"};
  w.edges = {{Relation{"m", "t1", "r"}, 0.5, 0.5, ""}, {Relation{"m", "t2", "r"}, 0.5, 0.5, ""}};
  EXPECT_EQ(central_title(g, w, {"m", "t1", "t2"}), "t1");
  EXPECT_FALSE(central_title(g, w, {"m"}));
  EXPECT_EQ(verbalize(g, w, {"m"}, std::nullopt), kUnanchoredHeader);
  EXPECT_EQ(verbalize(g, w, {"m", "t1", "t2"}, std::string("t1")),
            "Community anchored by \"One\" [t1]\n"
            "M —r— One (weight 0.5000, original)\n"
            "M —r— Two (weight 0.5000, original)");
}

}  // namespace
}  // namespace cegocd
