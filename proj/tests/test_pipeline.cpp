// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include <filesystem>
#include <thread>

#include <gtest/gtest.h>

#include "cegocd/cli.hpp"
#include "cegocd/errors.hpp"
#include "cegocd/pipeline.hpp"
#include "scripted_llm.hpp"
#include "test_support.hpp"

namespace cegocd {
namespace {

using testing::fixtures_dir;
using testing::manifest;
using testing::scripted_query;
using testing::toy_graph;

Config fixture_config() { return load_config(fixtures_dir() / "toy_config.toml"); }

RunReport run(const std::string& query, Config cfg = fixture_config(), WeightedSubgraph* out = nullptr) {
  return answer(query, toy_graph(), make_mock_providers(cfg), cfg, out);
}

TEST(Pipeline, GoldenReportByteIdentical) {
  const std::string golden = testing::read_file(fixtures_dir() / "golden_report.json");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(dump_report(run(scripted_query())), golden);
  EXPECT_EQ(dump_report(run(scripted_query())), golden);
}

TEST(Pipeline, MetricsMatchOracleChain) {
  const auto& m = manifest().at("end_to_end");
  WeightedSubgraph refined;
  const auto r = run(scripted_query(), fixture_config(), &refined);
  EXPECT_EQ(r.context.keywords, m.at("keywords").get<std::vector<std::string>>());
  EXPECT_EQ(r.retrieval.pair_count, m.at("pair_count").get<std::size_t>());
  EXPECT_EQ(r.retrieval.path_count, m.at("path_count").get<std::size_t>());
  EXPECT_EQ(r.retrieval.subgraph_nodes, m.at("subgraph_nodes").get<std::size_t>());
  EXPECT_EQ(r.retrieval.subgraph_edges, m.at("subgraph_edges").get<std::size_t>());
  EXPECT_EQ(r.retrieval.filtered_entities, m.at("filtered_entities").size());
  EXPECT_EQ(r.retrieval.candidate_relation_types, m.at("candidate_relation_types").size());
  for (std::size_t i = 0; i < r.retrieval.keywords.size(); ++i) {
    EXPECT_EQ(r.retrieval.keywords[i].candidates, m.at("candidates_per_keyword")[i].get<std::size_t>());
    EXPECT_EQ(r.retrieval.keywords[i].retained, m.at("filtered_per_keyword")[i].get<std::size_t>());
  }
  EXPECT_EQ(r.triples.edges_before_prune, m.at("edges_before_prune").get<std::size_t>());
  EXPECT_EQ(r.triples.edges_after_prune, m.at("edges_after_prune").get<std::size_t>());
  EXPECT_EQ(r.triples.edges_after_completion, m.at("edges_after_completion").get<std::size_t>());
  EXPECT_EQ(r.triples.completed_edges, m.at("completed_edges").size());
  EXPECT_NEAR(*r.triples.prune_threshold, m.at("prune_threshold").get<double>(), 1e-12);
  EXPECT_NEAR(r.triples.mean_semantic_before_prune, m.at("mean_semantic_before_prune").get<double>(), 1e-12);
  EXPECT_NEAR(r.triples.mean_semantic_after_prune, m.at("mean_semantic_after_prune").get<double>(), 1e-12);
  EXPECT_NEAR(r.triples.mean_semantic_after_completion,
              m.at("mean_semantic_after_completion").get<double>(), 1e-12);
  // Report counts describe the refined subgraph handed back.
  EXPECT_EQ(refined.edges.size(), r.triples.edges_after_completion);
  EXPECT_EQ(refined.count(Provenance::kCompleted), r.triples.completed_edges);
}

TEST(Pipeline, ReportInvariants) {
  const auto r = run(scripted_query());
  EXPECT_EQ(r.schema, "cegocd-report/1");
  EXPECT_LE(r.triples.edges_after_prune, r.triples.edges_before_prune);
  EXPECT_GE(r.triples.edges_after_completion, r.triples.edges_after_prune);
  EXPECT_EQ(r.triples.edges_after_completion, r.triples.edges_after_prune + r.triples.completed_edges);
  EXPECT_LE(r.triples.edges_after_completion, r.triples.edges_before_prune + r.triples.completed_edges);
  EXPECT_GE(r.triples.mean_semantic_after_prune, r.triples.mean_semantic_before_prune);
  EXPECT_LE(r.communities.size(), 3u);
  EXPECT_FALSE(r.communities.empty());
  bool any_answer = false;
  for (std::size_t i = 0; i < r.communities.size(); ++i) {
    EXPECT_EQ(r.communities[i].id, i);
    any_answer |= r.communities[i].answer.has_value();
  }
  EXPECT_TRUE(any_answer);
  EXPECT_FALSE(r.final_answer.empty());
  EXPECT_FALSE(r.provider_calls.empty());
  for (const auto& c : r.provider_calls) EXPECT_EQ(c.seconds, 0.0);
}

TEST(Pipeline, JsonRoundTrip) {
  Config cfg = fixture_config();
  cfg.include_timings = true;
  const auto r = run(scripted_query(), cfg);
  const auto back = report_from_json(nlohmann::json::parse(dump_report(r)));
  EXPECT_EQ(back, r);
  EXPECT_EQ(dump_report(back), dump_report(r));
  EXPECT_THROW(report_from_json(nlohmann::json{{"schema", "other/9"}}), Error);
  EXPECT_THROW(report_from_json(nlohmann::json{{"schema", "cegocd-report/1"}}), Error);
}

TEST(Pipeline, NoMatchesGiveNoEvidence) {
  const auto r = run("zzzzqx yyyyqw");
  EXPECT_TRUE(r.no_evidence);
  EXPECT_EQ(r.retrieval.subgraph_edges, 0u);
  EXPECT_TRUE(r.communities.empty());
  EXPECT_EQ(r.final_answer, kNoEvidenceAnswer);
}

TEST(Pipeline, ThetaMaxOneGivesOneCommunity) {
  Config cfg = fixture_config();
  cfg.theta_max = 1;
  const auto r = run(scripted_query(), cfg);
  EXPECT_EQ(r.communities.size(), 1u);
  EXPECT_EQ(r.partition.theta_max, 1u);
}

TEST(Pipeline, OverAggressivePruneDegrades) {
  Config cfg = fixture_config();
  cfg.prune_threshold_override = 2.0;
  WeightedSubgraph refined;
  const auto r = run(scripted_query(), cfg, &refined);
  EXPECT_TRUE(r.degraded_empty_subgraph);
  EXPECT_EQ(r.triples.edges_after_prune, 0u);
  EXPECT_EQ(r.triples.completed_edges, 0u);
  EXPECT_FALSE(refined.edges.empty());
  EXPECT_FALSE(r.communities.empty());
  EXPECT_NE(r.final_answer, kNoEvidenceAnswer);
}

TEST(Pipeline, UnknownTargetTypesDropped) {
  Config cfg = fixture_config();
  cfg.mock_target_types = {"Dataset", "Gizmo"};
  const auto r = run(scripted_query(), cfg);
  EXPECT_EQ(r.dropped_target_types, std::vector<std::string>{"Gizmo"});
}

TEST(Pipeline, SummaryTransportFailureLeavesCommunityUnanswered) {
  Config cfg = fixture_config();
  auto llm = std::make_shared<testing::ScriptedLanguageModel>();
  int n = 0;
  llm->on_summarize = [&](const std::string& v) -> CommunitySummary {
    if (n++ == 0) throw TransportError("down");
    return {v.substr(0, v.find('\n')), "ok"};
  };
  const auto r = answer(scripted_query(), toy_graph(), {llm, std::make_shared<MockEmbedder>()}, cfg);
  ASSERT_GE(r.communities.size(), 2u);
  EXPECT_FALSE(r.communities[0].answer);
  EXPECT_TRUE(r.communities[1].answer);
  EXPECT_NE(r.final_answer, kNoEvidenceAnswer);
}

TEST(Pipeline, ProtocolViolationPropagates) {
  auto llm = std::make_shared<testing::ScriptedLanguageModel>();
  llm->on_filter = [](const std::vector<KeywordCandidates>& c) {
    return std::vector<std::vector<std::string>>(c.size(), std::vector<std::string>{"not-offered"});
  };
  EXPECT_THROW(answer(scripted_query(), toy_graph(), {llm, std::make_shared<MockEmbedder>()}, fixture_config()),
               ProtocolViolation);
}

TEST(Pipeline, SharedProvidersAcrossThreads) {
  const Config cfg = fixture_config();
  Pipeline p(toy_graph(), make_mock_providers(cfg), cfg);
  std::vector<std::string> out(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < out.size(); ++i) {
    threads.emplace_back([&, i] { out[i] = dump_report(p.answer(scripted_query())); });
  }
  for (auto& t : threads) t.join();
  for (const auto& s : out) EXPECT_EQ(s, out[0]);
}

// CLI ------------------------------------------------------------------------

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cegocd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cegocd-cli-" + name);
}

TEST(Cli, WritesReportAndSubgraph) {
  const auto out = tmp("report.json"), sub = tmp("sub.json");
  std::filesystem::remove(out);
  std::filesystem::remove(sub);
  EXPECT_EQ(cli({"--graph", (fixtures_dir() / "toy_kg.jsonl").string(), "--query", scripted_query(), "--config",
                 (fixtures_dir() / "toy_config.toml").string(), "--mock-providers", "--out", out.string(),
                 "--emit-subgraph", sub.string()}),
            kExitOk);
  EXPECT_EQ(testing::read_file(out), testing::read_file(fixtures_dir() / "golden_report.json"));
  const auto j = nlohmann::json::parse(testing::read_file(sub));
  EXPECT_EQ(j.at("edges").size(), manifest().at("end_to_end").at("edges_after_completion").get<std::size_t>());
}

TEST(Cli, ExitCodes) {
  const std::string graph = (fixtures_dir() / "toy_kg.jsonl").string();
  EXPECT_EQ(cli({"--query", "x", "--mock-providers"}), kExitUsage);
  EXPECT_EQ(cli({"--graph", graph, "--query", "x", "--bogus"}), kExitUsage);
  EXPECT_EQ(cli({"--graph", graph, "--query", "x y", "--mock-providers"}), kExitNoKeywords);
  EXPECT_EQ(cli({"--graph", "/nonexistent.jsonl", "--query", "graph attention", "--mock-providers"}),
            kExitGraphLoad);
  EXPECT_EQ(cli({"--graph", graph, "--query", "graph attention", "--config", "/nonexistent.toml",
                 "--mock-providers"}),
            kExitUsage);
  EXPECT_EQ(cli({"--graph", graph, "--query", "graph attention", "--mock-providers", "--theta-max", "0"}),
            kExitUsage);
  EXPECT_EQ(cli({"--graph", graph, "--query", "graph attention", "--mock-providers", "--out",
                 "/nonexistent-dir/r.json"}),
            kExitOutput);
  EXPECT_EQ(cli({"--help"}), kExitOk);
}

TEST(Cli, RemoteWithoutEnvironmentIsUsageError) {
  ::unsetenv("CEGOCD_LLM_URL");
  EXPECT_EQ(cli({"--graph", (fixtures_dir() / "toy_kg.jsonl").string(), "--query", "graph attention"}),
            kExitUsage);
}

TEST(Cli, ThetaMaxFlag) {
  const auto out = tmp("theta.json");
  EXPECT_EQ(cli({"--graph", (fixtures_dir() / "toy_kg.jsonl").string(), "--query", scripted_query(),
                 "--mock-providers", "--theta-max", "1", "--max-hops", "3", "--out", out.string()}),
            kExitOk);
  const auto r = report_from_json(nlohmann::json::parse(testing::read_file(out)));
  EXPECT_EQ(r.communities.size(), 1u);
}

}  // namespace
}  // namespace cegocd
