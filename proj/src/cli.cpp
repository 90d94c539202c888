// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cegocd/config.hpp"
#include "cegocd/errors.hpp"
#include "cegocd/kg_store.hpp"
#include "cegocd/pipeline.hpp"

namespace cegocd {

namespace {

void log_to_stderr() {
  auto logger = spdlog::get("cegocd");
  if (!logger) logger = spdlog::stderr_color_mt("cegocd");
  spdlog::set_default_logger(logger);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw std::ios_base::failure(fmt::format("cannot write '{}'", path));
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  log_to_stderr();

  CLI::App app{"Answer a question over an academic knowledge graph"};
  std::string graph_path;
  std::string query;
  std::string config_path;
  std::string out_path;
  std::string subgraph_path;
  bool mock = false;
  std::optional<std::size_t> max_hops;
  std::optional<std::size_t> theta_max;
  std::string log_level = "warn";

  app.add_option("--graph", graph_path, "knowledge graph in JSONL form")->required();
  app.add_option("--query", query, "natural-language question")->required();
  app.add_option("--config", config_path, "TOML-style configuration file");
  app.add_flag("--mock-providers", mock, "use the deterministic offline providers");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--emit-subgraph", subgraph_path, "also write the refined subgraph as JSON");
  app.add_option("--max-hops", max_hops, "override retrieval.max_hops");
  app.add_option("--theta-max", theta_max, "override community.theta_max");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));

  Config config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (max_hops) config.max_hops = *max_hops;
    if (theta_max) config.theta_max = *theta_max;
    config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  KnowledgeGraph graph;
  try {
    graph = load_graph(graph_path);
  } catch (const GraphLoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGraphLoad;
  }

  RunReport report;
  WeightedSubgraph refined;
  try {
    Providers providers = mock ? make_mock_providers(config) : make_remote_providers(config);
    report = answer(query, graph, std::move(providers), config, &refined);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptyKeywordsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoKeywords;
  } catch (const ProtocolViolation& e) {
    std::cerr << "provider protocol violation: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const TransportError& e) {
    std::cerr << "provider unreachable: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }

  try {
    const std::string text = dump_report(report);
    if (out_path.empty()) {
      std::cout << text << std::flush;
    } else {
      write_file(out_path, text);
    }
    if (!subgraph_path.empty()) write_file(subgraph_path, subgraph_to_json(graph, refined).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutput;
  }
  return kExitOk;
}

}  // namespace cegocd
