// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/pipeline.hpp"

#include <chrono>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"
#include "cegocd/provider_wire.hpp"
#include "cegocd/remote_provider.hpp"
#include "cegocd/retrieval.hpp"

namespace cegocd {

using nlohmann::json;

namespace {

json opt_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }
json opt_json(const std::optional<double>& d) { return d ? json(*d) : json(nullptr); }

template <typename T>
std::optional<T> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json merge_to_json(const MergeStep& m) {
  return {{"first", m.first},
          {"second", m.second},
          {"inter_weight", m.inter_weight},
          {"modularity_after", m.modularity_after}};
}

json call_to_json(const CallRecord& c) {
  return {{"operation", c.operation},
          {"provider", c.provider},
          {"input_tokens", c.input_tokens},
          {"output_tokens", c.output_tokens},
          {"seconds", c.seconds}};
}

}  // namespace

json to_json(const RunReport& r) {
  json keywords = json::array();
  for (const auto& k : r.retrieval.keywords) {
    keywords.push_back({{"keyword", k.keyword}, {"candidates", k.candidates}, {"retained", k.retained}});
  }
  json merges = json::array();
  for (const auto& m : r.partition.merges) merges.push_back(merge_to_json(m));
  json communities = json::array();
  for (const auto& c : r.communities) {
    communities.push_back({{"id", c.id},
                           {"members", c.members},
                           {"central_title", opt_json(c.central_title)},
                           {"verbalization", c.verbalization},
                           {"theme", opt_json(c.theme)},
                           {"answer", opt_json(c.answer)},
                           {"answered", c.answer.has_value()}});
  }
  json calls = json::array();
  for (const auto& c : r.provider_calls) calls.push_back(call_to_json(c));

  const auto& t = r.triples;
  return {
      {"schema", r.schema},
      {"context", wire::context_to_json(r.context)},
      {"dropped_target_types", r.dropped_target_types},
      {"retrieval",
       {{"keywords", keywords},
        {"entity_candidates", r.retrieval.entity_candidates},
        {"filtered_entities", r.retrieval.filtered_entities},
        {"candidate_relation_types", r.retrieval.candidate_relation_types},
        {"filtered_relation_types", r.retrieval.filtered_relation_types},
        {"pair_count", r.retrieval.pair_count},
        {"path_count", r.retrieval.path_count},
        {"subgraph_nodes", r.retrieval.subgraph_nodes},
        {"subgraph_edges", r.retrieval.subgraph_edges}}},
      {"triples",
       {{"edges_before_prune", t.edges_before_prune},
        {"edges_after_prune", t.edges_after_prune},
        {"edges_after_completion", t.edges_after_completion},
        {"nodes_before_prune", t.nodes_before_prune},
        {"nodes_after_prune", t.nodes_after_prune},
        {"mean_semantic_before_prune", t.mean_semantic_before_prune},
        {"mean_semantic_after_prune", t.mean_semantic_after_prune},
        {"mean_semantic_after_completion", t.mean_semantic_after_completion},
        {"prune_threshold", opt_json(t.prune_threshold)},
        {"completed_edges", t.completed_edges}}},
      {"degraded_empty_subgraph", r.degraded_empty_subgraph},
      {"no_evidence", r.no_evidence},
      {"partition",
       {{"modularity", r.partition.modularity},
        {"theta_max", r.partition.theta_max},
        {"merges", merges}}},
      {"communities", communities},
      {"final_answer", r.final_answer},
      {"provider_calls", calls},
      {"total_seconds", r.total_seconds},
  };
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw Error(fmt::format("unsupported report schema '{}'", r.schema));
    r.context = wire::context_from_json(j.at("context"));
    r.dropped_target_types = j.at("dropped_target_types").get<std::vector<std::string>>();

    const auto& rs = j.at("retrieval");
    for (const auto& k : rs.at("keywords")) {
      r.retrieval.keywords.push_back({k.at("keyword").get<std::string>(),
                                      k.at("candidates").get<std::size_t>(),
                                      k.at("retained").get<std::size_t>()});
    }
    r.retrieval.entity_candidates = rs.at("entity_candidates").get<std::size_t>();
    r.retrieval.filtered_entities = rs.at("filtered_entities").get<std::size_t>();
    r.retrieval.candidate_relation_types = rs.at("candidate_relation_types").get<std::size_t>();
    r.retrieval.filtered_relation_types = rs.at("filtered_relation_types").get<std::size_t>();
    r.retrieval.pair_count = rs.at("pair_count").get<std::size_t>();
    r.retrieval.path_count = rs.at("path_count").get<std::size_t>();
    r.retrieval.subgraph_nodes = rs.at("subgraph_nodes").get<std::size_t>();
    r.retrieval.subgraph_edges = rs.at("subgraph_edges").get<std::size_t>();

    const auto& t = j.at("triples");
    r.triples.edges_before_prune = t.at("edges_before_prune").get<std::size_t>();
    r.triples.edges_after_prune = t.at("edges_after_prune").get<std::size_t>();
    r.triples.edges_after_completion = t.at("edges_after_completion").get<std::size_t>();
    r.triples.nodes_before_prune = t.at("nodes_before_prune").get<std::size_t>();
    r.triples.nodes_after_prune = t.at("nodes_after_prune").get<std::size_t>();
    r.triples.mean_semantic_before_prune = t.at("mean_semantic_before_prune").get<double>();
    r.triples.mean_semantic_after_prune = t.at("mean_semantic_after_prune").get<double>();
    r.triples.mean_semantic_after_completion = t.at("mean_semantic_after_completion").get<double>();
    r.triples.prune_threshold = opt_from<double>(t, "prune_threshold");
    r.triples.completed_edges = t.at("completed_edges").get<std::size_t>();

    r.degraded_empty_subgraph = j.at("degraded_empty_subgraph").get<bool>();
    r.no_evidence = j.at("no_evidence").get<bool>();

    const auto& p = j.at("partition");
    r.partition.modularity = p.at("modularity").get<double>();
    r.partition.theta_max = p.at("theta_max").get<std::size_t>();
    for (const auto& m : p.at("merges")) {
      r.partition.merges.push_back({m.at("first").get<std::string>(), m.at("second").get<std::string>(),
                                    m.at("inter_weight").get<double>(),
                                    m.at("modularity_after").get<double>()});
    }
    for (const auto& c : j.at("communities")) {
      CommunityReport cr;
      cr.id = c.at("id").get<std::size_t>();
      cr.members = c.at("members").get<std::vector<std::string>>();
      cr.central_title = opt_from<std::string>(c, "central_title");
      cr.verbalization = c.at("verbalization").get<std::string>();
      cr.theme = opt_from<std::string>(c, "theme");
      cr.answer = opt_from<std::string>(c, "answer");
      r.communities.push_back(std::move(cr));
    }
    r.final_answer = j.at("final_answer").get<std::string>();
    for (const auto& c : j.at("provider_calls")) {
      r.provider_calls.push_back({c.at("operation").get<std::string>(), c.at("provider").get<std::string>(),
                                  c.at("input_tokens").get<std::size_t>(),
                                  c.at("output_tokens").get<std::size_t>(), c.at("seconds").get<double>()});
    }
    r.total_seconds = j.at("total_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(fmt::format("malformed report: {}", e.what()));
  }
}

std::string dump_report(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

json subgraph_to_json(const KnowledgeGraph& graph, const WeightedSubgraph& wsub) {
  json nodes = json::array();
  for (const auto& id : wsub.nodes) {
    const Entity& e = graph.entity(id);
    nodes.push_back({{"id", e.id}, {"name", e.name}, {"entity_type", e.entity_type}});
  }
  json edges = json::array();
  for (const auto& e : wsub.edges) {
    json je = {{"source", e.relation.source},
               {"target", e.relation.target},
               {"relation_type", e.relation.relation_type},
               {"provenance", to_string(e.relation.provenance)},
               {"weight", e.weight},
               {"semantic", e.semantic}};
    if (!e.description.empty()) je["description"] = e.description;
    edges.push_back(std::move(je));
  }
  return {{"nodes", nodes},
          {"edges", edges},
          {"prune_threshold", opt_json(wsub.prune_threshold_used)},
          {"completed", wsub.count(Provenance::kCompleted)}};
}

Providers make_mock_providers(const Config& config) {
  auto base = std::make_shared<MockLanguageModel>(config.mock_target_types);
  return {std::make_shared<CachingLanguageModel>(base, config.cache_dir),
          std::make_shared<MockEmbedder>()};
}

Providers make_remote_providers(const Config& config) {
  auto llm_settings = llm_settings_from_env();
  if (!llm_settings) throw ConfigError("CEGOCD_LLM_URL is not set (use --mock-providers for offline runs)");
  auto embed_settings = embed_settings_from_env();
  if (!embed_settings) throw ConfigError("CEGOCD_EMBED_URL is not set");
  for (auto* s : {&*llm_settings, &*embed_settings}) {
    s->max_in_flight = config.max_in_flight;
    s->timeout = config.timeout;
  }
  if (config.prompt_file) llm_settings->prompts = load_prompts(*config.prompt_file);
  auto base = std::make_shared<RemoteLanguageModel>(std::move(*llm_settings));
  return {std::make_shared<CachingLanguageModel>(base, config.cache_dir),
          std::make_shared<RemoteEmbedder>(std::move(*embed_settings))};
}

Pipeline::Pipeline(const KnowledgeGraph& graph, Providers providers, Config config)
    : graph_(graph),
      providers_(std::move(providers)),
      config_(std::move(config)),
      index_(EntityIndex::build(graph)) {
  config_.validate();
  if (!providers_.llm || !providers_.embedder) throw std::invalid_argument("pipeline needs both providers");
}

namespace {

void fill_metrics_before(TripleMetrics& t, const WeightedSubgraph& w) {
  t.edges_before_prune = w.edges.size();
  t.nodes_before_prune = w.nodes.size();
  t.mean_semantic_before_prune = w.mean_semantic();
}

// Edges of the title neighborhood, kept at their weights; used when pruning
// removes everything.
WeightedSubgraph neighborhood_fallback(const WeightedSubgraph& weighted, const Subgraph& sub) {
  WeightedSubgraph out;
  for (const auto& e : weighted.edges) {
    auto it = sub.edges.find(e.relation);
    if (it != sub.edges.end() && it->second == Origin::kFromPath) continue;
    out.edges.push_back(e);
  }
  if (out.edges.empty()) out.edges = weighted.edges;
  for (const auto& e : out.edges) {
    out.nodes.insert(e.relation.source);
    out.nodes.insert(e.relation.target);
  }
  return out;
}

}  // namespace

RunReport Pipeline::answer(const std::string& query, WeightedSubgraph* refined_out) const {
  const auto started = std::chrono::steady_clock::now();
  auto ledger = std::make_shared<CallLedger>(config_.include_timings);
  InstrumentedLanguageModel llm(providers_.llm, ledger);
  InstrumentedEmbedder embedder(providers_.embedder, ledger);

  RunReport report;
  report.partition.theta_max = config_.theta_max;

  // Context and target types.
  report.context = extract_context(llm, query);
  const QueryContext& ctx = report.context;
  std::vector<std::string> targets;
  for (const auto& t : ctx.target_types) {
    if (graph_.entity_types().contains(t)) {
      targets.push_back(t);
    } else {
      spdlog::warn("target type '{}' does not occur in the graph; ignored", t);
      report.dropped_target_types.push_back(t);
    }
  }
  const TypeSet target_set(targets.begin(), targets.end());

  // Retrieval.
  std::vector<KeywordCandidates> candidates;
  for (const auto& k : ctx.keywords) {
    candidates.push_back({k, index_.top_k(k, config_.top_k)});
    report.retrieval.entity_candidates += candidates.back().entities.size();
  }
  const auto filtered = filter_entities(llm, ctx, candidates);
  std::vector<std::vector<std::string>> groups;
  std::set<std::string> relevant;
  TypeSet relevant_types = target_set;
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    report.retrieval.keywords.push_back({ctx.keywords[i], candidates[i].entities.size(), filtered[i].size()});
    auto& g = groups.emplace_back();
    for (const auto& s : filtered[i]) {
      g.push_back(s.entity->id);
      relevant.insert(s.entity->id);
      relevant_types.insert(s.entity->entity_type);
    }
  }
  report.retrieval.filtered_entities = relevant.size();

  TypeSet relation_candidates;
  for (const auto& t : relevant_types) relation_candidates.merge(graph_.relation_types_touching(t));
  report.retrieval.candidate_relation_types = relation_candidates.size();
  TypeSet allowed;
  if (!relation_candidates.empty()) allowed = filter_relations(llm, ctx, relation_candidates);
  report.retrieval.filtered_relation_types = allowed.size();

  const auto pairs = pair_entities(groups);
  report.retrieval.pair_count = pairs.size();
  std::vector<Path> paths;
  if (!allowed.empty()) {
    const PathSearchLimits limits{config_.max_hops, config_.max_paths};
    for (const auto& p : pairs) {
      auto found = find_paths(graph_, p, allowed, limits);
      paths.insert(paths.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
  }
  report.retrieval.path_count = paths.size();
  const Subgraph sub =
      assemble_subgraph(paths, title_neighbor_subgraph(graph_, relevant, target_set, config_.title_type));
  report.retrieval.subgraph_nodes = sub.nodes.size();
  report.retrieval.subgraph_edges = sub.edges.size();

  WeightedSubgraph refined;
  if (sub.edges.empty()) {
    report.no_evidence = true;
  } else {
    // Optimization.
    TypeSet weighted_types;
    for (const auto& [r, origin] : sub.edges) weighted_types.insert(r.relation_type);
    for (const auto& t : config_.completion_relation_types) weighted_types.insert(t);
    const TypeWeightTable weights = assign_type_weights(llm, weighted_types);

    const WeightedSubgraph weighted =
        weight_edges(graph_, sub, ctx.keywords, weights, embedder, config_.aggregation);
    fill_metrics_before(report.triples, weighted);
    const auto edge_weights = weighted.weights();
    const double theta = config_.prune_threshold_override.value_or(
        adaptive_prune_threshold(edge_weights, config_.prune_ramp));
    report.triples.prune_threshold = theta;

    try {
      const WeightedSubgraph pruned = prune(weighted, theta);
      report.triples.edges_after_prune = pruned.edges.size();
      report.triples.nodes_after_prune = pruned.nodes.size();
      report.triples.mean_semantic_after_prune = pruned.mean_semantic();
      refined = complete(graph_, pruned, targets, llm, embedder, ctx, weights,
                         {config_.aggregation, config_.completion_relation_types});
    } catch (const EmptySubgraphError& e) {
      spdlog::warn("{}; answering from the title neighborhood", e.what());
      report.degraded_empty_subgraph = true;
      refined = neighborhood_fallback(weighted, sub);
    }
    report.triples.edges_after_completion = report.degraded_empty_subgraph ? 0 : refined.edges.size();
    report.triples.mean_semantic_after_completion =
        report.degraded_empty_subgraph ? 0.0 : refined.mean_semantic();
    report.triples.completed_edges = refined.count(Provenance::kCompleted);

    // Communities and answers.
    const CommunityPartition partition =
        detect_communities(graph_, refined, config_.theta_max, config_.title_type);
    report.partition.modularity = partition.modularity;
    report.partition.merges = partition.merges;

    std::vector<CommunitySummary> answered;
    for (const auto& c : partition.communities) {
      CommunityReport cr;
      cr.id = c.id;
      cr.members = c.members;
      cr.central_title = c.central_title;
      cr.verbalization = verbalize(graph_, refined, c.members, c.central_title);
      try {
        const CommunitySummary s = summarize_community(llm, cr.verbalization, ctx);
        cr.theme = s.theme;
        cr.answer = s.answer;
        answered.push_back(s);
      } catch (const TransportError& e) {
        spdlog::warn("community {} left unanswered: {}", c.id, e.what());
      }
      report.communities.push_back(std::move(cr));
    }
    report.final_answer = synthesize_final(llm, answered, ctx);
  }
  if (report.no_evidence) report.final_answer = synthesize_final(llm, {}, ctx);

  report.provider_calls = ledger->records();
  if (config_.include_timings) {
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  if (refined_out != nullptr) *refined_out = std::move(refined);
  return report;
}

RunReport answer(const std::string& query, const KnowledgeGraph& graph, Providers providers,
                 const Config& config, WeightedSubgraph* refined_out) {
  return Pipeline(graph, std::move(providers), config).answer(query, refined_out);
}

}  // namespace cegocd
