// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/optimization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cegocd/errors.hpp"

namespace cegocd {

std::size_t WeightedSubgraph::count(Provenance p) const {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [p](const WeightedEdge& e) { return e.relation.provenance == p; }));
}

double WeightedSubgraph::mean_semantic() const {
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : edges) sum += e.semantic;
  return sum / static_cast<double>(edges.size());
}

std::vector<double> WeightedSubgraph::weights() const {
  std::vector<double> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.weight);
  return out;
}

std::string verbalize_triplet(const Entity& a, std::string_view relation_type, const Entity& b) {
  std::string rel(relation_type);
  std::replace(rel.begin(), rel.end(), '_', ' ');
  return fmt::format("{} {} {}", a.name, rel, b.name);
}

double unit_cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("unit_cosine: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.5;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp((c + 1.0) / 2.0, 0.0, 1.0);
}

SemanticScorer::SemanticScorer(Embedder& embedder, const std::vector<std::string>& keywords,
                               KeywordAggregation aggregation)
    : embedder_(embedder), aggregation_(aggregation) {
  if (keywords.empty()) throw std::invalid_argument("semantic scoring needs at least one keyword");
  keyword_vectors_ = embed(embedder_, keywords);
}

std::vector<double> SemanticScorer::score(const std::vector<std::string>& texts) const {
  const auto vectors = embed(embedder_, texts);
  std::vector<double> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    double agg = 0.0;
    for (const auto& k : keyword_vectors_) {
      const double s = unit_cosine(v, k);
      agg = aggregation_ == KeywordAggregation::kMax ? std::max(agg, s) : agg + s;
    }
    if (aggregation_ == KeywordAggregation::kMean) agg /= static_cast<double>(keyword_vectors_.size());
    out.push_back(agg);
  }
  return out;
}

double semantic_similarity(const Entity& a, std::string_view relation_type, const Entity& b,
                           const std::vector<std::string>& keywords, Embedder& embedder,
                           KeywordAggregation aggregation) {
  SemanticScorer scorer(embedder, keywords, aggregation);
  return scorer.score({verbalize_triplet(a, relation_type, b)}).front();
}

WeightedSubgraph weight_edges(const KnowledgeGraph& graph, const Subgraph& sub,
                              const std::vector<std::string>& keywords, const TypeWeightTable& weights,
                              Embedder& embedder, KeywordAggregation aggregation) {
  WeightedSubgraph out;
  for (const auto& [id, origin] : sub.nodes) out.nodes.insert(id);
  if (sub.edges.empty()) return out;

  std::vector<std::string> texts;
  texts.reserve(sub.edges.size());
  for (const auto& [r, origin] : sub.edges) {
    texts.push_back(verbalize_triplet(graph.entity(r.source), r.relation_type, graph.entity(r.target)));
  }
  SemanticScorer scorer(embedder, keywords, aggregation);
  const auto scores = scorer.score(texts);

  std::size_t i = 0;
  for (const auto& [r, origin] : sub.edges) {
    WeightedEdge e;
    e.relation = r;
    e.semantic = scores[i++];
    e.weight = e.semantic * weights.lookup(r.relation_type);
    out.edges.push_back(std::move(e));
  }
  return out;
}

double linear_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty set");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double PruneRamp::quantile_for(std::size_t edge_count) const {
  return std::min(max_quantile, std::max(min_quantile, static_cast<double>(edge_count) / edges_at_max));
}

double adaptive_prune_threshold(std::span<const double> edge_weights, const PruneRamp& ramp) {
  if (edge_weights.empty()) throw std::invalid_argument("adaptive_prune_threshold: no edges");
  return linear_quantile({edge_weights.begin(), edge_weights.end()},
                         ramp.quantile_for(edge_weights.size()));
}

WeightedSubgraph prune(const WeightedSubgraph& wsub, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("prune: threshold must be finite");
  WeightedSubgraph out;
  out.prune_threshold_used = theta;
  out.completions = wsub.completions;
  out.projections = wsub.projections;
  for (const auto& e : wsub.edges) {
    if (e.weight < theta) continue;
    out.edges.push_back(e);
    out.nodes.insert(e.relation.source);
    out.nodes.insert(e.relation.target);
  }
  if (out.edges.empty()) {
    throw EmptySubgraphError(
        fmt::format("pruning at threshold {} removed all {} edges", theta, wsub.edges.size()));
  }
  return out;
}

std::vector<double> project_1d(const std::vector<EmbeddingVector>& vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw std::invalid_argument("project_1d needs at least two vectors");
  const std::size_t d = vectors.front().dimension();
  for (const auto& v : vectors) {
    if (v.dimension() != d) throw std::invalid_argument("project_1d: non-uniform dimension");
  }

  std::vector<double> mean(d, 0.0);
  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += v.values[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  std::vector<std::vector<double>> x(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x[i][j] = vectors[i].values[j] - mean[j];
  }

  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& row : x) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) cov[a][b] += row[a] * row[b];
    }
  }
  double trace = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) cov[a][b] /= static_cast<double>(n - 1);
    trace += cov[a][a];
  }
  if (trace <= 1e-24) return std::vector<double>(n, 0.0);

  const auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    s = std::sqrt(s);
    if (s > 0.0) {
      for (double& c : v) c /= s;
    }
    return s;
  };

  // Start inside the row space so the dominant component is not missed.
  std::vector<double> v(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 1.0 + static_cast<double>(i) / static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) v[j] += w * x[i][j];
  }
  if (normalize(v) == 0.0) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = std::inner_product(x[i].begin(), x[i].end(), x[i].begin(), 0.0);
      if (s > best_norm) best_norm = s, best = i;
    }
    v = x[best];
    normalize(v);
  }

  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 1'000'000;
  std::vector<double> next(d);
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t a = 0; a < d; ++a) {
      next[a] = std::inner_product(cov[a].begin(), cov[a].end(), v.begin(), 0.0);
    }
    if (normalize(next) == 0.0) break;
    double delta = 0.0;
    for (std::size_t a = 0; a < d; ++a) delta = std::max(delta, std::abs(next[a] - v[a]));
    v.swap(next);
    if (delta <= kTolerance) break;
  }

  for (double c : v) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0) {
        for (double& s : v) s = -s;
      }
      break;
    }
  }

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::inner_product(x[i].begin(), x[i].end(), v.begin(), 0.0);
  return z;
}

std::vector<double> sorted_gaps(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) gaps.push_back(std::abs(z[i + 1] - z[i]));
  return gaps;
}

std::optional<double> completion_threshold(const std::vector<double>& z) {
  if (z.size() < 3) return std::nullopt;
  const auto gaps = sorted_gaps(z);
  const double q1 = linear_quantile(gaps, 0.25);
  const double q3 = linear_quantile(gaps, 0.75);
  return q3 + 1.0 * (q3 - q1);
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<double>& z,
                                                                 double theta) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (std::abs(z[i] - z[j]) <= theta) out.emplace_back(i, j);
    }
  }
  return out;
}

WeightedSubgraph complete(const KnowledgeGraph& graph, const WeightedSubgraph& wsub,
                          const std::vector<std::string>& target_types, LanguageModel& llm,
                          Embedder& embedder, const QueryContext& ctx,
                          const TypeWeightTable& weights, CompletionOptions options) {
  WeightedSubgraph out = wsub;

  std::set<EntityPair> adjacent;
  for (const auto& e : wsub.edges) {
    const auto& [s, t] = std::minmax(e.relation.source, e.relation.target);
    adjacent.emplace(s, t);
  }

  std::map<EntityPair, HiddenRelation> accepted;
  std::set<std::string> seen_types;
  for (const auto& type : target_types) {
    if (!seen_types.insert(type).second) continue;
    ProjectionResult proj;
    proj.entity_type = type;
    std::vector<std::string> names;
    for (const auto& id : wsub.nodes) {
      const Entity& e = graph.entity(id);
      if (e.entity_type != type) continue;
      proj.entity_ids.push_back(id);
      names.push_back(e.name);
    }
    if (proj.entity_ids.size() < 3) continue;

    proj.z = project_1d(embed(embedder, names));
    proj.gaps = sorted_gaps(proj.z);
    proj.threshold = completion_threshold(proj.z);
    const auto pairs = candidate_pairs(proj.z, *proj.threshold);
    for (const auto& [i, j] : pairs) {
      EntityPair key{proj.entity_ids[i], proj.entity_ids[j]};
      if (adjacent.contains(key)) continue;
      try {
        auto proposal =
            judge_hidden_relation(llm, graph.entity(key.first), graph.entity(key.second), ctx);
        if (!proposal) continue;
        if (std::find(options.relation_types.begin(), options.relation_types.end(),
                      proposal->relation_type) == options.relation_types.end()) {
          spdlog::warn("skipping proposal '{}' for ({}, {}): type disabled in config",
                       proposal->relation_type, key.first, key.second);
          continue;
        }
        accepted.emplace(std::move(key), std::move(*proposal));
      } catch (const ProviderError& e) {
        spdlog::warn("skipping candidate pair ({}, {}): {}", key.first, key.second, e.what());
      }
    }
    out.projections.push_back(std::move(proj));
  }
  if (accepted.empty()) return out;

  std::vector<std::string> texts;
  for (const auto& [pair, rel] : accepted) {
    texts.push_back(verbalize_triplet(graph.entity(pair.first), rel.relation_type,
                                      graph.entity(pair.second)));
  }
  SemanticScorer scorer(embedder, ctx.keywords, options.aggregation);
  const auto scores = scorer.score(texts);

  std::size_t i = 0;
  for (const auto& [pair, rel] : accepted) {
    WeightedEdge e;
    e.relation = Relation{pair.first, pair.second, rel.relation_type, Provenance::kCompleted};
    e.semantic = scores[i++];
    e.weight = e.semantic * weights.lookup(rel.relation_type);
    e.description = rel.description;
    out.completions.push_back({pair, rel.relation_type, rel.description, e.weight});
    out.edges.push_back(std::move(e));
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.relation < b.relation; });
  return out;
}

}  // namespace cegocd
