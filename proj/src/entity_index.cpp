// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/entity_index.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cegocd {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string entity_document(const Entity& e) {
  std::string doc = e.name;
  for (const auto& alias : e.aliases) {
    doc += ' ';
    doc += alias;
  }
  if (e.description) {
    doc += ' ';
    doc += *e.description;
  }
  return doc;
}

EntityIndex EntityIndex::build(const KnowledgeGraph& graph) {
  EntityIndex index;
  index.graph_ = &graph;
  const auto entities = graph.entities();
  for (std::size_t d = 0; d < entities.size(); ++d) {
    std::map<std::string, std::size_t, std::less<>> counts;
    for (auto& t : tokenize(entity_document(entities[d]))) ++counts[t];
    for (auto& [term, tf] : counts) index.postings_[term].push_back({d, tf});
  }

  index.doc_norms_.assign(entities.size(), 0.0);
  for (const auto& [term, list] : index.postings_) {
    const double w_idf = index.idf(term);
    for (const auto& p : list) {
      const double w = static_cast<double>(p.term_frequency) * w_idf;
      index.doc_norms_[p.doc] += w * w;
    }
  }
  for (auto& n : index.doc_norms_) n = std::sqrt(n);
  return index;
}

std::size_t EntityIndex::document_frequency(std::string_view term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

double EntityIndex::idf(std::string_view term) const {
  const std::size_t df = document_frequency(term);
  if (df == 0) return 0.0;
  return std::log(1.0 + static_cast<double>(corpus_size()) / static_cast<double>(df));
}

std::vector<ScoredEntity> EntityIndex::top_k(std::string_view keyword, std::size_t k) const {
  if (k == 0) throw std::invalid_argument("top_k requires k >= 1");
  std::vector<ScoredEntity> out;
  if (graph_ == nullptr) return out;

  std::map<std::string, std::size_t, std::less<>> query_tf;
  for (auto& t : tokenize(keyword)) {
    if (postings_.contains(t)) ++query_tf[t];
  }
  if (query_tf.empty()) return out;

  double query_norm = 0.0;
  std::map<std::size_t, double> dots;
  for (const auto& [term, tf] : query_tf) {
    const double w_idf = idf(term);
    const double qw = static_cast<double>(tf) * w_idf;
    query_norm += qw * qw;
    for (const auto& p : postings_.find(term)->second) {
      dots[p.doc] += qw * static_cast<double>(p.term_frequency) * w_idf;
    }
  }
  query_norm = std::sqrt(query_norm);

  const auto entities = graph_->entities();
  for (const auto& [doc, dot] : dots) {
    const double denom = query_norm * doc_norms_[doc];
    if (denom <= 0.0) continue;
    const double score = dot / denom;
    if (score > 0.0) out.push_back({&entities[doc], score});
  }
  std::sort(out.begin(), out.end(), [](const ScoredEntity& a, const ScoredEntity& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entity->id < b.entity->id;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace cegocd
