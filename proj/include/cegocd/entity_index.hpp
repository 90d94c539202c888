// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors
//
// TF-IDF index over entity surface text (name, aliases, description).

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cegocd/kg_store.hpp"

namespace cegocd {

/// Lowercases ASCII, splits on every non-alphanumeric byte and drops tokens
/// shorter than two characters. No stemming, no stop words.
std::vector<std::string> tokenize(std::string_view text);

/// Surface text fed to the index for one entity.
std::string entity_document(const Entity& e);

struct ScoredEntity {
  const Entity* entity;
  double score;
};

struct Posting {
  std::size_t doc;  // index into the graph's sorted entity list
  std::size_t term_frequency;
};

class EntityIndex {
 public:
  /// idf = ln(1 + N / df), tf = raw count, document vectors L2-normalized.
  static EntityIndex build(const KnowledgeGraph& graph);

  /// At most k entities by descending cosine score; ties by ascending id;
  /// zero scores excluded. A keyword with no tokens yields an empty list.
  std::vector<ScoredEntity> top_k(std::string_view keyword, std::size_t k = 10) const;

  std::size_t vocabulary_size() const { return postings_.size(); }
  std::size_t corpus_size() const { return doc_norms_.size(); }
  /// 0 for an unseen term.
  std::size_t document_frequency(std::string_view term) const;
  double idf(std::string_view term) const;
  const std::map<std::string, std::vector<Posting>, std::less<>>& postings() const {
    return postings_;
  }

 private:
  const KnowledgeGraph* graph_ = nullptr;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::vector<double> doc_norms_;
};

}  // namespace cegocd
