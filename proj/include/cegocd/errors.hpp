// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#pragma once

#include <stdexcept>
#include <string>

namespace cegocd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph file, dangling endpoint or duplicate entity id.
class GraphLoadError : public Error {
 public:
  using Error::Error;
};

class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& id)
      : Error("unknown entity id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Base for failures raised while talking to a language or embedding model.
class ProviderError : public Error {
 public:
  using Error::Error;
};

/// The backend could not be reached or answered with a non-2xx status.
class TransportError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

/// The backend answered, but the answer breaks the operation contract
/// (e.g. a filter returned an id it was never offered).
class ProtocolViolation : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

/// Keyword extraction produced nothing usable: the query is unanswerable.
class EmptyKeywordsError : public Error {
 public:
  using Error::Error;
};

/// Pruning removed every edge.
class EmptySubgraphError : public Error {
 public:
  using Error::Error;
};

}  // namespace cegocd
