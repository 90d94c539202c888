// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/config.hpp"

#include <fstream>
#include <istream>
#include <variant>

#include <fmt/format.h>

#include "cegocd/errors.hpp"

namespace cegocd {

namespace {

using Value = std::variant<std::string, double, bool, std::vector<std::string>>;

std::string_view strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Drops a trailing comment that is not inside a quoted string.
std::string_view without_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string parse_string(std::string_view s, std::size_t line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
    throw ConfigError(fmt::format("line {}: expected a quoted string", line));
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) {
      const char n = s[++i];
      out.push_back(n == 'n' ? '\n' : n == 't' ? '\t' : n);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

Value parse_value(std::string_view s, std::size_t line) {
  if (s.empty()) throw ConfigError(fmt::format("line {}: missing value", line));
  if (s.front() == '"') return parse_string(s, line);
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError(fmt::format("line {}: unterminated array", line));
    std::vector<std::string> items;
    std::string_view body = strip(s.substr(1, s.size() - 2));
    while (!body.empty()) {
      std::size_t end = 0;
      if (body.front() != '"') throw ConfigError(fmt::format("line {}: arrays hold quoted strings", line));
      end = body.find('"', 1);
      while (end != std::string_view::npos && body[end - 1] == '\\') end = body.find('"', end + 1);
      if (end == std::string_view::npos) throw ConfigError(fmt::format("line {}: unterminated string", line));
      items.push_back(parse_string(body.substr(0, end + 1), line));
      body = strip(body.substr(end + 1));
      if (!body.empty()) {
        if (body.front() != ',') throw ConfigError(fmt::format("line {}: expected ',' in array", line));
        body = strip(body.substr(1));
      }
    }
    return items;
  }
  double d = 0.0;
  const std::string text(s);
  std::size_t used = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw ConfigError(fmt::format("line {}: cannot parse value '{}'", line, s));
  return d;
}

template <typename T>
const T& expect(const Value& v, const std::string& key, std::size_t line, const char* what) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ConfigError(fmt::format("line {}: '{}' must be {}", line, key, what));
}

std::size_t as_count(const Value& v, const std::string& key, std::size_t line) {
  const double d = expect<double>(v, key, line, "a number");
  if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw ConfigError(fmt::format("line {}: '{}' must be a non-negative integer", line, key));
  }
  return static_cast<std::size_t>(d);
}

}  // namespace

void Config::validate() const {
  if (top_k < 1) throw ConfigError("retrieval.top_k must be >= 1");
  if (max_hops < 1) throw ConfigError("retrieval.max_hops must be >= 1");
  if (max_paths < 1) throw ConfigError("retrieval.max_paths must be >= 1");
  if (theta_max < 1) throw ConfigError("community.theta_max must be >= 1");
  if (title_type.empty()) throw ConfigError("retrieval.title_type must be non-empty");
  if (!(prune_ramp.min_quantile >= 0.0 && prune_ramp.min_quantile <= prune_ramp.max_quantile &&
        prune_ramp.max_quantile <= 1.0)) {
    throw ConfigError("optimization prune quantiles must satisfy 0 <= min <= max <= 1");
  }
  if (!(prune_ramp.edges_at_max > 0.0)) throw ConfigError("optimization.prune_edges_at_max must be > 0");
  if (completion_relation_types.empty()) {
    throw ConfigError("optimization.completion_relation_types must be non-empty");
  }
  for (const auto& t : completion_relation_types) {
    if (!is_completion_relation_type(t)) {
      throw ConfigError(fmt::format("unsupported completion relation type '{}'", t));
    }
  }
  if (max_in_flight < 1) throw ConfigError("providers.max_in_flight must be >= 1");
}

Config parse_config(std::istream& in, Config cfg) {
  std::string section;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = strip(without_comment(raw));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(fmt::format("line {}: malformed section header", line));
      section = std::string(strip(text.substr(1, text.size() - 2)));
      if (section != "retrieval" && section != "optimization" && section != "community" &&
          section != "providers" && section != "report") {
        throw ConfigError(fmt::format("line {}: unknown section [{}]", line, section));
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("line {}: expected key = value", line));
    const std::string key = section + "." + std::string(strip(text.substr(0, eq)));
    const Value v = parse_value(strip(text.substr(eq + 1)), line);

    if (key == "retrieval.top_k") {
      cfg.top_k = as_count(v, key, line);
    } else if (key == "retrieval.max_hops") {
      cfg.max_hops = as_count(v, key, line);
    } else if (key == "retrieval.max_paths") {
      cfg.max_paths = as_count(v, key, line);
    } else if (key == "retrieval.title_type") {
      cfg.title_type = expect<std::string>(v, key, line, "a string");
    } else if (key == "optimization.prune_min_quantile") {
      cfg.prune_ramp.min_quantile = expect<double>(v, key, line, "a number");
    } else if (key == "optimization.prune_max_quantile") {
      cfg.prune_ramp.max_quantile = expect<double>(v, key, line, "a number");
    } else if (key == "optimization.prune_edges_at_max") {
      cfg.prune_ramp.edges_at_max = expect<double>(v, key, line, "a number");
    } else if (key == "optimization.prune_threshold_override") {
      cfg.prune_threshold_override = expect<double>(v, key, line, "a number");
    } else if (key == "optimization.keyword_aggregation") {
      const auto& s = expect<std::string>(v, key, line, "a string");
      if (s == "max") {
        cfg.aggregation = KeywordAggregation::kMax;
      } else if (s == "mean") {
        cfg.aggregation = KeywordAggregation::kMean;
      } else {
        throw ConfigError(fmt::format("line {}: keyword_aggregation must be \"max\" or \"mean\"", line));
      }
    } else if (key == "optimization.completion_relation_types") {
      cfg.completion_relation_types = expect<std::vector<std::string>>(v, key, line, "an array");
    } else if (key == "community.theta_max") {
      cfg.theta_max = as_count(v, key, line);
    } else if (key == "providers.target_types") {
      cfg.mock_target_types = expect<std::vector<std::string>>(v, key, line, "an array");
    } else if (key == "providers.cache_dir") {
      const auto& s = expect<std::string>(v, key, line, "a string");
      cfg.cache_dir = s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
    } else if (key == "providers.max_in_flight") {
      cfg.max_in_flight = as_count(v, key, line);
    } else if (key == "providers.timeout_seconds") {
      cfg.timeout = std::chrono::seconds(as_count(v, key, line));
    } else if (key == "providers.prompt_file") {
      const auto& s = expect<std::string>(v, key, line, "a string");
      cfg.prompt_file = s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
    } else if (key == "report.include_timings") {
      cfg.include_timings = expect<bool>(v, key, line, "a boolean");
    } else {
      throw ConfigError(fmt::format("line {}: unknown key '{}'", line, key));
    }
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  const auto dir = path.parent_path();
  Config cfg = parse_config(in, std::move(base));
  // Relative paths in a config file resolve against the file's directory.
  if (cfg.cache_dir && cfg.cache_dir->is_relative()) cfg.cache_dir = dir / *cfg.cache_dir;
  if (cfg.prompt_file && cfg.prompt_file->is_relative()) cfg.prompt_file = dir / *cfg.prompt_file;
  return cfg;
}

}  // namespace cegocd
