// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#pragma once

namespace cegocd {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitUsage = 2,  // bad flags or config
  kExitGraphLoad = 3,
  kExitNoKeywords = 4,  // the query yielded no keywords
  kExitProtocol = 5,
  kExitTransport = 6,
  kExitOutput = 7,
};

/// Parses flags, runs one query and writes the report. Never throws.
int run_cli(int argc, const char* const* argv);

}  // namespace cegocd
