// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cegocd Authors

#include "cegocd/cli.hpp"

int main(int argc, char** argv) { return cegocd::run_cli(argc, argv); }
