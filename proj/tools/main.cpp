// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/cli.hpp"

int main(int argc, char** argv) { return dpskdiv::cli::run_cli(argc, argv); }
