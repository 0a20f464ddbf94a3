// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpskdiv/montecarlo.hpp"
#include "dpskdiv/types.hpp"

namespace dpskdiv::cli {

enum class Mode { rho, analyze, simulate, validate };

const char* mode_name(Mode m);

/// Resolved run description. The timestamp goes to stderr only; CSV output
/// must stay byte-identical across reruns of the same manifest.
struct RunManifest {
    mc::SimConfig sim;
    Mode mode = Mode::analyze;
    std::string out_path;  // empty -> stdout
    std::string version = kVersion;
    std::string timestamp;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` text; '#' starts a comment, blank lines ignored.
KeyValues parse_config_text(std::istream& is);
KeyValues parse_config_file(const std::string& path);

/// Key-value lines recovered from the `# key = value` header comments of an
/// emitted CSV (for reproducing a run from its output).
KeyValues parse_manifest_comments(std::istream& is);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<int> receiver;
    std::optional<std::string> rho_mode;
};

/// Defaults reproduce the two-branch asymmetric-spectrum setup used across
/// the docs: kappa = 3, f_dT = 0.03 / 0.05, 30%/70% energy split, 8-DPSK.
mc::SimConfig default_sim_config();

/// Applies config-file keys and command-line overrides on top of the
/// defaults. Unknown keys raise config_error.
mc::SimConfig resolve_sim_config(const KeyValues& kv, const Overrides& ov);

/// Header comment block echoed into every CSV; parsing it back yields the
/// same resolved configuration.
std::vector<std::string> manifest_comments(const RunManifest& man);

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

void cmd_rho(const RunManifest& man, std::ostream& os);
void cmd_analyze(const RunManifest& man, std::ostream& os);
void cmd_simulate(const RunManifest& man, std::ostream& os);
void cmd_validate(const RunManifest& man, std::ostream& os);

/// Full front end. Exit codes: 0 success, 2 configuration error, 3 numerical
/// error.
int run_cli(int argc, const char* const* argv);

}  // namespace dpskdiv::cli
