// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dpskdiv/fading.hpp"
#include "dpskdiv/receivers.hpp"
#include "dpskdiv/types.hpp"

namespace dpskdiv::mc {

struct SimBranch {
    fading::DopplerModel doppler;
    double noise_psd = 1.0;       // base noise level N_i (relative profile)
    double energy_fraction = 1.0; // share of the total received bit energy
};

/// Full simulation configuration. Per grid point, branch SNRs resolve as
/// gamma_i = log2(M) * energy_fraction_i * gamma_b_total; the branch fading
/// power then follows from the configured noise level.
struct SimConfig {
    int m_ary = 8;
    rx::ReceiverKind kind = rx::ReceiverKind::OptimumAsymInid;
    std::vector<SimBranch> branches;
    std::vector<double> snr_per_bit_db;  // total mean SNR per bit, dB
    std::int64_t trials = 1'000'000;     // per grid point, >= 1e4
    std::uint64_t seed = 1;
    fading::RhoMode rho_mode = fading::RhoMode::direct;
    int quad_points = 64;  // for integrated rho mode
    int threads = 0;       // 0 = hardware concurrency
};

struct BitErrorTally {
    std::array<std::int64_t, 3> bit_errors{0, 0, 0};
    std::int64_t symbol_errors = 0;
    std::int64_t trials = 0;
    std::int64_t ties = 0;
    int bits_per_symbol = 0;

    void merge(const BitErrorTally& other);
};

struct EstimateWithCI {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::int64_t trials = 0;
    double rule_of_three = 0.0;  // 3/n upper bound, reported when no errors seen
};

struct PointEstimates {
    std::array<EstimateWithCI, 3> per_bit{};
    EstimateWithCI average;
    int bits_per_symbol = 0;
};

void validate(const SimConfig& config);

/// Branch statistics resolved at one grid point (direct or integrated rho).
std::vector<fading::BranchStatistics> resolve_branches(const SimConfig& config, int grid_index);

/// Runs config.trials trials at grid point grid_index with config.kind.
/// The random stream of trial t depends only on (seed, grid_index, t), so the
/// tally is identical for any thread count.
BitErrorTally run_point(const SimConfig& config, int grid_index);

/// Same trials evaluated through several detectors on shared random draws
/// (paired comparison); tallies returned in the order of kinds.
std::vector<BitErrorTally> run_point_kinds(const SimConfig& config, int grid_index,
                                           std::span<const rx::ReceiverKind> kinds);

/// Decisions of a single trial for each detector kind, for decision-level
/// comparisons in tests.
std::vector<int> trial_decisions(const SimConfig& config, int grid_index, std::int64_t trial,
                                 std::span<const rx::ReceiverKind> kinds);

/// Per-bit and average estimates with binomial standard errors.
PointEstimates estimate(const BitErrorTally& tally);

}  // namespace dpskdiv::mc
