// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <vector>

#include "dpskdiv/fading.hpp"
#include "dpskdiv/types.hpp"

namespace dpskdiv::rx {

/// The four combining differential detectors. Values carry the conventional
/// numbering used throughout the CLI (17..20).
enum class ReceiverKind {
    OptimumAsymInid = 17,  // per-branch weights and per-branch rho-phase rotation
    OptimumSymInid = 18,   // per-branch weights, no rotation (symmetric spectrum)
    OptimumAsymIid = 19,   // common rotation, unit weights (i.i.d. branches)
    ProductDetector = 20,  // plain product combining
};

ReceiverKind receiver_from_number(int n);
int receiver_number(ReceiverKind k);

/// Per-branch samples and the channel knowledge a detector may use.
struct DecisionInput {
    CVec r_k;        // r_i(k)
    CVec r_km1;      // r_i(k-1)
    Vec weights;     // w_i of the weighting rule
    Vec rho_phases;  // angle(rho_i)
};

/// Weighting factors w_i = (1/N_i) |rho_i| gamma_i / ((1+gamma_i)^2 - (|rho_i| gamma_i)^2).
Vec weights(const std::vector<fading::BranchStatistics>& stats);

/// Combined decision phasor z; the decision statistic for index m is
/// Re[e^{-j 2 pi m / M} z].
Complex combine(const DecisionInput& input, ReceiverKind kind);

struct Decision {
    int index = 0;
    bool tie = false;  // exact argmax tie (measure-zero; z == 0 included)
};

/// argmax_m Re[e^{-j 2 pi m / M} z], ties broken toward the smallest index.
Decision decide(Complex z, int m_ary);

}  // namespace dpskdiv::rx
