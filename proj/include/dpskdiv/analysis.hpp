// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <vector>

#include "dpskdiv/fading.hpp"
#include "dpskdiv/types.hpp"

namespace dpskdiv::analysis {

/// Partial-fraction spectrum of the combined decision statistic:
/// lambda_i = (|rho_i| gamma_i)^2 / ((1+gamma_i)^2 - (|rho_i| gamma_i)^2),
/// G_i = prod_{j != i} lambda_i / (lambda_i - lambda_j) (sum to 1),
/// A_i = ((1+gamma_i) / (|rho_i| gamma_i))^2 == 1 + 1/lambda_i.
struct SpectralParams {
    Arr lambdas;
    Arr partial_weights;
    Arr a_terms;
};

/// Per-bit and average bit error probabilities for 8-DPSK with the optimum
/// combining detector.
struct EightDpskBep {
    double p_j1 = 0.0;
    double p_j2 = 0.0;
    double p_j3 = 0.0;
    double p_avg = 0.0;
};

/// Branch quantities the integral route uses independently of SpectralParams:
/// w'_i = (1/N_i) (|rho_i| gamma_i)^2 / ((1+gamma_i)((1+gamma_i)^2 - (|rho_i| gamma_i)^2)).
struct OracleInput {
    double w_prime = 0.0;
    double noise_psd = 0.0;
    double snr = 0.0;
};

/// Throws degenerate_spectrum_error when two lambdas are closer than
/// 1e-9 * max lambda (the partial-fraction expansion has a pole there);
/// jitter the branch SNRs to lift the degeneracy.
SpectralParams spectral_params(const std::vector<fading::BranchStatistics>& stats);

std::vector<OracleInput> oracle_inputs(const std::vector<fading::BranchStatistics>& stats);

/// First-bit BEP: quarter-sum over the four conditioning symbols of the
/// half-plane error term with cos^2 factors cos^2(m pi/4 - 3 pi/8).
double bep_j1(const SpectralParams& params);

/// Second-bit BEP; its cos^2 multiset coincides with bep_j1's, so the two are
/// bit-identical by construction.
double bep_j2(const SpectralParams& params);

/// Third-bit BEP, Marcum-Q-derived closed form. NOTE: this expression (and the
/// integral bep_j3_oracle it simplifies) is kept for reference but underpredicts
/// the simulated third-bit error rate; bep_j3_orthant gives the value that
/// link-level simulation reproduces. See the analysis notes in the README.
double bep_j3_closed(const SpectralParams& params);

/// Third-bit BEP by direct numerical averaging of the Marcum-Q conditional
/// expression over the hyperexponential mixture of the combined branch power;
/// adaptive quadrature at 1e-8 relative tolerance. Agrees with bep_j3_closed
/// to ~1e-12; shares its defect (see bep_j3_closed).
double bep_j3_oracle(const SpectralParams& params, const std::vector<OracleInput>& inputs);

/// Third-bit BEP by averaging the factorized conditional error probability
/// P(XY > 0) = Phi(a)Phi(b) + Phi(-a)Phi(-b) of the two independent Gaussian
/// decision components over the same mixture. This is the value Monte Carlo
/// simulation confirms.
double bep_j3_orthant(const SpectralParams& params);

/// Assembles the closed-form per-bit set and their average
/// P = (P_j1 + P_j2 + P_j3)/3.
EightDpskBep bep_average(const SpectralParams& params);

}  // namespace dpskdiv::analysis
