// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <utility>

#include "dpskdiv/rng.hpp"
#include "dpskdiv/types.hpp"

namespace dpskdiv::fading {

/// Non-isotropic scattering model: kappa controls the width of the angle of
/// arrival of scatter components (kappa = 0 recovers Jakes isotropic
/// scattering), fd_t is the normalized Doppler spread f_d * T.
struct DopplerModel {
    double kappa = 0.0;
    double fd_t = 0.0;
};

/// Symbol-interval covariances of the in-phase/quadrature fading sequences:
/// c0 = C(0) > 0, c_l = C(l), d_l = D(l), with c_l^2 + d_l^2 <= c0^2.
struct LagCovariance {
    double c0 = 1.0;
    double c_l = 0.0;
    double d_l = 0.0;
};

/// Per-branch channel statistics the receiver is assumed to know a priori.
struct BranchStatistics {
    double noise_psd = 1.0;         // N_i
    double snr = 0.0;               // gamma_i, mean received SNR per symbol
    double rho_mag = 0.0;           // |rho_i|
    double rho_phase = 0.0;         // angle(rho_i), radians in (-pi, pi]
    double energy_per_symbol = 1.0; // E_s
};

enum class RhoMode { direct, integrated };

/// Normalized complex covariance of the fading gain at lag tau (in units of
/// the symbol time T). Returns exactly 1 at tau = 0 and a real J0 value for
/// kappa = 0 (symmetric-spectrum limit).
Complex correlation_coefficient(const DopplerModel& model, double tau_over_T);

/// C(l) and D(l) as double integrals of the continuous covariances over two
/// symbol intervals, by tensor-product Gauss-Legendre quadrature with
/// quad_points nodes per axis (>= 8). R(0) is scaled to c0_continuous.
LagCovariance symbol_covariance(const DopplerModel& model, int lag, double c0_continuous,
                                int quad_points);

/// 4x4 covariance of [a(k), a(k-l), b(k), b(k-l)].
Matrix4 covariance_matrix(const LagCovariance& cov);

/// Draws a jointly complex Gaussian fading pair (c(k-1), c(k)) with
/// E|c|^2 = 2*c0 and E[c(k) conj(c(k-1))] = 2*c0*rho, via the conditional
/// construction: c(k) = rho*c(k-1) + innovation of variance 2*c0*(1-|rho|^2).
std::pair<Complex, Complex> sample_fading_pair(const BranchStatistics& stats, double c0,
                                               rng::Splitmix64& rng);

/// Builds BranchStatistics from the physical branch parameters. rho comes from
/// the correlation model at tau = T (direct) or from the lag-1 symbol
/// covariance (integrated); snr = 2*es*C(0)/noise_psd.
BranchStatistics branch_statistics(const DopplerModel& model, double es, double noise_psd,
                                   double c0, RhoMode mode, int quad_points = 64);

}  // namespace dpskdiv::fading
