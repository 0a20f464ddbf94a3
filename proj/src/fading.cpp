// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/fading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dpskdiv/quadrature.hpp"
#include "dpskdiv/specfun.hpp"

namespace dpskdiv::fading {

namespace {

void check_model(const DopplerModel& m) {
    if (!(m.kappa >= 0.0) || !std::isfinite(m.kappa))
        throw std::invalid_argument("DopplerModel: kappa must be finite and >= 0");
    if (!(m.fd_t >= 0.0) || !std::isfinite(m.fd_t))
        throw std::invalid_argument("DopplerModel: fd_t must be finite and >= 0");
}

}  // namespace

Complex correlation_coefficient(const DopplerModel& model, double tau_over_T) {
    check_model(model);
    if (!std::isfinite(tau_over_T))
        throw std::invalid_argument("correlation_coefficient: tau must be finite");

    const double u = model.fd_t * tau_over_T;  // f_d * tau
    if (u == 0.0) return {1.0, 0.0};           // zero-lag normalization (or static channel)
    if (model.kappa == 0.0) {
        // Jakes limit: I0(j 2 pi f_d tau) = J0(2 pi f_d tau), identically real.
        return {specfun::bessel_j0(2.0 * std::numbers::pi * u), 0.0};
    }
    const double k2 = model.kappa * model.kappa;
    const Complex w(k2 - 4.0 * std::numbers::pi * std::numbers::pi * u * u,
                    4.0 * std::numbers::pi * model.kappa * u);
    const Complex num = specfun::bessel_i0(std::sqrt(w));  // principal branch
    const Complex den = specfun::bessel_i0(Complex(model.kappa, 0.0));
    return num / den;
}

LagCovariance symbol_covariance(const DopplerModel& model, int lag, double c0_continuous,
                                int quad_points) {
    check_model(model);
    if (lag < 0) throw std::invalid_argument("symbol_covariance: lag must be >= 0");
    if (!(c0_continuous > 0.0)) throw std::invalid_argument("symbol_covariance: c0 must be > 0");
    if (quad_points < 8) throw std::invalid_argument("symbol_covariance: quad_points must be >= 8");

    const auto [xi, wi] = quadrature::gauss_legendre(quad_points);
    Arr x = 0.5 * (xi + 1.0);  // map [-1,1] -> [0,1]
    Arr w = 0.5 * wi;

    // C(l)/R(0) = int int Re phi(l + x - y) dx dy; D(l)/R(0) = -int int Im phi.
    const auto integrate_lag = [&](int l) {
        double cr = 0.0, ci = 0.0;
        for (int i = 0; i < quad_points; ++i) {
            for (int j = 0; j < quad_points; ++j) {
                const Complex phi = correlation_coefficient(model, l + x[i] - x[j]);
                cr += w[i] * w[j] * phi.real();
                ci += w[i] * w[j] * phi.imag();
            }
        }
        return Complex(cr, ci);
    };

    const Complex p0 = integrate_lag(0);
    LagCovariance cov;
    cov.c0 = c0_continuous * p0.real();
    if (lag == 0) {
        cov.c_l = cov.c0;
        cov.d_l = 0.0;  // D(0) = E[a(k)b(k)] vanishes identically
    } else {
        const Complex pl = integrate_lag(lag);
        cov.c_l = c0_continuous * pl.real();
        cov.d_l = -c0_continuous * pl.imag();
    }
    return cov;
}

Matrix4 covariance_matrix(const LagCovariance& cov) {
    if (!(cov.c0 > 0.0)) throw std::invalid_argument("covariance_matrix: C(0) must be > 0");
    if (cov.c_l * cov.c_l + cov.d_l * cov.d_l > cov.c0 * cov.c0 * (1.0 + 1e-12))
        throw std::invalid_argument("covariance_matrix: C(l)^2 + D(l)^2 exceeds C(0)^2");
    Matrix4 g;
    const double c0 = cov.c0, cl = cov.c_l, dl = cov.d_l;
    g << c0, cl, 0.0, dl,
         cl, c0, -dl, 0.0,
         0.0, -dl, c0, cl,
         dl, 0.0, cl, c0;
    return g;
}

std::pair<Complex, Complex> sample_fading_pair(const BranchStatistics& stats, double c0,
                                               rng::Splitmix64& rng) {
    if (!(c0 > 0.0)) throw std::invalid_argument("sample_fading_pair: c0 must be > 0");
    if (stats.rho_mag < 0.0 || stats.rho_mag > 1.0)
        throw std::invalid_argument("sample_fading_pair: |rho| must lie in [0,1]");

    const auto [g1, g2] = rng.normal_pair();
    const Complex c_prev = std::sqrt(c0) * Complex(g1, g2);

    const Complex rho = std::polar(stats.rho_mag, stats.rho_phase);
    const double innov_sd = std::sqrt(c0 * (1.0 - stats.rho_mag * stats.rho_mag));
    const auto [g3, g4] = rng.normal_pair();
    const Complex c_cur = rho * c_prev + innov_sd * Complex(g3, g4);
    return {c_prev, c_cur};
}

BranchStatistics branch_statistics(const DopplerModel& model, double es, double noise_psd,
                                   double c0, RhoMode mode, int quad_points) {
    if (!(es > 0.0) || !(noise_psd > 0.0) || !(c0 > 0.0))
        throw std::invalid_argument("branch_statistics: es, noise_psd, c0 must be > 0");

    Complex rho;
    double c0_symbol = c0;
    if (mode == RhoMode::direct) {
        rho = correlation_coefficient(model, 1.0);
    } else {
        const LagCovariance cov = symbol_covariance(model, 1, c0, quad_points);
        rho = Complex(cov.c_l, -cov.d_l) / cov.c0;
        c0_symbol = cov.c0;  // matched-filter output power, slightly below c0
    }

    BranchStatistics s;
    s.noise_psd = noise_psd;
    s.energy_per_symbol = es;
    s.snr = 2.0 * es * c0_symbol / noise_psd;
    s.rho_mag = std::min(std::abs(rho), 1.0);
    s.rho_phase = std::arg(rho);
    return s;
}

}  // namespace dpskdiv::fading
