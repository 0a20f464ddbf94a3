// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "dpskdiv/fading.hpp"
#include "dpskdiv/specfun.hpp"

using dpskdiv::Complex;
using dpskdiv::Matrix4;
namespace fad = dpskdiv::fading;

TEST_CASE("correlation_coefficient zero lag and paper operating points") {
    const fad::DopplerModel m1{3.0, 0.03};
    CHECK(fad::correlation_coefficient(m1, 0.0) == Complex(1.0, 0.0));

    const Complex r1 = fad::correlation_coefficient(m1, 1.0);
    CHECK(std::abs(r1.real() - 0.9871) < 1e-3);
    CHECK(std::abs(r1.imag() - 0.1519) < 1e-3);
    // frozen at full precision against an independent high-precision evaluation
    CHECK(std::abs(r1.real() - 0.98706348163959942) < 1e-12);
    CHECK(std::abs(r1.imag() - 0.15194678981903666) < 1e-12);

    const Complex r2 = fad::correlation_coefficient({3.0, 0.05}, 1.0);
    CHECK(std::abs(r2.real() - 0.9642) < 1e-3);
    CHECK(std::abs(r2.imag() - 0.2511) < 1e-3);
}

TEST_CASE("correlation_coefficient Jakes limit is exactly real") {
    const fad::DopplerModel jakes{0.0, 0.05};
    for (double tau = -5.0; tau <= 5.0; tau += 0.25) {
        const Complex r = fad::correlation_coefficient(jakes, tau);
        CHECK(r.imag() == 0.0);
        const double arg = 2.0 * 3.14159265358979323846 * (0.05 * tau);
        CHECK(r.real() == dpskdiv::specfun::bessel_j0(arg));
    }
}

TEST_CASE("correlation magnitude bounded by one on the model grid") {
    for (double kappa : {0.0, 1.0, 3.0, 10.0}) {
        for (double fdt : {0.01, 0.03, 0.05, 0.1}) {
            for (double tau = 0.0; tau <= 5.0; tau += 0.5) {
                const Complex r = fad::correlation_coefficient({kappa, fdt}, tau);
                CHECK(std::abs(r) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("correlation conjugate symmetry in the lag") {
    const fad::DopplerModel m{3.0, 0.05};
    for (double tau : {0.25, 1.0, 2.75}) {
        const Complex fwd = fad::correlation_coefficient(m, tau);
        const Complex bwd = fad::correlation_coefficient(m, -tau);
        CHECK(bwd == std::conj(fwd));
    }
}

TEST_CASE("symbol_covariance static channel and zero lag") {
    const auto cov_static = fad::symbol_covariance({3.0, 0.0}, 4, 0.5, 32);
    CHECK(cov_static.c_l == cov_static.c0);
    CHECK(cov_static.d_l == 0.0);

    const auto cov0 = fad::symbol_covariance({3.0, 0.03}, 0, 0.5, 32);
    CHECK(cov0.d_l == 0.0);
    CHECK(cov0.c0 > 0.0);
    CHECK(cov0.c_l == cov0.c0);

    CHECK_THROWS_AS((void)fad::symbol_covariance({3.0, 0.03}, 1, 0.5, 4), std::invalid_argument);
}

TEST_CASE("symbol_covariance matches an independent double integral") {
    // frozen from scipy.integrate.dblquad at epsabs 1e-13, c0 = 1
    const auto cov = fad::symbol_covariance({3.0, 0.03}, 1, 1.0, 64);
    CHECK(std::abs(cov.c0 - 0.9978406917576795) < 1e-9);
    CHECK(std::abs(cov.c_l - 0.9849363182620994) < 1e-9);
    CHECK(std::abs(cov.d_l - (-0.151582556568035)) < 1e-9);

    const auto cov5 = fad::symbol_covariance({3.0, 0.05}, 1, 1.0, 64);
    CHECK(std::abs(cov5.c0 - 0.9940125205520313) < 1e-9);
    CHECK(std::abs(cov5.c_l - 0.9584828655237569) < 1e-9);
    CHECK(std::abs(cov5.d_l - (-0.24941763202644185)) < 1e-9);
}

TEST_CASE("integrated rho stays close to the direct evaluation") {
    const fad::DopplerModel m{3.0, 0.03};
    const auto cov = fad::symbol_covariance(m, 1, 0.5, 64);
    const Complex rho_int = Complex(cov.c_l, -cov.d_l) / cov.c0;
    const Complex rho_dir = fad::correlation_coefficient(m, 1.0);
    CHECK(std::abs(rho_int.real() - rho_dir.real()) < 5e-3);
    CHECK(std::abs(rho_int.imag() - rho_dir.imag()) < 5e-3);
}

TEST_CASE("covariance_matrix structure") {
    const Matrix4 id = fad::covariance_matrix({1.0, 0.0, 0.0});
    CHECK(id.isApprox(Matrix4::Identity(), 1e-15));

    const Matrix4 g = fad::covariance_matrix({1.0, 0.9, 0.1});
    CHECK(g(0, 3) == 0.1);
    CHECK(g(1, 2) == -0.1);
    CHECK(g(3, 0) == 0.1);
    CHECK(g(2, 1) == -0.1);
    CHECK(g(0, 2) == 0.0);
    CHECK((g - g.transpose()).norm() == 0.0);

    CHECK_THROWS_AS((void)fad::covariance_matrix({1.0, 0.9, 0.5}), std::invalid_argument);
}

TEST_CASE("covariance_matrix is positive semidefinite on valid inputs") {
    for (double c0 : {0.5, 1.0, 2.0}) {
        for (double mag : {0.0, 0.5, 0.9, 1.0}) {
            for (double ang : {0.0, 0.7, 2.2}) {
                const fad::LagCovariance cov{c0, c0 * mag * std::cos(ang),
                                             c0 * mag * std::sin(ang)};
                const Matrix4 g = fad::covariance_matrix(cov);
                Eigen::SelfAdjointEigenSolver<Matrix4> es(g);
                CHECK(es.eigenvalues().minCoeff() >= -1e-12);
                // spectrum is c0 +- |corr| (each twice)
                const double r = std::hypot(cov.c_l, cov.d_l);
                CHECK(std::abs(es.eigenvalues().maxCoeff() - (c0 + r)) < 1e-12);
            }
        }
    }
}

namespace {

fad::BranchStatistics stats_with_rho(double mag, double phase) {
    fad::BranchStatistics s;
    s.noise_psd = 1.0;
    s.snr = 10.0;
    s.rho_mag = mag;
    s.rho_phase = phase;
    s.energy_per_symbol = 1.0;
    return s;
}

}  // namespace

TEST_CASE("sample_fading_pair fully correlated limit") {
    dpskdiv::rng::Splitmix64 rng(123);
    const auto s = stats_with_rho(1.0, 0.0);
    for (int i = 0; i < 1000; ++i) {
        const auto [prev, cur] = fad::sample_fading_pair(s, 0.5, rng);
        CHECK(cur == prev);
    }
}

TEST_CASE("sample_fading_pair moment match on a rho grid") {
    const double c0 = 0.5;
    const int n = 1'000'000;
    const struct {
        double mag, phase;
    } grid[] = {{0.0, 0.0}, {0.3, 0.5}, {0.7, -1.0}, {0.9871, 0.1527}, {1.0, 0.0}};

    for (const auto& [mag, phase] : grid) {
        dpskdiv::rng::Splitmix64 rng(0xfeedULL + static_cast<std::uint64_t>(mag * 1000));
        const auto s = stats_with_rho(mag, phase);
        double pow_prev = 0.0, pow_cur = 0.0;
        Complex cross(0.0, 0.0);
        double cross_re_sq = 0.0, cross_im_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto [prev, cur] = fad::sample_fading_pair(s, c0, rng);
            pow_prev += std::norm(prev);
            pow_cur += std::norm(cur);
            const Complex p = cur * std::conj(prev);
            cross += p;
            cross_re_sq += p.real() * p.real();
            cross_im_sq += p.imag() * p.imag();
        }
        pow_prev /= n;
        pow_cur /= n;
        cross /= static_cast<double>(n);

        // E|c|^2 = 2 c0 on both sides; E[c(k) conj(c(k-1))] = 2 c0 rho
        const double se_pow = 2.0 * c0 / std::sqrt(static_cast<double>(n));  // |c|^2 ~ Exp, sd = 2c0
        CHECK(std::abs(pow_prev - 2.0 * c0) < 3.0 * se_pow);
        CHECK(std::abs(pow_cur - 2.0 * c0) < 3.0 * se_pow);

        const Complex rho = std::polar(mag, phase);
        const double se_re = std::sqrt((cross_re_sq / n - std::pow(cross.real(), 2)) / n);
        const double se_im = std::sqrt((cross_im_sq / n - std::pow(cross.imag(), 2)) / n);
        CHECK(std::abs(cross.real() - 2.0 * c0 * rho.real()) < 3.0 * std::max(se_re, 1e-9));
        CHECK(std::abs(cross.imag() - 2.0 * c0 * rho.imag()) < 3.0 * std::max(se_im, 1e-9));

        if (mag == 0.0) {
            CHECK(std::abs(cross) / (2.0 * c0) < 5e-3);  // decorrelated branches
        }
    }
}

TEST_CASE("branch_statistics direct and integrated") {
    const auto s_static = fad::branch_statistics({3.0, 0.0}, 1.0, 0.1, 0.5, fad::RhoMode::direct);
    CHECK(s_static.rho_mag == 1.0);
    CHECK(s_static.rho_phase == 0.0);
    CHECK(std::abs(s_static.snr - 10.0) < 1e-12);

    const auto s1 = fad::branch_statistics({3.0, 0.03}, 1.0, 1.0, 0.5, fad::RhoMode::direct);
    CHECK(std::abs(s1.rho_mag - 0.9987) < 2e-4);
    CHECK(std::abs(s1.rho_phase - 0.1526) < 2e-4);
    CHECK(std::abs(s1.rho_mag - 0.99869021409183656) < 1e-12);

    // integrated mode: matched-filter smoothing lowers C(0) slightly
    const auto s2 = fad::branch_statistics({3.0, 0.03}, 1.0, 1.0, 0.5, fad::RhoMode::integrated);
    CHECK(s2.snr < 1.0);
    CHECK(std::abs(s2.snr - 0.9978406917576795) < 1e-8);
    CHECK(std::abs(s2.rho_mag - s1.rho_mag) < 5e-3);

    CHECK_THROWS_AS(
        (void)fad::branch_statistics({3.0, 0.03}, 0.0, 1.0, 0.5, fad::RhoMode::direct),
        std::invalid_argument);
}
