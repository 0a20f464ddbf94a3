// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dpskdiv/errors.hpp"
#include "dpskdiv/quadrature.hpp"
#include "dpskdiv/specfun.hpp"

namespace dpskdiv::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// cos^2(pi/8) and cos^2(3pi/8) by half-angle identities. Every conditioning
// angle in the j1/j2 sums folds onto one of these two values; using shared
// constants (and a canonical summation order) makes P_j1 == P_j2 bit-exact.
const double kCos2Near = 0.25 * (2.0 + kSqrt2);
const double kCos2Far = 0.25 * (2.0 - kSqrt2);

// (1/4) sum over the four conditioning symbols of
// sum_i (G_i/2) [1 - sqrt(c / (c + 1/lambda_i))].
double half_plane_bep(const SpectralParams& p, std::array<double, 4> cos2) {
    std::sort(cos2.begin(), cos2.end());  // canonical order, see above
    double acc = 0.0;
    for (const double c : cos2) {
        for (Eigen::Index i = 0; i < p.lambdas.size(); ++i) {
            const double ratio = c / (c + 1.0 / p.lambdas[i]);
            acc += 0.5 * p.partial_weights[i] * (1.0 - std::sqrt(ratio));
        }
    }
    return 0.25 * acc;
}

// Exponentially scaled I0(x) e^{-x} for real x >= 0; asymptotic expansion
// beyond the bessel_i0 domain (needed because the mixture average reaches
// arguments in the thousands).
double i0e(double x) {
    if (x <= specfun::kBesselArgMax) return specfun::bessel_i0(Complex(x, 0.0)).real() * std::exp(-x);
    double s = 1.0, t = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double num = 2.0 * k - 1.0;
        t *= num * num / (8.0 * k * x);
        s += t;
    }
    return s / std::sqrt(2.0 * kPi * x);
}

// The four j3 conditioning symbols l in {0,3,4,7}; theta_l = l pi/2 - pi/4.
constexpr std::array<int, 4> kJ3Symbols = {0, 3, 4, 7};

double theta_l(int l) { return l * kPi / 2.0 - kPi / 4.0; }

struct Mixture {
    Arr scales;   // hyperexponential scales
    Arr weights;  // partial-fraction weights G_i
    double density(double g) const {
        double p = 0.0;
        for (Eigen::Index i = 0; i < scales.size(); ++i)
            p += weights[i] / scales[i] * std::exp(-g / scales[i]);
        return p;
    }
    double upper_cutoff() const {
        // every mixture tail below 1e-14
        return std::log(1e14) * scales.maxCoeff();
    }
};

double average_over_mixture(const Mixture& mix, const std::function<double(double)>& cond,
                            const char* what) {
    const auto integrand = [&](double g) { return cond(g) * mix.density(g); };
    const auto r = quadrature::integrate_adaptive(integrand, 0.0, mix.upper_cutoff(), 1e-8, 1e-14);
    if (!r.converged) {
        std::ostringstream os;
        os << what << ": quadrature did not converge, achieved error estimate "
           << r.error_estimate;
        throw numerical_error(os.str());
    }
    return r.value;
}

}  // namespace

SpectralParams spectral_params(const std::vector<fading::BranchStatistics>& stats) {
    const auto n = static_cast<Eigen::Index>(stats.size());
    if (n < 1) throw std::invalid_argument("spectral_params: need at least one branch");

    SpectralParams p;
    p.lambdas.resize(n);
    p.partial_weights.resize(n);
    p.a_terms.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = stats[static_cast<std::size_t>(i)];
        if (!(s.rho_mag > 0.0) || !(s.snr > 0.0))
            throw std::invalid_argument("spectral_params: requires |rho_i| > 0 and gamma_i > 0");
        const double rg = s.rho_mag * s.snr;
        const double one_g = 1.0 + s.snr;
        // factored difference of squares, with gamma - |rho| gamma formed
        // before the +1; stable as |rho| gamma -> 1 + gamma
        p.lambdas[i] = rg * rg / ((1.0 + (s.snr - rg)) * (one_g + rg));
        p.a_terms[i] = (one_g / rg) * (one_g / rg);
    }

    const double sep = 1e-9 * p.lambdas.maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(p.lambdas[i] - p.lambdas[j]) <= sep) {
                std::ostringstream os;
                os << "spectral_params: lambdas " << i << " and " << j
                   << " are degenerate (" << p.lambdas[i] << " vs " << p.lambdas[j]
                   << "); jitter the branch SNRs to separate the poles";
                throw degenerate_spectrum_error(os.str());
            }
        }
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        double g = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) g *= p.lambdas[i] / (p.lambdas[i] - p.lambdas[j]);
        }
        p.partial_weights[i] = g;
    }
    return p;
}

std::vector<OracleInput> oracle_inputs(const std::vector<fading::BranchStatistics>& stats) {
    std::vector<OracleInput> out;
    out.reserve(stats.size());
    for (const auto& s : stats) {
        const double rg = s.rho_mag * s.snr;
        const double one_g = 1.0 + s.snr;
        OracleInput in;
        in.noise_psd = s.noise_psd;
        in.snr = s.snr;
        in.w_prime = (1.0 / s.noise_psd) * rg * rg /
                     (one_g * (1.0 + (s.snr - rg)) * (one_g + rg));
        out.push_back(in);
    }
    return out;
}

double bep_j1(const SpectralParams& params) {
    // symbols m = 0..3 against the 3pi/8 half-plane boundary:
    // cos^2(m pi/4 - 3 pi/8) = {far, near, near, far}
    return half_plane_bep(params, {kCos2Far, kCos2Near, kCos2Near, kCos2Far});
}

double bep_j2(const SpectralParams& params) {
    // symbols n = 0,1,6,7 against the -pi/8 boundary:
    // cos^2(n pi/4 + pi/8) = {near, far, far, near}
    return half_plane_bep(params, {kCos2Near, kCos2Far, kCos2Far, kCos2Near});
}

double bep_j3_closed(const SpectralParams& params) {
    // cos^2(theta_l) == 1/2 for all four symbols; evaluate each anyway and
    // check they agree, as a guard against angle transcription slips.
    std::array<double, 4> conds{};
    for (std::size_t t = 0; t < kJ3Symbols.size(); ++t) {
        const double th = theta_l(kJ3Symbols[t]);
        const double c2 = std::cos(th) * std::cos(th);
        const double cabs = std::abs(std::cos(th));
        double sum = 0.0;
        for (Eigen::Index i = 0; i < params.lambdas.size(); ++i) {
            const double a = params.a_terms[i];
            const double root = std::sqrt(a * a - c2);
            const double bracket =
                (1.0 / root) / (1.0 - cabs * (kSqrt2 - 1.0) / (a + root)) - 0.5 / root;
            sum += params.partial_weights[i] / params.lambdas[i] * bracket;
        }
        conds[t] = sum;
    }
    const auto [lo, hi] = std::minmax_element(conds.begin(), conds.end());
    if (*hi - *lo > 1e-12 * std::max(1.0, std::abs(*hi)))
        throw std::logic_error("bep_j3_closed: the four conditional terms diverged");
    return 0.25 * (conds[0] + conds[1] + conds[2] + conds[3]);
}

double bep_j3_oracle(const SpectralParams& params, const std::vector<OracleInput>& inputs) {
    if (static_cast<Eigen::Index>(inputs.size()) != params.lambdas.size())
        throw std::invalid_argument("bep_j3_oracle: branch count mismatch");

    // Mixture scales w'_i N_i (1 + gamma_i), from the oracle inputs rather than
    // the lambdas, so this route stays independent of the closed form's algebra.
    Mixture mix;
    mix.weights = params.partial_weights;
    mix.scales.resize(params.lambdas.size());
    for (Eigen::Index i = 0; i < mix.scales.size(); ++i) {
        const auto& in = inputs[static_cast<std::size_t>(i)];
        mix.scales[i] = in.w_prime * in.noise_psd * (1.0 + in.snr);
    }

    const auto cond = [](double g) {
        double acc = 0.0;
        for (const int l : kJ3Symbols) {
            const double th = theta_l(l);
            const double s = std::sin(th);
            const double cabs = std::abs(std::cos(th));
            const double q =
                specfun::marcum_q1(std::sqrt(g * (1.0 - s)), std::sqrt(g * (1.0 + s)));
            acc += 1.0 - q + 0.5 * i0e(g * cabs) * std::exp(-g * (1.0 - cabs));
        }
        return 0.25 * acc;
    };
    return average_over_mixture(mix, cond, "bep_j3_oracle");
}

double bep_j3_orthant(const SpectralParams& params) {
    Mixture mix;
    mix.weights = params.partial_weights;
    mix.scales = params.lambdas;

    // Given combined power g, the rotated decision components are independent
    // Gaussians with means cos(th) g, sin(th) g and common variance g/2, so the
    // product-positive probability factorizes into normal CDFs. The four
    // symbols share |cos| = cos(pi/8), |sin| = sin(pi/8) with opposite signs.
    const double ca = std::cos(kPi / 8.0);
    const double sa = std::sin(kPi / 8.0);
    const auto phi = [](double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); };
    const auto cond = [&](double g) {
        const double a = ca * std::sqrt(2.0 * g);
        const double b = sa * std::sqrt(2.0 * g);
        return phi(a) * phi(-b) + phi(-a) * phi(b);
    };
    return average_over_mixture(mix, cond, "bep_j3_orthant");
}

EightDpskBep bep_average(const SpectralParams& params) {
    EightDpskBep r;
    r.p_j1 = bep_j1(params);
    r.p_j2 = bep_j2(params);
    r.p_j3 = bep_j3_closed(params);
    r.p_avg = (r.p_j1 + r.p_j2 + r.p_j3) / 3.0;
    return r;
}

}  // namespace dpskdiv::analysis
