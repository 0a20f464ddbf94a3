// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpskdiv::specfun {

namespace {

constexpr double kSeriesCut = 10.0;  // series below, trapezoid above
constexpr int kTrapezoidPoints = 160;

// Neumaier-compensated accumulator, applied per component.
struct Compensated {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

Complex i0_series(Complex z) {
    const Complex q = 0.25 * z * z;
    Compensated re, im;
    re.add(1.0);
    Complex term(1.0, 0.0);
    for (int k = 1; k <= 200; ++k) {
        term *= q / static_cast<double>(k * k);
        re.add(term.real());
        im.add(term.imag());
        const double s = std::hypot(re.value(), im.value());
        if (std::abs(term) < 1e-17 * s) break;
    }
    return {re.value(), im.value()};
}

// (1/2pi) \int_0^{2pi} exp(z cos t) dt sampled on N equispaced points. The
// aliasing error is 2 I_N(z), which is ~1e-80 or below for |z| <= 30, N = 160.
Complex i0_trapezoid(Complex z) {
    const int n = kTrapezoidPoints;
    Compensated re, im;
    const auto add = [&](Complex v) {
        re.add(v.real());
        im.add(v.imag());
    };
    add(std::exp(z));
    add(std::exp(-z));
    for (int k = 1; k < n / 2; ++k) {
        const double c = std::cos(2.0 * std::numbers::pi * k / n);
        add(2.0 * std::exp(z * c));
    }
    return Complex(re.value(), im.value()) / static_cast<double>(n);
}

}  // namespace

Complex bessel_i0(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("bessel_i0: non-finite argument");
    const double mag = std::abs(z);
    if (mag > kBesselArgMax) throw std::domain_error("bessel_i0: |z| > 30 unsupported");
    if (mag <= kSeriesCut) return i0_series(z);
    return i0_trapezoid(z);
}

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_j0: non-finite argument");
    if (std::abs(x) > kBesselArgMax) throw std::domain_error("bessel_j0: |x| > 30 unsupported");
    // J0(x) = (1/2pi) \int_0^{2pi} cos(x sin t) dt on the same periodized grid.
    const int n = kTrapezoidPoints;
    Compensated acc;
    acc.add(2.0);  // t = 0 and t = pi, where sin t == 0
    for (int k = 1; k < n / 2; ++k) {
        acc.add(2.0 * std::cos(x * std::sin(2.0 * std::numbers::pi * k / n)));
    }
    return acc.value() / n;
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("marcum_q1: arguments must be finite and non-negative");
    if (b == 0.0) return 1.0;
    const double x = 0.5 * a * a;  // Poisson rate of the a-branch
    const double y = 0.5 * b * b;  // Erlang argument
    if (x == 0.0) return std::exp(-y);

    // Q1 = sum_k pois(k; x) Q(k+1, y) with Q(k+1, y) = e^-y sum_{m<=k} y^m/m!.
    // Sum whichever of Q1, 1-Q1 is the smaller series, outward from the
    // Poisson mode k0; all terms positive, log-started via lgamma.
    const bool q_side = y >= x + 1.0;
    const long k0 = static_cast<long>(x);
    const double dk0 = static_cast<double>(k0);

    double delta0 = std::exp(-y + dk0 * std::log(y) - std::lgamma(dk0 + 1.0));
    double q_base, p_base;
    if (dk0 < y) {
        // m <= k0 lies in the increasing flank of e^-y y^m/m!: sum it downward.
        double s = 0.0, d = delta0;
        for (long m = k0; m >= 0; --m) {
            s += d;
            if (d <= s * 1e-19) break;
            d *= static_cast<double>(m) / y;
        }
        q_base = s;
        p_base = 1.0 - s;
    } else {
        double s = 0.0, d = delta0 * y / (dk0 + 1.0);
        for (long m = k0 + 1; d > 0.0; ++m) {
            s += d;
            if (d <= s * 1e-19) break;
            d *= y / (static_cast<double>(m) + 1.0);
        }
        p_base = s;
        q_base = 1.0 - s;
    }

    const double pois0 = std::exp(-x + dk0 * std::log(x) - std::lgamma(dk0 + 1.0));
    double acc = pois0 * (q_side ? q_base : p_base);

    // Upward from the mode.
    {
        double pois = pois0, q = q_base, p = p_base, d = delta0;
        for (long k = k0 + 1;; ++k) {
            pois *= x / static_cast<double>(k);
            d *= y / static_cast<double>(k);
            q += d;
            p = std::max(0.0, p - d);
            acc += pois * (q_side ? q : p);
            if (pois < 1e-19 && static_cast<double>(k) > x) break;
        }
    }
    // Downward from the mode.
    {
        double pois = pois0, q = q_base, p = p_base, d = delta0;
        for (long k = k0; k >= 1; --k) {
            pois *= static_cast<double>(k) / x;
            q = std::max(0.0, q - d);
            p = std::min(1.0, p + d);
            d *= static_cast<double>(k) / y;
            acc += pois * (q_side ? q : p);
            if (pois < 1e-19) break;
        }
    }

    const double result = q_side ? acc : 1.0 - acc;
    return std::min(1.0, std::max(0.0, result));
}

}  // namespace dpskdiv::specfun
