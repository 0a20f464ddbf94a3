// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpskdiv::quadrature {

std::pair<Arr, Arr> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Arr x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule (standard
// QUADPACK constants, symmetric half listed).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double value;
    double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fl = f(c - h * kXgk[j]);
        const double fr = f(c + h * kXgk[j]);
        kron += kWgk[j] * (fl + fr);
        if (j % 2 == 1) gauss += kWg[j / 2] * (fl + fr);
    }
    const double value = kron * h;
    const double err = std::abs((kron - gauss) * h);
    return {value, err};
}

void refine(const std::function<double(double)>& f, double a, double b, const Panel& p,
            double rel_tol, double abs_tol, int depth, int max_depth, double& total,
            double& total_err) {
    const double local_tol = std::max(abs_tol, rel_tol * std::abs(p.value));
    if (p.err <= local_tol || depth >= max_depth) {
        total += p.value;
        total_err += p.err;
        return;
    }
    const double c = 0.5 * (a + b);
    const Panel left = gk15(f, a, c);
    const Panel right = gk15(f, c, b);
    refine(f, a, c, left, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, total, total_err);
    refine(f, c, b, right, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, total, total_err);
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_depth) {
    AdaptiveResult r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    const Panel p = gk15(f, a, b);
    refine(f, a, b, p, rel_tol, abs_tol, 0, max_depth, r.value, r.error_estimate);
    r.converged = r.error_estimate <= std::max(abs_tol, rel_tol * std::abs(r.value)) * 8.0;
    return r;
}

}  // namespace dpskdiv::quadrature
