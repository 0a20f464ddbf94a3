// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <functional>
#include <utility>

#include "dpskdiv/types.hpp"

namespace dpskdiv::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence. Exact for polynomials of degree 2n-1.
std::pair<Arr, Arr> gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7, K15) with recursive bisection. Stops when the
/// summed Kronrod error estimate meets abs_tol + rel_tol * |integral|.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_depth = 48);

}  // namespace dpskdiv::quadrature
