// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include "dpskdiv/types.hpp"

namespace dpskdiv::specfun {

/// Largest argument magnitude accepted by bessel_i0 / bessel_j0.
inline constexpr double kBesselArgMax = 30.0;

/// Modified Bessel function I0 of a complex argument, |z| <= 30.
/// Power series sum_k (z^2/4)^k / (k!)^2 for |z| <= 10; a periodized
/// trapezoid evaluation of (1/2pi) \int exp(z cos t) dt above that, where
/// series cancellation would spoil the last digits. Relative error <= 1e-12
/// on the supported disc. Throws std::domain_error outside it.
Complex bessel_i0(Complex z);

/// Bessel function J0(x) for |x| <= 30, absolute error <= 1e-10 (in practice
/// ~1e-13). Throws std::domain_error outside the range.
double bessel_j0(double x);

/// First-order Marcum Q-function Q1(a, b), a, b >= 0 finite. Canonical
/// Poisson-weighted Erlang-tail series summed outward from the Poisson mode;
/// absolute error ~1e-14. Throws std::domain_error on negative or non-finite
/// input.
double marcum_q1(double a, double b);

}  // namespace dpskdiv::specfun
