// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <stdexcept>
#include <string>

namespace dpskdiv {

/// Bad or inconsistent run configuration (CLI exit code 2).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at runtime, e.g. quadrature non-convergence (CLI exit code 3).
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Two spectral poles closer than the separation threshold; the partial-fraction
/// expansion has a pole there. Callers may jitter the branch SNRs and retry.
class degenerate_spectrum_error : public numerical_error {
  public:
    explicit degenerate_spectrum_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace dpskdiv
