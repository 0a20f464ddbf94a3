// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <Eigen/Core>
#include <complex>

namespace dpskdiv {

using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Arr = Eigen::ArrayXd;
using Matrix4 = Eigen::Matrix4d;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dpskdiv
