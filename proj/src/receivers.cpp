// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/receivers.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dpskdiv::rx {

ReceiverKind receiver_from_number(int n) {
    switch (n) {
        case 17: return ReceiverKind::OptimumAsymInid;
        case 18: return ReceiverKind::OptimumSymInid;
        case 19: return ReceiverKind::OptimumAsymIid;
        case 20: return ReceiverKind::ProductDetector;
        default: throw std::invalid_argument("receiver: expected 17, 18, 19 or 20");
    }
}

int receiver_number(ReceiverKind k) { return static_cast<int>(k); }

Vec weights(const std::vector<fading::BranchStatistics>& stats) {
    Vec w(static_cast<Eigen::Index>(stats.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const auto& s = stats[static_cast<std::size_t>(i)];
        const double rg = s.rho_mag * s.snr;
        // (1+g)^2 - (|rho| g)^2 in factored form: the difference of squares
        // cancels catastrophically for |rho| -> 1 at large g; g - |rho| g must
        // be formed before the +1
        const double den = (1.0 + (s.snr - rg)) * (1.0 + s.snr + rg);
        w[i] = (1.0 / s.noise_psd) * rg / den;
    }
    return w;
}

Complex combine(const DecisionInput& input, ReceiverKind kind) {
    const Eigen::Index n = input.r_k.size();
    if (input.r_km1.size() != n || input.weights.size() != n || input.rho_phases.size() != n)
        throw std::invalid_argument("combine: mismatched branch list lengths");
    if (n < 1) throw std::invalid_argument("combine: need at least one branch");

    Complex z(0.0, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        double coeff = 1.0, phase = 0.0;
        switch (kind) {
            case ReceiverKind::OptimumAsymInid:
                coeff = input.weights[i];
                phase = input.rho_phases[i];
                break;
            case ReceiverKind::OptimumSymInid:
                coeff = input.weights[i];
                break;
            case ReceiverKind::OptimumAsymIid:
                // assumes a common rho phase; branch 0's value is used when the
                // detector is applied (mismatched) to non-identical branches
                phase = input.rho_phases[0];
                break;
            case ReceiverKind::ProductDetector:
                break;
        }
        z += coeff * input.r_k[i] * std::conj(input.r_km1[i]) * std::polar(1.0, -phase);
    }
    return z;
}

Decision decide(Complex z, int m_ary) {
    if (m_ary != 2 && m_ary != 4 && m_ary != 8)
        throw std::invalid_argument("decide: M must be 2, 4 or 8");

    Decision d;
    double best = -std::numeric_limits<double>::infinity();
    int best_count = 0;
    for (int m = 0; m < m_ary; ++m) {
        const double lam =
            (std::polar(1.0, -2.0 * std::numbers::pi * m / m_ary) * z).real();
        if (lam > best) {
            best = lam;
            d.index = m;
            best_count = 1;
        } else if (lam == best) {
            ++best_count;
        }
    }
    d.tie = best_count > 1 || z == Complex(0.0, 0.0);
    return d;
}

}  // namespace dpskdiv::rx
