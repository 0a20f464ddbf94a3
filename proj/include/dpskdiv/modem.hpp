// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <span>
#include <vector>

#include "dpskdiv/types.hpp"

namespace dpskdiv::modem {

/// Gray bits <-> phase-increment index for MDPSK, M in {2, 4, 8}. Index m
/// carries the phase increment 2*pi*m/M; adjacent indices differ in one bit.
class GrayMap {
  public:
    explicit GrayMap(int m_ary);

    int m_ary() const { return m_ary_; }
    int bits_per_symbol() const { return bits_; }

    /// Bit tuple (MSB first, j1 j2 j3 for M=8) -> phase-increment index.
    int encode(std::span<const int> bits) const;

    /// Phase-increment index -> bit tuple.
    std::vector<int> decode(int m) const;

    /// Packed Gray label of index m (bit bits_per_symbol()-1 is j1). The
    /// Monte Carlo path compares labels directly instead of materializing
    /// tuples.
    unsigned label(int m) const;

  private:
    int m_ary_;
    int bits_;
};

/// Phase increment 2*pi*m/M carried by index m.
double phase_increment(int m, int m_ary);

/// Matched-filter output statistic: sqrt(es) e^{j phase} fading + noise.
Complex synthesize_received(double es, double phase, Complex fading, Complex noise);

}  // namespace dpskdiv::modem
