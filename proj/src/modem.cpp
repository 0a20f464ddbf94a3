// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/modem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpskdiv::modem {

GrayMap::GrayMap(int m_ary) : m_ary_(m_ary) {
    switch (m_ary) {
        case 2: bits_ = 1; break;
        case 4: bits_ = 2; break;
        case 8: bits_ = 3; break;
        default: throw std::invalid_argument("GrayMap: M must be 2, 4 or 8");
    }
}

unsigned GrayMap::label(int m) const {
    if (m < 0 || m >= m_ary_) throw std::out_of_range("GrayMap: index out of range");
    const unsigned u = static_cast<unsigned>(m);
    return u ^ (u >> 1);  // binary reflected Gray code
}

int GrayMap::encode(std::span<const int> bits) const {
    if (static_cast<int>(bits.size()) != bits_)
        throw std::invalid_argument("GrayMap::encode: wrong tuple length");
    unsigned g = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("GrayMap::encode: bits must be 0/1");
        g = (g << 1) | static_cast<unsigned>(b);
    }
    // invert m ^ (m >> 1); for <= 3 bits two shifts suffice
    unsigned m = g ^ (g >> 1);
    m ^= m >> 2;
    return static_cast<int>(m);
}

std::vector<int> GrayMap::decode(int m) const {
    const unsigned g = label(m);
    std::vector<int> bits(static_cast<std::size_t>(bits_));
    for (int i = 0; i < bits_; ++i) bits[static_cast<std::size_t>(i)] = (g >> (bits_ - 1 - i)) & 1u;
    return bits;
}

double phase_increment(int m, int m_ary) {
    if (m < 0 || m >= m_ary) throw std::out_of_range("phase_increment: index out of range");
    return 2.0 * std::numbers::pi * m / m_ary;
}

Complex synthesize_received(double es, double phase, Complex fading, Complex noise) {
    if (!(es > 0.0)) throw std::invalid_argument("synthesize_received: es must be > 0");
    return std::sqrt(es) * std::polar(1.0, phase) * fading + noise;
}

}  // namespace dpskdiv::modem
