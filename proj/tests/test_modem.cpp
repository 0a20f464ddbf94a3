// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include <doctest.h>

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dpskdiv/modem.hpp"

using dpskdiv::Complex;
namespace md = dpskdiv::modem;

TEST_CASE("8-DPSK Gray table") {
    const md::GrayMap map(8);
    const std::array<std::vector<int>, 8> want = {{
        {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}, {1, 0, 0},
    }};
    for (int m = 0; m < 8; ++m) {
        CHECK(map.decode(m) == want[static_cast<std::size_t>(m)]);
        CHECK(map.encode(want[static_cast<std::size_t>(m)]) == m);
    }
    // the associations called out in the derivation
    CHECK(map.encode(std::array{0, 0, 0}) == 0);
    CHECK(map.encode(std::array{1, 0, 1}) == 6);
    CHECK(map.encode(std::array{1, 1, 0}) == 4);
    CHECK(map.decode(7) == std::vector<int>{1, 0, 0});
}

TEST_CASE("2- and 4-DPSK Gray tables") {
    const md::GrayMap m2(2);
    CHECK(m2.decode(0) == std::vector<int>{0});
    CHECK(m2.decode(1) == std::vector<int>{1});

    const md::GrayMap m4(4);
    CHECK(m4.decode(0) == std::vector<int>{0, 0});
    CHECK(m4.decode(1) == std::vector<int>{0, 1});
    CHECK(m4.decode(2) == std::vector<int>{1, 1});
    CHECK(m4.decode(3) == std::vector<int>{1, 0});
}

TEST_CASE("Gray property and round trips") {
    for (int m_ary : {2, 4, 8}) {
        const md::GrayMap map(m_ary);
        for (int m = 0; m < m_ary; ++m) {
            CHECK(map.encode(map.decode(m)) == m);
            const unsigned a = map.label(m);
            const unsigned b = map.label((m + 1) % m_ary);
            CHECK(std::popcount(a ^ b) == 1);
        }
    }
    CHECK_THROWS_AS((void)md::GrayMap(16), std::invalid_argument);
    const md::GrayMap map(8);
    CHECK_THROWS_AS((void)map.encode(std::array{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)map.decode(8), std::out_of_range);
}

TEST_CASE("synthesize_received") {
    CHECK(md::synthesize_received(1.0, 0.0, {1.0, 0.0}, {0.0, 0.0}) == Complex(1.0, 0.0));

    const Complex r2 = md::synthesize_received(4.0, std::numbers::pi, {1.0, 0.0}, {0.0, 0.0});
    CHECK(std::abs(r2 - Complex(-2.0, 0.0)) < 1e-14);

    // sqrt(1) e^{j pi/4} * 0.5j = 0.5 e^{j 3pi/4}
    const Complex r3 =
        md::synthesize_received(1.0, std::numbers::pi / 4.0, {0.0, 0.5}, {0.0, 0.0});
    CHECK(std::abs(r3 - 0.5 * std::polar(1.0, 3.0 * std::numbers::pi / 4.0)) < 1e-15);

    const Complex r4 = md::synthesize_received(2.0, 0.3, {0.2, -0.7}, {0.05, 0.01});
    CHECK(std::abs(r4 - (std::sqrt(2.0) * std::polar(1.0, 0.3) * Complex(0.2, -0.7) +
                         Complex(0.05, 0.01))) == 0.0);

    CHECK_THROWS_AS((void)md::synthesize_received(0.0, 0.0, {1.0, 0.0}, {0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("differential phase accumulation") {
    const md::GrayMap map(8);
    const int symbols[] = {3, 1, 7, 0, 5, 5, 2, 6, 4};
    double phase = 0.0;
    double direct = 0.0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int m : symbols) {
        phase = std::fmod(phase + md::phase_increment(m, 8), two_pi);
        direct += 2.0 * std::numbers::pi * m / 8.0;
    }
    CHECK(std::abs(phase - std::fmod(direct, two_pi)) < 1e-12);
    CHECK_THROWS_AS((void)md::phase_increment(8, 8), std::out_of_range);
}
