// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "dpskdiv/modem.hpp"
#include "dpskdiv/rng.hpp"

namespace dpskdiv::mc {

void BitErrorTally::merge(const BitErrorTally& other) {
    for (std::size_t i = 0; i < bit_errors.size(); ++i) bit_errors[i] += other.bit_errors[i];
    symbol_errors += other.symbol_errors;
    trials += other.trials;
    ties += other.ties;
    bits_per_symbol = other.bits_per_symbol;
}

void validate(const SimConfig& config) {
    if (config.m_ary != 2 && config.m_ary != 4 && config.m_ary != 8)
        throw std::invalid_argument("SimConfig: M must be 2, 4 or 8");
    if (config.branches.empty()) throw std::invalid_argument("SimConfig: no branches");
    if (config.snr_per_bit_db.empty()) throw std::invalid_argument("SimConfig: empty SNR grid");
    if (config.trials < 10'000)
        throw std::invalid_argument("SimConfig: trials must be >= 1e4 per grid point");
    double fsum = 0.0;
    for (const auto& b : config.branches) {
        if (!(b.energy_fraction > 0.0))
            throw std::invalid_argument("SimConfig: energy fractions must be positive");
        if (!(b.noise_psd > 0.0))
            throw std::invalid_argument("SimConfig: noise PSDs must be positive");
        fsum += b.energy_fraction;
    }
    if (std::abs(fsum - 1.0) > 1e-9)
        throw std::invalid_argument("SimConfig: energy fractions must sum to 1");
}

namespace {

int bits_for(int m_ary) { return m_ary == 2 ? 1 : (m_ary == 4 ? 2 : 3); }

// Everything fixed for one grid point.
struct ResolvedPoint {
    std::vector<fading::BranchStatistics> stats;
    std::vector<double> c0;  // per-branch fading power per quadrature
    Vec w;
    Vec phases;
    int m_ary = 8;
    int nbits = 3;
};

ResolvedPoint resolve(const SimConfig& config, int grid_index) {
    if (grid_index < 0 || grid_index >= static_cast<int>(config.snr_per_bit_db.size()))
        throw std::out_of_range("run_point: grid index out of range");

    const double gamma_b_total =
        std::pow(10.0, config.snr_per_bit_db[static_cast<std::size_t>(grid_index)] / 10.0);
    const double bits = bits_for(config.m_ary);

    ResolvedPoint p;
    p.m_ary = config.m_ary;
    p.nbits = bits_for(config.m_ary);
    const double es = 1.0;
    for (const auto& b : config.branches) {
        const double gamma_i = bits * b.energy_fraction * gamma_b_total;
        // gamma = 2 es c0 / N  ->  branch fading power carries the energy split
        const double c0 = gamma_i * b.noise_psd / (2.0 * es);
        p.stats.push_back(fading::branch_statistics(b.doppler, es, b.noise_psd, c0,
                                                    config.rho_mode, config.quad_points));
        p.c0.push_back(c0);
    }
    p.w = rx::weights(p.stats);
    p.phases.resize(static_cast<Eigen::Index>(p.stats.size()));
    for (Eigen::Index i = 0; i < p.phases.size(); ++i)
        p.phases[i] = p.stats[static_cast<std::size_t>(i)].rho_phase;
    return p;
}

// One differential symbol through every requested detector. Draw order per
// trial: symbol index, then per branch the fading pair, the k-1 noise and the
// k noise. Changing it would change every seeded result.
void run_trial(const ResolvedPoint& p, const modem::GrayMap& map,
               std::span<const rx::ReceiverKind> kinds, rng::Splitmix64& stream,
               rx::DecisionInput& in, std::span<BitErrorTally> tallies,
               std::span<int> decisions_out) {
    const int m = stream.uniform_pow2_index(p.m_ary);
    const double dphi = modem::phase_increment(m, p.m_ary);
    const double es = 1.0;

    for (std::size_t i = 0; i < p.stats.size(); ++i) {
        const auto& s = p.stats[i];
        const auto [c_prev, c_cur] = fading::sample_fading_pair(s, p.c0[i], stream);
        const Complex n_prev = stream.complex_normal(s.noise_psd);
        const Complex n_cur = stream.complex_normal(s.noise_psd);
        const auto idx = static_cast<Eigen::Index>(i);
        in.r_km1[idx] = modem::synthesize_received(es, 0.0, c_prev, n_prev);
        in.r_k[idx] = modem::synthesize_received(es, dphi, c_cur, n_cur);
    }

    const unsigned sent = map.label(m);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        const Complex z = rx::combine(in, kinds[k]);
        const auto d = rx::decide(z, p.m_ary);
        if (!decisions_out.empty()) decisions_out[k] = d.index;
        if (tallies.empty()) continue;
        auto& t = tallies[k];
        ++t.trials;
        if (d.tie) ++t.ties;
        const unsigned diff = sent ^ map.label(d.index);
        if (diff != 0) ++t.symbol_errors;
        for (int b = 0; b < p.nbits; ++b) {
            if (diff & (1u << (p.nbits - 1 - b))) ++t.bit_errors[static_cast<std::size_t>(b)];
        }
    }
}

}  // namespace

std::vector<fading::BranchStatistics> resolve_branches(const SimConfig& config, int grid_index) {
    validate(config);
    return resolve(config, grid_index).stats;
}

std::vector<BitErrorTally> run_point_kinds(const SimConfig& config, int grid_index,
                                           std::span<const rx::ReceiverKind> kinds) {
    validate(config);
    const ResolvedPoint p = resolve(config, grid_index);
    const modem::GrayMap map(config.m_ary);
    const auto nb = static_cast<Eigen::Index>(p.stats.size());

    int nthreads = config.threads > 0 ? config.threads
                                      : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    const std::int64_t chunk = (config.trials + nthreads - 1) / nthreads;

    std::vector<std::vector<BitErrorTally>> partial(
        static_cast<std::size_t>(nthreads),
        std::vector<BitErrorTally>(kinds.size()));
    for (auto& tl : partial)
        for (auto& t : tl) t.bits_per_symbol = p.nbits;

    const auto worker = [&](int tid) {
        const std::int64_t lo = tid * chunk;
        const std::int64_t hi = std::min<std::int64_t>(config.trials, lo + chunk);
        rx::DecisionInput in;
        in.r_k.resize(nb);
        in.r_km1.resize(nb);
        in.weights = p.w;
        in.rho_phases = p.phases;
        auto& tallies = partial[static_cast<std::size_t>(tid)];
        for (std::int64_t t = lo; t < hi; ++t) {
            auto stream = rng::trial_stream(config.seed, static_cast<std::uint64_t>(grid_index),
                                            static_cast<std::uint64_t>(t));
            run_trial(p, map, kinds, stream, in, tallies, {});
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    std::vector<BitErrorTally> out(kinds.size());
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        out[k].bits_per_symbol = p.nbits;
        for (const auto& tl : partial) out[k].merge(tl[k]);
    }
    return out;
}

BitErrorTally run_point(const SimConfig& config, int grid_index) {
    const std::array<rx::ReceiverKind, 1> kinds{config.kind};
    return run_point_kinds(config, grid_index, kinds)[0];
}

std::vector<int> trial_decisions(const SimConfig& config, int grid_index, std::int64_t trial,
                                 std::span<const rx::ReceiverKind> kinds) {
    validate(config);
    const ResolvedPoint p = resolve(config, grid_index);
    const modem::GrayMap map(config.m_ary);
    rx::DecisionInput in;
    in.r_k.resize(static_cast<Eigen::Index>(p.stats.size()));
    in.r_km1.resize(static_cast<Eigen::Index>(p.stats.size()));
    in.weights = p.w;
    in.rho_phases = p.phases;
    std::vector<int> decisions(kinds.size());
    auto stream = rng::trial_stream(config.seed, static_cast<std::uint64_t>(grid_index),
                                    static_cast<std::uint64_t>(trial));
    run_trial(p, map, kinds, stream, in, {}, decisions);
    return decisions;
}

PointEstimates estimate(const BitErrorTally& tally) {
    if (tally.trials <= 0) throw std::invalid_argument("estimate: empty tally");
    const auto n = static_cast<double>(tally.trials);

    const auto make = [](double errors, double n_obs) {
        EstimateWithCI e;
        e.trials = static_cast<std::int64_t>(n_obs);
        e.p_hat = errors / n_obs;
        e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n_obs);
        if (errors == 0.0) e.rule_of_three = 3.0 / n_obs;
        return e;
    };

    PointEstimates out;
    out.bits_per_symbol = tally.bits_per_symbol;
    double total_errors = 0.0;
    for (int b = 0; b < tally.bits_per_symbol; ++b) {
        const auto errs = static_cast<double>(tally.bit_errors[static_cast<std::size_t>(b)]);
        out.per_bit[static_cast<std::size_t>(b)] = make(errs, n);
        total_errors += errs;
    }
    // average BEP = mean of the per-bit estimates = errors over n*bits bit uses
    out.average = make(total_errors, n * tally.bits_per_symbol);
    return out;
}

}  // namespace dpskdiv::mc
