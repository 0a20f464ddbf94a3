// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#include "dpskdiv/cli.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpskdiv/analysis.hpp"
#include "dpskdiv/errors.hpp"

namespace dpskdiv::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw config_error("config: empty element in list for '" + key + "'");
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw config_error("config: bad number '" + item + "' for '" + key + "'");
        }
    }
    if (out.empty()) throw config_error("config: empty list for '" + key + "'");
    return out;
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: bad integer '" + value + "' for '" + key + "'");
    }
}

std::string list_to_string(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s;
}

fading::RhoMode rho_mode_from(const std::string& s) {
    if (s == "direct") return fading::RhoMode::direct;
    if (s == "integrated") return fading::RhoMode::integrated;
    throw config_error("config: rho mode must be 'direct' or 'integrated', got '" + s + "'");
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%FT%TZ");
    return os.str();
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::rho: return "rho";
        case Mode::analyze: return "analyze";
        case Mode::simulate: return "simulate";
        case Mode::validate: return "validate";
    }
    return "?";
}

std::string format_double(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

KeyValues parse_config_text(std::istream& is) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not of the form key = value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("config: cannot open '" + path + "'");
    return parse_config_text(is);
}

KeyValues parse_manifest_comments(std::istream& is) {
    KeyValues kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("# ", 0) != 0) continue;
        const std::string body = line.substr(2);
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;  // banner lines
        kv.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    return kv;
}

mc::SimConfig default_sim_config() {
    mc::SimConfig cfg;
    cfg.m_ary = 8;
    cfg.kind = rx::ReceiverKind::OptimumAsymInid;
    cfg.branches = {
        {{3.0, 0.03}, 1.0, 0.3},
        {{3.0, 0.05}, 1.0, 0.7},
    };
    cfg.snr_per_bit_db = {0, 5, 10, 15, 20, 25, 30, 35};
    cfg.trials = 1'000'000;
    cfg.seed = 1;
    cfg.rho_mode = fading::RhoMode::direct;
    cfg.quad_points = 64;
    cfg.threads = 0;
    return cfg;
}

mc::SimConfig resolve_sim_config(const KeyValues& kv, const Overrides& ov) {
    mc::SimConfig cfg = default_sim_config();

    std::vector<double> kappa, fd_t, split, noise;
    for (const auto& [key, value] : kv) {
        if (key == "m_ary") {
            cfg.m_ary = static_cast<int>(parse_int(key, value));
        } else if (key == "receiver") {
            try {
                cfg.kind = rx::receiver_from_number(static_cast<int>(parse_int(key, value)));
            } catch (const std::invalid_argument& e) {
                throw config_error(std::string("config: ") + e.what());
            }
        } else if (key == "kappa") {
            kappa = parse_double_list(key, value);
        } else if (key == "fd_t") {
            fd_t = parse_double_list(key, value);
        } else if (key == "energy_split") {
            split = parse_double_list(key, value);
        } else if (key == "noise_psd") {
            noise = parse_double_list(key, value);
        } else if (key == "snr_db") {
            cfg.snr_per_bit_db = parse_double_list(key, value);
        } else if (key == "trials") {
            cfg.trials = parse_int(key, value);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "rho_mode") {
            cfg.rho_mode = rho_mode_from(value);
        } else if (key == "quad_points") {
            cfg.quad_points = static_cast<int>(parse_int(key, value));
        } else if (key == "threads") {
            cfg.threads = static_cast<int>(parse_int(key, value));
        } else if (key == "mode" || key == "tool") {
            // accepted so an emitted manifest parses back; set by the subcommand
        } else {
            throw config_error("config: unknown key '" + key + "'");
        }
    }

    if (!kappa.empty() || !fd_t.empty() || !split.empty() || !noise.empty()) {
        std::size_t n = std::max({kappa.size(), fd_t.size(), split.size(), noise.size()});
        const auto broadcast = [&](std::vector<double>& v, double dflt) {
            if (v.empty()) v.assign(n, dflt);
            if (v.size() == 1 && n > 1) v.assign(n, v[0]);
            if (v.size() != n)
                throw config_error("config: branch lists must have matching lengths");
        };
        broadcast(kappa, 3.0);
        broadcast(fd_t, 0.03);
        broadcast(noise, 1.0);
        if (split.empty()) {
            split.assign(n, 1.0 / static_cast<double>(n));
        } else if (split.size() != n) {
            throw config_error("config: energy_split length must match the branch count");
        }
        cfg.branches.clear();
        for (std::size_t i = 0; i < n; ++i)
            cfg.branches.push_back({{kappa[i], fd_t[i]}, noise[i], split[i]});
    }

    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.receiver) {
        try {
            cfg.kind = rx::receiver_from_number(*ov.receiver);
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config: ") + e.what());
        }
    }
    if (ov.rho_mode) cfg.rho_mode = rho_mode_from(*ov.rho_mode);

    try {
        mc::validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return cfg;
}

std::vector<std::string> manifest_comments(const RunManifest& man) {
    const auto& c = man.sim;
    std::vector<double> kappa, fd_t, split, noise;
    for (const auto& b : c.branches) {
        kappa.push_back(b.doppler.kappa);
        fd_t.push_back(b.doppler.fd_t);
        split.push_back(b.energy_fraction);
        noise.push_back(b.noise_psd);
    }
    std::vector<std::string> lines;
    lines.push_back("# tool = dpskdiv " + man.version);
    lines.push_back(std::string("# mode = ") + mode_name(man.mode));
    lines.push_back("# m_ary = " + std::to_string(c.m_ary));
    lines.push_back("# receiver = " + std::to_string(rx::receiver_number(c.kind)));
    lines.push_back("# kappa = " + list_to_string(kappa));
    lines.push_back("# fd_t = " + list_to_string(fd_t));
    lines.push_back("# energy_split = " + list_to_string(split));
    lines.push_back("# noise_psd = " + list_to_string(noise));
    lines.push_back("# snr_db = " + list_to_string(c.snr_per_bit_db));
    lines.push_back("# trials = " + std::to_string(c.trials));
    lines.push_back("# seed = " + std::to_string(c.seed));
    lines.push_back(std::string("# rho_mode = ") +
                    (c.rho_mode == fading::RhoMode::direct ? "direct" : "integrated"));
    lines.push_back("# quad_points = " + std::to_string(c.quad_points));
    lines.push_back("# threads = " + std::to_string(c.threads));
    return lines;
}

namespace {

void write_manifest(const RunManifest& man, std::ostream& os) {
    for (const auto& line : manifest_comments(man)) os << line << "\n";
}

struct AnalyticRow {
    analysis::EightDpskBep bep;
    double j3_oracle = 0.0;
};

AnalyticRow analytic_point(const mc::SimConfig& cfg, int idx) {
    const auto stats = mc::resolve_branches(cfg, idx);
    const auto params = analysis::spectral_params(stats);
    AnalyticRow row;
    row.bep = analysis::bep_average(params);
    row.j3_oracle = analysis::bep_j3_oracle(params, analysis::oracle_inputs(stats));
    return row;
}

void require_8dpsk(const mc::SimConfig& cfg, const char* what) {
    if (cfg.m_ary != 8)
        throw config_error(std::string(what) + ": the closed forms cover 8-DPSK only "
                                               "(set m_ary = 8)");
}

}  // namespace

void cmd_rho(const RunManifest& man, std::ostream& os) {
    write_manifest(man, os);
    os << "branch,kappa,fd_t,mode,re,im,mag,phase_rad\n";
    int idx = 1;
    for (const auto& b : man.sim.branches) {
        for (const auto mode : {fading::RhoMode::direct, fading::RhoMode::integrated}) {
            const auto s = fading::branch_statistics(b.doppler, 1.0, 1.0, 0.5, mode,
                                                     man.sim.quad_points);
            const Complex rho = std::polar(s.rho_mag, s.rho_phase);
            os << idx << ',' << format_double(b.doppler.kappa) << ','
               << format_double(b.doppler.fd_t) << ','
               << (mode == fading::RhoMode::direct ? "direct" : "integrated") << ','
               << format_double(rho.real()) << ',' << format_double(rho.imag()) << ','
               << format_double(s.rho_mag) << ',' << format_double(s.rho_phase) << "\n";
        }
        ++idx;
    }
}

void cmd_analyze(const RunManifest& man, std::ostream& os) {
    require_8dpsk(man.sim, "analyze");
    write_manifest(man, os);
    os << "snr_per_bit_db,p_j1,p_j2,p_j3,p_avg,p_j3_oracle\n";
    for (std::size_t i = 0; i < man.sim.snr_per_bit_db.size(); ++i) {
        const auto row = analytic_point(man.sim, static_cast<int>(i));
        os << format_double(man.sim.snr_per_bit_db[i]) << ',' << format_double(row.bep.p_j1)
           << ',' << format_double(row.bep.p_j2) << ',' << format_double(row.bep.p_j3) << ','
           << format_double(row.bep.p_avg) << ',' << format_double(row.j3_oracle) << "\n";
    }
}

namespace {

void write_sim_columns(std::ostream& os, const mc::PointEstimates& est) {
    for (int b = 0; b < 3; ++b) {
        if (b < est.bits_per_symbol) {
            const auto& e = est.per_bit[static_cast<std::size_t>(b)];
            os << ',' << format_double(e.p_hat) << ',' << format_double(e.std_err);
        } else {
            os << ",,";
        }
    }
    os << ',' << format_double(est.average.p_hat) << ',' << format_double(est.average.std_err);
}

}  // namespace

void cmd_simulate(const RunManifest& man, std::ostream& os) {
    write_manifest(man, os);
    os << "snr_per_bit_db,receiver,p_j1_hat,se_j1,p_j2_hat,se_j2,p_j3_hat,se_j3,"
          "p_avg_hat,se_avg,trials,seed\n";
    for (std::size_t i = 0; i < man.sim.snr_per_bit_db.size(); ++i) {
        const auto tally = mc::run_point(man.sim, static_cast<int>(i));
        const auto est = mc::estimate(tally);
        os << format_double(man.sim.snr_per_bit_db[i]) << ','
           << rx::receiver_number(man.sim.kind);
        write_sim_columns(os, est);
        os << ',' << tally.trials << ',' << man.sim.seed << "\n";
    }
}

void cmd_validate(const RunManifest& man, std::ostream& os) {
    require_8dpsk(man.sim, "validate");
    write_manifest(man, os);
    os << "snr_per_bit_db,receiver,p_j1,p_j2,p_j3,p_avg,p_j3_oracle,"
          "p_j1_hat,se_j1,p_j2_hat,se_j2,p_j3_hat,se_j3,p_avg_hat,se_avg,"
          "z_j1,z_j2,z_j3,trials,seed\n";
    for (std::size_t i = 0; i < man.sim.snr_per_bit_db.size(); ++i) {
        const auto row = analytic_point(man.sim, static_cast<int>(i));
        const auto tally = mc::run_point(man.sim, static_cast<int>(i));
        const auto est = mc::estimate(tally);

        const std::array<double, 3> analytic{row.bep.p_j1, row.bep.p_j2, row.bep.p_j3};
        std::array<double, 3> z{};
        for (std::size_t b = 0; b < 3; ++b) {
            const double sigma = std::sqrt(analytic[b] * (1.0 - analytic[b]) /
                                           static_cast<double>(tally.trials));
            z[b] = sigma > 0.0
                       ? std::abs(analytic[b] - est.per_bit[b].p_hat) / sigma
                       : 0.0;
        }

        os << format_double(man.sim.snr_per_bit_db[i]) << ','
           << rx::receiver_number(man.sim.kind) << ',' << format_double(row.bep.p_j1) << ','
           << format_double(row.bep.p_j2) << ',' << format_double(row.bep.p_j3) << ','
           << format_double(row.bep.p_avg) << ',' << format_double(row.j3_oracle);
        write_sim_columns(os, est);
        os << ',' << format_double(z[0]) << ',' << format_double(z[1]) << ','
           << format_double(z[2]) << ',' << tally.trials << ',' << man.sim.seed << "\n";
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"optimum differential diversity reception of MDPSK over i.n.i.d. "
                 "Rayleigh branches with asymmetric Doppler spectrum"};
    app.require_subcommand(1);

    struct SubOpts {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::optional<std::int64_t> trials;
        std::optional<int> receiver;
        std::optional<std::string> rho_mode;
    };
    std::array<SubOpts, 4> opts;
    std::array<CLI::App*, 4> subs{};

    const std::array<std::pair<Mode, const char*>, 4> modes{{
        {Mode::rho, "print the per-branch fading correlation coefficients"},
        {Mode::analyze, "closed-form per-bit BEP sweep (CSV)"},
        {Mode::simulate, "Monte Carlo per-bit BEP sweep (CSV)"},
        {Mode::validate, "analytic and simulated sweeps side by side (CSV)"},
    }};
    for (std::size_t i = 0; i < modes.size(); ++i) {
        auto* sub = app.add_subcommand(mode_name(modes[i].first), modes[i].second);
        auto& o = opts[i];
        sub->add_option("--config", o.config, "key = value configuration file");
        sub->add_option("--out", o.out, "output path (default: stdout)");
        sub->add_option("--seed", o.seed, "master seed override");
        sub->add_option("--trials", o.trials, "trials per grid point override");
        sub->add_option("--receiver", o.receiver, "detector override: 17|18|19|20");
        sub->add_option("--mode", o.rho_mode,
                        "correlation mode override: direct|integrated");
        subs[i] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::size_t chosen = 0;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) chosen = i;
    const auto& o = opts[chosen];

    try {
        KeyValues kv;
        if (!o.config.empty()) kv = parse_config_file(o.config);
        Overrides ov;
        ov.seed = o.seed;
        ov.trials = o.trials;
        ov.receiver = o.receiver;
        ov.rho_mode = o.rho_mode;

        RunManifest man;
        man.sim = resolve_sim_config(kv, ov);
        man.mode = modes[chosen].first;
        man.out_path = o.out;
        man.timestamp = now_iso8601();

        std::cerr << "dpskdiv " << man.version << ' ' << mode_name(man.mode) << " started "
                  << man.timestamp << "\n";

        std::ofstream file;
        if (!man.out_path.empty()) {
            file.open(man.out_path, std::ios::binary);
            if (!file) throw config_error("cannot open output file '" + man.out_path + "'");
        }
        std::ostream& os = man.out_path.empty() ? std::cout : file;

        switch (man.mode) {
            case Mode::rho: cmd_rho(man, os); break;
            case Mode::analyze: cmd_analyze(man, os); break;
            case Mode::simulate: cmd_simulate(man, os); break;
            case Mode::validate: cmd_validate(man, os); break;
        }
        os.flush();
        return 0;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace dpskdiv::cli
