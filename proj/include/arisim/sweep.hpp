// SPDX-License-Identifier: Apache-2.0
//
// arisim: parameter sweeps and the figure-reproduction presets. Each sweep
// row r derives its own seed from (base seed, r), so tables are reproducible
// row by row and independent of execution order.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arisim/analysis.hpp"
#include "arisim/config.hpp"
#include "arisim/montecarlo.hpp"

namespace arisim {

enum class Metric { rate, ber, ee, ptot, gamma_fit };
enum class SweepVariable { p_t_dbm, p_max_dbm, n_elements, d_h_m };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::rate: return "rate";
        case Metric::ber: return "ber";
        case Metric::ee: return "ee";
        case Metric::ptot: return "ptot";
        default: return "gamma_fit";
    }
}

inline const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::p_t_dbm: return "P_t_dBm";
        case SweepVariable::p_max_dbm: return "P_max_dBm";
        case SweepVariable::n_elements: return "N";
        default: return "d_h_m";
    }
}

inline Metric metric_from_string(const std::string& s) {
    if (s == "rate") return Metric::rate;
    if (s == "ber") return Metric::ber;
    if (s == "ee") return Metric::ee;
    if (s == "ptot") return Metric::ptot;
    if (s == "gamma_fit") return Metric::gamma_fit;
    throw std::invalid_argument("unknown metric '" + s + "' (rate|ber|ee|ptot|gamma_fit)");
}

inline SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "P_t_dBm") return SweepVariable::p_t_dbm;
    if (s == "P_max_dBm") return SweepVariable::p_max_dbm;
    if (s == "N") return SweepVariable::n_elements;
    if (s == "d_h_m") return SweepVariable::d_h_m;
    throw std::invalid_argument("unknown sweep variable '" + s +
                                "' (P_t_dBm|P_max_dBm|N|d_h_m)");
}

struct SweepSpec {
    SweepVariable variable{SweepVariable::p_t_dbm};
    std::vector<double> values;
    std::vector<Metric> metrics;
    SystemConfig base{};
};

struct ResultTable {
    using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline void apply_sweep_value(SystemConfig& cfg, SweepVariable var, double value) {
    switch (var) {
        case SweepVariable::p_t_dbm:
            cfg.p_t_w = dbm_to_watt(value);
            break;
        case SweepVariable::p_max_dbm:
            cfg.amp.p_max_w = dbm_to_watt(value);
            break;
        case SweepVariable::n_elements: {
            const double r = std::round(value);
            if (!(std::abs(value - r) < 1e-9) || r < 1.0)
                throw std::invalid_argument("sweep over N requires integer values >= 1");
            cfg.n_elements = static_cast<std::size_t>(r);
            break;
        }
        case SweepVariable::d_h_m:
            cfg.geometry.d_h_m = value;
            break;
    }
}

namespace detail {

inline void log_point(bool enabled, const std::string& msg) {
    if (enabled) std::cerr << "[arisim] " << msg << "\n";
}

}  // namespace detail

/// Runs a single-variable sweep. Row i uses seed derive_stream_seed(seed, i).
/// Columns: the swept variable, then per metric: rate | ber, ber_ci95 | ee |
/// ptot | k, nu. A failing row aborts the sweep naming the offending value.
inline ResultTable run_sweep(const SweepSpec& spec, unsigned threads = 0,
                             std::size_t iters_override = 0, bool log = false) {
    if (spec.values.empty()) throw std::invalid_argument("run_sweep: no sweep values");
    if (spec.metrics.empty()) throw std::invalid_argument("run_sweep: no metrics requested");
    const std::size_t iters = iters_override != 0 ? iters_override : spec.base.n_iterations;

    ResultTable table;
    table.columns.push_back(to_string(spec.variable));
    for (Metric m : spec.metrics) {
        switch (m) {
            case Metric::rate: table.columns.push_back("rate"); break;
            case Metric::ber:
                table.columns.push_back("ber");
                table.columns.push_back("ber_ci95");
                break;
            case Metric::ee: table.columns.push_back("ee"); break;
            case Metric::ptot: table.columns.push_back("ptot"); break;
            case Metric::gamma_fit:
                table.columns.push_back("k");
                table.columns.push_back("nu");
                break;
        }
    }

    for (std::size_t r = 0; r < spec.values.size(); ++r) {
        const double value = spec.values[r];
        const std::uint64_t row_seed = derive_stream_seed(spec.base.seed, r);
        std::vector<ResultTable::Cell> row;
        try {
            SystemConfig cfg = spec.base;
            apply_sweep_value(cfg, spec.variable, value);
            cfg.validate();
            if (spec.variable == SweepVariable::n_elements)
                row.emplace_back(static_cast<std::int64_t>(cfg.n_elements));
            else
                row.emplace_back(value);

            bool stats_ready = false;
            LinkStats stats;
            auto ensure_stats = [&] {
                if (!stats_ready) {
                    stats = simulate_link_stats(cfg, iters, row_seed, threads);
                    stats_ready = true;
                }
            };
            for (Metric m : spec.metrics) {
                switch (m) {
                    case Metric::rate:
                        ensure_stats();
                        row.emplace_back(stats.mean_rate);
                        break;
                    case Metric::ber: {
                        const BerEstimate est = simulate_ber(cfg, row_seed, threads, iters);
                        row.emplace_back(est.ber);
                        row.emplace_back(est.ci95_halfwidth);
                        if (est.low_confidence)
                            detail::log_point(log, std::string("warning: ") +
                                                       to_string(spec.variable) + "=" +
                                                       std::to_string(value) +
                                                       ": fewer than 100 bit errors, BER unreliable");
                        break;
                    }
                    case Metric::ee:
                        ensure_stats();
                        row.emplace_back(stats.mean_ee);
                        break;
                    case Metric::ptot:
                        ensure_stats();
                        row.emplace_back(stats.mean_ptot);
                        break;
                    case Metric::gamma_fit: {
                        const auto samples = simulate_snr_samples(cfg, iters, row_seed, threads);
                        const GammaFit fit = fit_gamma_mle(samples);
                        row.emplace_back(fit.k);
                        row.emplace_back(fit.nu);
                        break;
                    }
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("sweep ") + to_string(spec.variable) + "=" +
                                     std::to_string(value) + ": " + e.what());
        }
        table.rows.push_back(std::move(row));
        detail::log_point(log, std::string(to_string(spec.variable)) + "=" +
                                   std::to_string(value) + " (" + std::to_string(r + 1) + "/" +
                                   std::to_string(spec.values.size()) + ")");
    }
    return table;
}

/// LOS assignment shared by the figure and table presets: the default
/// placement puts the surface 7 m from the Tx (line of sight) and 45 m from
/// the Rx (no line of sight).
inline SystemConfig reference_scenario(SystemConfig base) {
    base.fading.los_mode_h = LosMode::forced_los;
    base.fading.los_mode_g = LosMode::forced_nlos;
    return base;
}

namespace detail {

inline std::vector<double> linspace_step(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

class RowSeeder {
public:
    explicit RowSeeder(std::uint64_t base_seed) : base_(base_seed) {}
    std::uint64_t next() { return derive_stream_seed(base_, row_++); }

private:
    std::uint64_t base_;
    std::uint64_t row_{0};
};

}  // namespace detail

/// BER vs transmit power for several panel sizes at a fixed output cap,
/// with the Gamma-fit theory curve alongside.
inline ResultTable preset_ber_vs_pt(SystemConfig base, double p_max_dbm, std::size_t iters,
                                    unsigned threads, bool log) {
    base = reference_scenario(base);
    base.amp.p_max_w = dbm_to_watt(p_max_dbm);
    base.modulation_order = 2;
    ResultTable t;
    t.columns = {"N", "P_t_dBm", "ber_sim", "ber_theory", "ci95"};
    detail::RowSeeder seeder(base.seed);
    for (std::size_t n : {std::size_t{32}, std::size_t{64}, std::size_t{256}}) {
        for (double pt : detail::linspace_step(-10.0, 30.0, 5.0)) {
            SystemConfig cfg = base;
            cfg.n_elements = n;
            cfg.p_t_w = dbm_to_watt(pt);
            const std::uint64_t seed = seeder.next();
            const BerEstimate est = simulate_ber(cfg, seed, threads, iters);
            const GammaFit fit = fit_gamma_mle(simulate_snr_samples(cfg, iters, seed, threads));
            const double theory = bep(fit.k, fit.nu, cfg.modulation_order);
            t.rows.push_back({static_cast<std::int64_t>(n), pt, est.ber, theory,
                              est.ci95_halfwidth});
            detail::log_point(log, "ber N=" + std::to_string(n) + " P_t=" + std::to_string(pt) +
                                       " dBm");
        }
    }
    return t;
}

/// Achievable rate vs surface placement for the amplifying design (with and
/// without the output-power cap) and the 2N-element passive benchmark.
inline ResultTable preset_rate_vs_placement(SystemConfig base, double d_m, std::size_t iters,
                                            unsigned threads, bool log) {
    base = reference_scenario(base);
    base.geometry.d_m = d_m;
    ResultTable t;
    t.columns = {"design", "N", "d_h_m", "rate", "rate_fixed_gain"};
    detail::RowSeeder seeder(base.seed);
    const double step = d_m / 25.0;
    const auto placements = detail::linspace_step(1.0, d_m - 1.0, step);
    for (std::size_t n : {std::size_t{128}, std::size_t{256}, std::size_t{512}}) {
        for (double dh : placements) {
            SystemConfig cfg = base;
            cfg.n_elements = n;
            cfg.geometry.d_h_m = dh;
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({std::string("active"), static_cast<std::int64_t>(n), dh,
                              s.mean_rate, s.mean_rate_fixed_gain});
        }
        detail::log_point(log, "placement sweep active N=" + std::to_string(n));
    }
    for (std::size_t n : {std::size_t{128}, std::size_t{256}, std::size_t{512}}) {
        for (double dh : placements) {
            SystemConfig cfg = base;
            cfg.mode = LinkDesign::passive;
            cfg.n_elements = n;  // benchmark uses 2N elements
            cfg.geometry.d_h_m = dh;
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({std::string("passive"),
                              static_cast<std::int64_t>(cfg.passive_element_count()), dh,
                              s.mean_rate, std::monostate{}});
        }
        detail::log_point(log, "placement sweep passive 2N=" + std::to_string(2 * n));
    }
    return t;
}

/// Rate vs panel size for two output caps at a fixed transmit power; the
/// mean selected gain is reported alongside.
inline ResultTable preset_rate_vs_n(SystemConfig base, double p_t_dbm, std::size_t iters,
                                    unsigned threads, bool log) {
    base = reference_scenario(base);
    base.p_t_w = dbm_to_watt(p_t_dbm);
    ResultTable t;
    t.columns = {"P_max_dBm", "N", "rate", "g_opt_mean"};
    detail::RowSeeder seeder(base.seed);
    for (double pmax : {10.0, 20.0}) {
        for (double n = 50.0; n <= 500.0 + 1e-9; n += 50.0) {
            SystemConfig cfg = base;
            cfg.amp.p_max_w = dbm_to_watt(pmax);
            cfg.n_elements = static_cast<std::size_t>(n);
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({pmax, static_cast<std::int64_t>(cfg.n_elements), s.mean_rate,
                              s.mean_gopt});
        }
        detail::log_point(log, "rate-vs-N P_max=" + std::to_string(pmax) + " dBm");
    }
    return t;
}

/// Rate vs panel size for (P_t, P_max) combinations; shows the saturation of
/// the rate once the PA output pins at P_max.
inline ResultTable preset_rate_saturation(SystemConfig base, std::size_t iters, unsigned threads,
                                          bool log) {
    base = reference_scenario(base);
    ResultTable t;
    t.columns = {"P_max_dBm", "P_t_dBm", "N", "rate"};
    detail::RowSeeder seeder(base.seed);
    for (double pmax : {10.0, 20.0}) {
        for (double pt : {20.0, 30.0}) {
            for (double n = 10.0; n <= 300.0 + 1e-9; n += 10.0) {
                SystemConfig cfg = base;
                cfg.amp.p_max_w = dbm_to_watt(pmax);
                cfg.p_t_w = dbm_to_watt(pt);
                cfg.n_elements = static_cast<std::size_t>(n);
                const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
                t.rows.push_back({pmax, pt, static_cast<std::int64_t>(cfg.n_elements),
                                  s.mean_rate});
            }
            detail::log_point(log, "saturation P_max=" + std::to_string(pmax) +
                                       " P_t=" + std::to_string(pt));
        }
    }
    return t;
}

/// Energy efficiency vs panel size for several output caps, with the passive
/// benchmark (2N elements) as reference rows.
inline ResultTable preset_ee_vs_n(SystemConfig base, std::size_t iters, unsigned threads,
                                  bool log) {
    base = reference_scenario(base);
    ResultTable t;
    t.columns = {"design", "P_max_dBm", "N", "ee", "rate", "ptot"};
    detail::RowSeeder seeder(base.seed);
    std::vector<double> n_grid;
    for (double n = 32.0; n <= 512.0 + 1e-9; n += 32.0) n_grid.push_back(n);
    for (double pmax : {10.0, 20.0, 50.0}) {
        for (double n : n_grid) {
            SystemConfig cfg = base;
            cfg.amp.p_max_w = dbm_to_watt(pmax);
            cfg.n_elements = static_cast<std::size_t>(n);
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({std::string("active"), pmax, static_cast<std::int64_t>(cfg.n_elements),
                              s.mean_ee, s.mean_rate, s.mean_ptot});
        }
        detail::log_point(log, "ee-vs-N P_max=" + std::to_string(pmax) + " dBm");
    }
    for (double n : n_grid) {
        SystemConfig cfg = base;
        cfg.mode = LinkDesign::passive;
        cfg.n_elements = static_cast<std::size_t>(n);
        const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
        t.rows.push_back({std::string("passive"), std::monostate{},
                          static_cast<std::int64_t>(cfg.n_elements), s.mean_ee, s.mean_rate,
                          s.mean_ptot});
    }
    return t;
}

/// Energy efficiency vs transmit power for several output caps.
inline ResultTable preset_ee_vs_pt(SystemConfig base, std::size_t iters, unsigned threads,
                                   bool log) {
    base = reference_scenario(base);
    ResultTable t;
    t.columns = {"P_max_dBm", "P_t_dBm", "ee", "rate", "ptot"};
    detail::RowSeeder seeder(base.seed);
    for (double pmax : {10.0, 20.0, 50.0}) {
        for (double pt : detail::linspace_step(0.0, 40.0, 2.5)) {
            SystemConfig cfg = base;
            cfg.amp.p_max_w = dbm_to_watt(pmax);
            cfg.p_t_w = dbm_to_watt(pt);
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({pmax, pt, s.mean_ee, s.mean_rate, s.mean_ptot});
        }
        detail::log_point(log, "ee-vs-P_t P_max=" + std::to_string(pmax) + " dBm");
    }
    return t;
}

/// Energy efficiency vs output cap for several transmit powers; once the gain
/// ceiling binds, raising the cap only raises PA consumption.
inline ResultTable preset_ee_vs_pmax(SystemConfig base, std::size_t iters, unsigned threads,
                                     bool log) {
    base = reference_scenario(base);
    ResultTable t;
    t.columns = {"P_t_dBm", "P_max_dBm", "ee", "rate", "ptot"};
    detail::RowSeeder seeder(base.seed);
    for (double pt : {10.0, 20.0, 30.0}) {
        for (double pmax : detail::linspace_step(0.0, 50.0, 2.5)) {
            SystemConfig cfg = base;
            cfg.p_t_w = dbm_to_watt(pt);
            cfg.amp.p_max_w = dbm_to_watt(pmax);
            const LinkStats s = simulate_link_stats(cfg, iters, seeder.next(), threads);
            t.rows.push_back({pt, pmax, s.mean_ee, s.mean_rate, s.mean_ptot});
        }
        detail::log_point(log, "ee-vs-P_max P_t=" + std::to_string(pt) + " dBm");
    }
    return t;
}

/// Gamma fits of the optimized SNR over the (N, P_max, P_t) grid.
inline ResultTable preset_gamma_fit_table(SystemConfig base, std::size_t iters, unsigned threads,
                                          bool log) {
    base = reference_scenario(base);
    ResultTable t;
    t.columns = {"N", "P_max_dBm", "P_t_dBm", "k", "nu"};
    detail::RowSeeder seeder(base.seed);
    for (std::size_t n : {std::size_t{64}, std::size_t{256}}) {
        for (double pmax : {10.0, 20.0}) {
            for (double pt : detail::linspace_step(-10.0, 30.0, 5.0)) {
                SystemConfig cfg = base;
                cfg.n_elements = n;
                cfg.amp.p_max_w = dbm_to_watt(pmax);
                cfg.p_t_w = dbm_to_watt(pt);
                const auto samples = simulate_snr_samples(cfg, iters, seeder.next(), threads);
                const GammaFit fit = fit_gamma_mle(samples);
                t.rows.push_back({static_cast<std::int64_t>(n), pmax, pt, fit.k, fit.nu});
            }
            detail::log_point(log, "gamma fits N=" + std::to_string(n) +
                                       " P_max=" + std::to_string(pmax) + " dBm");
        }
    }
    return t;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
        "fig6",  "fig7",  "fig8",  "fig9",  "table2",
    };
    return names;
}

inline ResultTable run_preset(const std::string& name, const SystemConfig& base,
                              std::size_t iters_override = 0, unsigned threads = 0,
                              bool log = false) {
    const std::size_t iters = iters_override != 0 ? iters_override : base.n_iterations;
    if (name == "fig3a") return preset_ber_vs_pt(base, 10.0, iters, threads, log);
    if (name == "fig3b") return preset_ber_vs_pt(base, 20.0, iters, threads, log);
    if (name == "fig4a") return preset_rate_vs_placement(base, 50.0, iters, threads, log);
    if (name == "fig4b") return preset_rate_vs_placement(base, 100.0, iters, threads, log);
    if (name == "fig5a") return preset_rate_vs_n(base, 20.0, iters, threads, log);
    if (name == "fig5b") return preset_rate_vs_n(base, 10.0, iters, threads, log);
    if (name == "fig6") return preset_rate_saturation(base, iters, threads, log);
    if (name == "fig7") return preset_ee_vs_n(base, iters, threads, log);
    if (name == "fig8") return preset_ee_vs_pt(base, iters, threads, log);
    if (name == "fig9") return preset_ee_vs_pmax(base, iters, threads, log);
    if (name == "table2") return preset_gamma_fit_table(base, iters, threads, log);
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace arisim
