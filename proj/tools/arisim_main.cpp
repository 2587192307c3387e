// SPDX-License-Identifier: Apache-2.0
//
// arisim command-line front end: single evaluations, parameter sweeps, and
// figure-reproduction presets, emitted as CSV or JSON with a run manifest.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arisim/emit.hpp"
#include "arisim/montecarlo.hpp"
#include "arisim/sweep.hpp"
#include "arisim/version.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

arisim::ResultTable run_single(const arisim::SystemConfig& cfg,
                               const std::vector<arisim::Metric>& metrics, std::size_t iters,
                               unsigned threads) {
    using namespace arisim;
    ResultTable t;
    bool stats_ready = false;
    LinkStats stats;
    auto ensure_stats = [&] {
        if (!stats_ready) {
            stats = simulate_link_stats(cfg, iters, cfg.seed, threads);
            stats_ready = true;
        }
    };
    std::vector<ResultTable::Cell> row;
    for (Metric m : metrics) {
        switch (m) {
            case Metric::rate:
                t.columns.push_back("rate");
                ensure_stats();
                row.emplace_back(stats.mean_rate);
                break;
            case Metric::ber: {
                t.columns.push_back("ber");
                t.columns.push_back("ber_ci95");
                const BerEstimate est = simulate_ber(cfg, cfg.seed, threads, iters);
                if (est.low_confidence)
                    std::cerr << "[arisim] warning: fewer than 100 bit errors, BER unreliable\n";
                row.emplace_back(est.ber);
                row.emplace_back(est.ci95_halfwidth);
                break;
            }
            case Metric::ee:
                t.columns.push_back("ee");
                ensure_stats();
                row.emplace_back(stats.mean_ee);
                break;
            case Metric::ptot:
                t.columns.push_back("ptot");
                ensure_stats();
                row.emplace_back(stats.mean_ptot);
                break;
            case Metric::gamma_fit: {
                t.columns.push_back("k");
                t.columns.push_back("nu");
                const auto samples = simulate_snr_samples(cfg, iters, cfg.seed, threads);
                const GammaFit fit = fit_gamma_mle(samples);
                row.emplace_back(fit.k);
                row.emplace_back(fit.nu);
                break;
            }
        }
    }
    t.rows.push_back(std::move(row));
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arisim: link-level simulator for an amplifying-RIS-assisted SISO link "
                 "and its passive benchmark"};
    app.set_version_flag("--version", std::string(arisim::kToolVersion));

    std::string config_path;
    std::string preset;
    std::string sweep_var;
    std::string values_list;
    std::string metrics_list = "rate,ee";
    std::string out_path = "-";
    std::string format = "csv";
    std::size_t iters = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    bool list_presets = false;
    bool quiet = false;

    app.add_option("--config", config_path, "Scenario config file (key = value lines)");
    app.add_option("--preset", preset, "Figure/table preset to run (see --list-presets)");
    app.add_option("--sweep", sweep_var, "Sweep variable: P_t_dBm|P_max_dBm|N|d_h_m");
    app.add_option("--values", values_list, "Comma-separated sweep values");
    app.add_option("--metrics", metrics_list, "Comma-separated metrics: rate,ber,ee,ptot,gamma_fit");
    app.add_option("--iters", iters, "Iteration count override (0 = config n_iterations)");
    app.add_option("--seed", seed, "Seed override")->each([&](const std::string&) { seed_given = true; });
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--out", out_path, "Output path ('-' = stdout)");
    app.add_option("--format", format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--list-presets", list_presets, "List preset names and exit");
    app.add_flag("--quiet", quiet, "Suppress per-sweep-point progress lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_presets) {
            for (const auto& name : arisim::preset_names()) std::cout << name << "\n";
            return 0;
        }

        arisim::SystemConfig cfg =
            config_path.empty() ? arisim::SystemConfig{} : arisim::parse_config_file(config_path);
        cfg.validate();
        if (seed_given) cfg.seed = seed;
        const std::size_t effective_iters = iters != 0 ? iters : cfg.n_iterations;
        const bool log = !quiet;

        arisim::RunManifest manifest;
        manifest.seed = cfg.seed;
        manifest.iterations = effective_iters;
        manifest.threads = threads;

        const auto t0 = std::chrono::steady_clock::now();
        arisim::ResultTable table;
        if (!preset.empty()) {
            if (!sweep_var.empty())
                throw std::invalid_argument("--preset and --sweep are mutually exclusive");
            table = arisim::run_preset(preset, cfg, effective_iters, threads, log);
            manifest.run = "preset:" + preset;
        } else if (!sweep_var.empty()) {
            arisim::SweepSpec spec;
            spec.variable = arisim::sweep_variable_from_string(sweep_var);
            for (const auto& v : split_list(values_list)) spec.values.push_back(std::stod(v));
            if (spec.values.empty())
                throw std::invalid_argument("--sweep requires --values with at least one entry");
            for (const auto& m : split_list(metrics_list))
                spec.metrics.push_back(arisim::metric_from_string(m));
            spec.base = cfg;
            table = arisim::run_sweep(spec, threads, effective_iters, log);
            manifest.run = "sweep:" + sweep_var;
        } else {
            std::vector<arisim::Metric> metrics;
            for (const auto& m : split_list(metrics_list))
                metrics.push_back(arisim::metric_from_string(m));
            if (metrics.empty()) throw std::invalid_argument("--metrics must name at least one metric");
            table = run_single(cfg, metrics, effective_iters, threads);
            manifest.run = "single";
        }
        manifest.wall_clock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        manifest.config = cfg;

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (out_path != "-") {
            file.open(out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + out_path);
            out = &file;
        }
        if (format == "json")
            arisim::write_json(table, manifest, *out);
        else
            arisim::write_csv(table, *out);
        out->flush();
        if (!*out) throw std::runtime_error("write failed: " + out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
