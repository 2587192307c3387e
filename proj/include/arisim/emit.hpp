// SPDX-License-Identifier: Apache-2.0
//
// arisim: result emission. CSV is locale-free ('.' decimal point, no
// separators, %.17g reals) and byte-stable for a fixed (config, seed);
// JSON carries the same table plus a run manifest sufficient to reproduce
// every number (wall-clock lives only here).

#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "arisim/config.hpp"
#include "arisim/sweep.hpp"
#include "arisim/version.hpp"

namespace arisim {

struct RunManifest {
    std::string run;  // "preset:fig3a", "sweep:P_t_dBm", or "single"
    std::uint64_t seed{};
    std::size_t iterations{};
    unsigned threads{};
    double wall_clock_s{};
    SystemConfig config{};
};

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const ResultTable& table, std::ostream& out) {
    if (table.columns.empty()) throw std::invalid_argument("write_csv: empty result table");
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c != 0) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) out << ',';
            const auto& cell = row[c];
            if (std::holds_alternative<std::int64_t>(cell))
                out << std::get<std::int64_t>(cell);
            else if (std::holds_alternative<double>(cell))
                out << format_real(std::get<double>(cell));
            else if (std::holds_alternative<std::string>(cell))
                out << std::get<std::string>(cell);
            // monostate: empty field
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: stream write failed");
}

inline nlohmann::json config_json(const SystemConfig& cfg) {
    nlohmann::json j;
    j["geometry"] = {{"d_v_m", cfg.geometry.d_v_m},
                     {"d_h_m", cfg.geometry.d_h_m},
                     {"d_m", cfg.geometry.d_m}};
    j["fading"] = {{"K1", cfg.fading.k1},
                   {"K2", cfg.fading.k2},
                   {"f_c_GHz", cfg.fading.f_c_ghz},
                   {"los_mode_h", to_string(cfg.fading.los_mode_h)},
                   {"los_mode_g", to_string(cfg.fading.los_mode_g)}};
    j["N"] = cfg.n_elements;
    j["passive_elements"] = cfg.passive_element_count();
    j["P_t_W"] = cfg.p_t_w;
    j["amplifier"] = {{"G_max", cfg.amp.g_max},
                      {"P_max_W", cfg.amp.p_max_w},
                      {"noise_figure", cfg.amp.noise_figure}};
    j["noise"] = {{"sigma2_tot_W", cfg.noise.sigma2_tot_w},
                  {"sigma2_rx_W", cfg.noise.sigma2_rx_w}};
    j["BW_Hz"] = cfg.bandwidth_hz;
    j["modulation_order"] = cfg.modulation_order;
    j["n_iterations"] = cfg.n_iterations;
    j["seed"] = cfg.seed;
    j["mode"] = to_string(cfg.mode);
    j["ber"] = {{"symbols_per_draw", cfg.ber.symbols_per_draw},
                {"target_bit_errors", cfg.ber.target_bit_errors}};
    j["power"] = {{"alpha", cfg.power.alpha},
                  {"beta", cfg.power.beta},
                  {"P_element_W", cfg.power.p_element_w},
                  {"P_Tx_static_W", cfg.power.p_tx_static_w},
                  {"P_Rx_static_W", cfg.power.p_rx_static_w},
                  {"epsilon", cfg.power.epsilon},
                  {"panels_counted", cfg.power.panels_counted}};
    return j;
}

inline nlohmann::json manifest_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["run"] = manifest.run;
    j["seed"] = manifest.seed;
    j["iterations"] = manifest.iterations;
    j["threads"] = manifest.threads;
    j["wall_clock_s"] = manifest.wall_clock_s;
    j["config"] = config_json(manifest.config);
    return j;
}

inline nlohmann::json table_json(const ResultTable& table) {
    nlohmann::json j;
    j["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<std::int64_t>(cell))
                r.push_back(std::get<std::int64_t>(cell));
            else if (std::holds_alternative<double>(cell))
                r.push_back(std::get<double>(cell));
            else if (std::holds_alternative<std::string>(cell))
                r.push_back(std::get<std::string>(cell));
            else
                r.push_back(nullptr);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline void write_json(const ResultTable& table, const RunManifest& manifest, std::ostream& out) {
    nlohmann::json j = table_json(table);
    j["manifest"] = manifest_json(manifest);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_json: stream write failed");
}

}  // namespace arisim
