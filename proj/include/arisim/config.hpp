// SPDX-License-Identifier: Apache-2.0
//
// arisim: full scenario description and the config file parser. All dB/dBm
// quantities convert to linear SI here, at the boundary; everything past this
// point works in watts and linear factors.
//
// Config files are flat key = value lines (UTF-8, '#' or ';' comments).
// [section] headers are accepted as cosmetic grouping; keys form one flat
// namespace. Absent keys keep the defaults below.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arisim/channel.hpp"
#include "arisim/link.hpp"
#include "arisim/power.hpp"
#include "arisim/units.hpp"

namespace arisim {

enum class LinkDesign { active, passive };

struct BerOptions {
    std::size_t symbols_per_draw{100};
    std::size_t target_bit_errors{200};
};

struct SystemConfig {
    Geometry geometry{};
    FadingParams fading{};
    std::size_t n_elements{128};
    std::size_t passive_elements{0};  // 0 = derived as 2 * n_elements
    double p_t_w{1.0};                // 30 dBm
    AmplifierSpec amp{};
    NoiseSpec noise{};
    double bandwidth_hz{180e3};
    unsigned modulation_order{2};
    std::size_t n_iterations{1000000};
    std::uint64_t seed{1};
    LinkDesign mode{LinkDesign::active};
    BerOptions ber{};
    PowerParams power{};

    std::size_t passive_element_count() const {
        return passive_elements != 0 ? passive_elements : 2 * n_elements;
    }

    void validate() const {
        auto require = [](bool ok, const char* msg) {
            if (!ok) throw std::invalid_argument(std::string("SystemConfig: ") + msg);
        };
        require(std::isfinite(geometry.d_v_m) && geometry.d_v_m >= 0.0, "d_v_m must be >= 0");
        require(std::isfinite(geometry.d_h_m) && geometry.d_h_m >= 0.0, "d_h_m must be >= 0");
        require(std::isfinite(geometry.d_m) && geometry.d_m > 0.0, "d_m must be > 0");
        require(geometry.d_h_m <= geometry.d_m, "d_h_m must not exceed d_m");
        require(std::isfinite(fading.k1) && fading.k1 >= 0.0, "K1 must be >= 0");
        require(std::isfinite(fading.k2) && fading.k2 >= 0.0, "K2 must be >= 0");
        require(fading.f_c_ghz > 0.0, "f_c_GHz must be > 0");
        require(n_elements >= 1, "N must be >= 1");
        require(std::isfinite(p_t_w) && p_t_w >= 0.0, "P_t must be >= 0");
        require(amp.g_max >= 1.0, "G_max must be >= 1 (>= 0 dB)");
        require(amp.p_max_w > 0.0, "P_max must be > 0");
        require(amp.noise_figure >= 1.0, "F must be >= 1 (>= 0 dB)");
        require(noise.sigma2_tot_w > 0.0 && noise.sigma2_rx_w > 0.0, "noise powers must be > 0");
        require(bandwidth_hz > 0.0, "BW_Hz must be > 0");
        require(modulation_order >= 2 && (modulation_order & (modulation_order - 1)) == 0,
                "modulation_order must be a power of two >= 2");
        require(n_iterations >= 1, "n_iterations must be >= 1");
        require(ber.symbols_per_draw >= 1, "symbols_per_draw must be >= 1");
        require(ber.target_bit_errors >= 1, "target_bit_errors must be >= 1");
        require(power.alpha >= 1.0 && power.beta >= 1.0, "alpha and beta must be >= 1");
        require(power.p_element_w >= 0.0, "P_element must be >= 0");
        require(power.epsilon > 0.0 && power.epsilon <= 1.0, "epsilon must be in (0, 1]");
        require(power.panels_counted == 1 || power.panels_counted == 2,
                "panels_counted must be 1 or 2");
    }
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct ParseContext {
    std::string source;
    int line{0};

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
    }

    double number(std::string_view key, std::string_view value) const {
        double out{};
        const char* first = value.data();
        const char* last = value.data() + value.size();
        const auto r = std::from_chars(first, last, out);
        if (r.ec != std::errc{} || r.ptr != last)
            fail("key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
        return out;
    }

    std::uint64_t unsigned_number(std::string_view key, std::string_view value) const {
        std::uint64_t out{};
        const char* first = value.data();
        const char* last = value.data() + value.size();
        const auto r = std::from_chars(first, last, out);
        if (r.ec != std::errc{} || r.ptr != last)
            fail("key '" + std::string(key) + "': not an unsigned integer: '" + std::string(value) + "'");
        return out;
    }

    double finite(std::string_view key, std::string_view value) const {
        const double x = number(key, value);
        if (!std::isfinite(x)) fail("key '" + std::string(key) + "': must be finite");
        return x;
    }

    double at_least(std::string_view key, std::string_view value, double lo) const {
        const double x = finite(key, value);
        if (x < lo)
            fail("key '" + std::string(key) + "': must be >= " + std::to_string(lo) + " (got " +
                 std::string(value) + ")");
        return x;
    }

    double above(std::string_view key, std::string_view value, double lo) const {
        const double x = finite(key, value);
        if (!(x > lo))
            fail("key '" + std::string(key) + "': must be > " + std::to_string(lo) + " (got " +
                 std::string(value) + ")");
        return x;
    }

    LosMode los_mode(std::string_view key, std::string_view value) const {
        if (value == "probabilistic") return LosMode::probabilistic;
        if (value == "los") return LosMode::forced_los;
        if (value == "nlos") return LosMode::forced_nlos;
        fail("key '" + std::string(key) + "': expected probabilistic|los|nlos, got '" +
             std::string(value) + "'");
    }
};

inline void apply_key(SystemConfig& cfg, std::string_view key, std::string_view value,
                      const ParseContext& ctx) {
    if (key == "d_v_m") {
        cfg.geometry.d_v_m = ctx.at_least(key, value, 0.0);
    } else if (key == "d_h_m") {
        cfg.geometry.d_h_m = ctx.at_least(key, value, 0.0);
    } else if (key == "d_m") {
        cfg.geometry.d_m = ctx.above(key, value, 0.0);
    } else if (key == "f_c_GHz") {
        cfg.fading.f_c_ghz = ctx.above(key, value, 0.0);
    } else if (key == "K1") {
        cfg.fading.k1 = ctx.at_least(key, value, 0.0);
    } else if (key == "K2") {
        cfg.fading.k2 = ctx.at_least(key, value, 0.0);
    } else if (key == "los_mode") {
        cfg.fading.los_mode_h = cfg.fading.los_mode_g = ctx.los_mode(key, value);
    } else if (key == "los_mode_h") {
        cfg.fading.los_mode_h = ctx.los_mode(key, value);
    } else if (key == "los_mode_g") {
        cfg.fading.los_mode_g = ctx.los_mode(key, value);
    } else if (key == "N") {
        const auto n = ctx.unsigned_number(key, value);
        if (n < 1) ctx.fail("key 'N': must be >= 1");
        cfg.n_elements = static_cast<std::size_t>(n);
    } else if (key == "passive_elements") {
        const auto n = ctx.unsigned_number(key, value);
        if (n < 1) ctx.fail("key 'passive_elements': must be >= 1");
        cfg.passive_elements = static_cast<std::size_t>(n);
    } else if (key == "P_t_dBm") {
        cfg.p_t_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "P_max_dBm") {
        cfg.amp.p_max_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "G_max_dB") {
        cfg.amp.g_max = db_to_linear(ctx.at_least(key, value, 0.0));
    } else if (key == "F_dB") {
        cfg.amp.noise_figure = db_to_linear(ctx.at_least(key, value, 0.0));
    } else if (key == "noise_dBm") {
        cfg.noise.sigma2_tot_w = cfg.noise.sigma2_rx_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "sigma2_tot_dBm") {
        cfg.noise.sigma2_tot_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "sigma2_rx_dBm") {
        cfg.noise.sigma2_rx_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "BW_Hz") {
        cfg.bandwidth_hz = ctx.above(key, value, 0.0);
    } else if (key == "modulation_order") {
        const auto m = ctx.unsigned_number(key, value);
        if (m < 2 || (m & (m - 1)) != 0)
            ctx.fail("key 'modulation_order': must be a power of two >= 2");
        cfg.modulation_order = static_cast<unsigned>(m);
    } else if (key == "n_iterations") {
        const auto n = ctx.unsigned_number(key, value);
        if (n < 1) ctx.fail("key 'n_iterations': must be >= 1");
        cfg.n_iterations = static_cast<std::size_t>(n);
    } else if (key == "seed") {
        cfg.seed = ctx.unsigned_number(key, value);
    } else if (key == "mode") {
        if (value == "active") cfg.mode = LinkDesign::active;
        else if (value == "passive") cfg.mode = LinkDesign::passive;
        else ctx.fail("key 'mode': expected active|passive, got '" + std::string(value) + "'");
    } else if (key == "symbols_per_draw") {
        const auto n = ctx.unsigned_number(key, value);
        if (n < 1) ctx.fail("key 'symbols_per_draw': must be >= 1");
        cfg.ber.symbols_per_draw = static_cast<std::size_t>(n);
    } else if (key == "target_bit_errors") {
        const auto n = ctx.unsigned_number(key, value);
        if (n < 1) ctx.fail("key 'target_bit_errors': must be >= 1");
        cfg.ber.target_bit_errors = static_cast<std::size_t>(n);
    } else if (key == "alpha") {
        cfg.power.alpha = ctx.at_least(key, value, 1.0);
    } else if (key == "beta") {
        cfg.power.beta = ctx.at_least(key, value, 1.0);
    } else if (key == "P_element_mW") {
        cfg.power.p_element_w = 1e-3 * ctx.at_least(key, value, 0.0);
    } else if (key == "P_Tx_dBW") {
        cfg.power.p_tx_static_w = dbw_to_watt(ctx.finite(key, value));
    } else if (key == "P_Rx_dBm") {
        cfg.power.p_rx_static_w = dbm_to_watt(ctx.finite(key, value));
    } else if (key == "epsilon") {
        const double e = ctx.finite(key, value);
        if (!(e > 0.0) || !(e <= 1.0)) ctx.fail("key 'epsilon': must be in (0, 1]");
        cfg.power.epsilon = e;
    } else if (key == "panels_counted") {
        const auto n = ctx.unsigned_number(key, value);
        if (n != 1 && n != 2) ctx.fail("key 'panels_counted': must be 1 or 2");
        cfg.power.panels_counted = static_cast<unsigned>(n);
    } else {
        ctx.fail("unknown key '" + std::string(key) + "'");
    }
}

}  // namespace detail

inline SystemConfig parse_config(std::istream& in, const std::string& source_name = "<config>") {
    SystemConfig cfg;
    detail::ParseContext ctx{source_name, 0};
    std::string raw;
    while (std::getline(in, raw)) {
        ++ctx.line;
        std::string_view line{raw};
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) ctx.fail("malformed section header");
            continue;  // sections are cosmetic
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) ctx.fail("expected 'key = value'");
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key.empty()) ctx.fail("empty key");
        if (value.empty()) ctx.fail("key '" + std::string(key) + "': empty value");
        detail::apply_key(cfg, key, value, ctx);
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    return cfg;
}

inline SystemConfig parse_config_string(const std::string& text,
                                        const std::string& source_name = "<string>") {
    std::istringstream in(text);
    return parse_config(in, source_name);
}

inline SystemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path);
}

inline const char* to_string(LosMode m) {
    switch (m) {
        case LosMode::forced_los: return "los";
        case LosMode::forced_nlos: return "nlos";
        default: return "probabilistic";
    }
}

inline const char* to_string(LinkDesign m) {
    return m == LinkDesign::passive ? "passive" : "active";
}

}  // namespace arisim
