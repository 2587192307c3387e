// SPDX-License-Identifier: Apache-2.0
//
// arisim: end-to-end SNR and achievable rate. Covers the amplifying link
// (co-phased surfaces, output-power-capped PA gain) and the passive 2N-element
// benchmark.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace arisim {

struct AmplifierSpec {
    double g_max{1000.0};                      // max PA gain, linear (30 dB)
    double p_max_w{1.0};                       // max PA output power (30 dBm)
    double noise_figure{3.1622776601683795};   // linear (5 dB)
};

struct NoiseSpec {
    double sigma2_tot_w{1e-13};  // noise power at the PA input (-100 dBm)
    double sigma2_rx_w{1e-13};   // noise power at the receiver (-100 dBm)
};

struct LinkSample {
    double a{};           // sum_i |h_i|
    double b{};           // sum_i |g_i|
    double p_in_w{};      // PA input power
    double g_opt{};       // selected PA gain, linear
    double p_out_w{};     // PA output power, g_opt * p_in
    double gamma{};       // end-to-end SNR, linear
    double rate_bps_hz{};
    bool clipped{};       // true when the gain limit G_max binds
};

inline double amplitude_sum(std::span<const std::complex<double>> v) noexcept {
    double s = 0.0;
    for (const auto& x : v) s += std::sqrt(std::norm(x));
    return s;
}

/// Co-phasing weights: entry_i = e^{-j arg(v_i)}, so sum_i phi_i v_i equals
/// sum_i |v_i|. A zero entry gets phase 0.
inline std::vector<std::complex<double>> optimal_phases(
    std::span<const std::complex<double>> channel) {
    if (channel.empty()) throw std::invalid_argument("optimal_phases: empty channel");
    std::vector<std::complex<double>> phases(channel.size());
    for (std::size_t i = 0; i < channel.size(); ++i) {
        const auto& x = channel[i];
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("optimal_phases: non-finite entry");
        const double m = std::abs(x);
        phases[i] = m > 0.0 ? std::conj(x) / m : std::complex<double>{1.0, 0.0};
    }
    return phases;
}

/// Power hitting the PA after coherent combining: P_t * (sum |h_i|)^2.
inline double input_power(double p_t_w, std::span<const std::complex<double>> h) {
    if (!(p_t_w >= 0.0)) throw std::invalid_argument("input_power: P_t must be >= 0");
    const double a = amplitude_sum(h);
    return p_t_w * a * a;
}

struct GainChoice {
    double g;
    bool clipped;
};

/// Largest admissible PA gain: drives the output to P_max unless the gain
/// ceiling G_max binds first. A zero-input channel gets G_max (any gain
/// yields zero output) and counts as clipped.
inline GainChoice optimal_gain(double p_in_w, const AmplifierSpec& amp) {
    if (!std::isfinite(p_in_w) || p_in_w < 0.0)
        throw std::invalid_argument("optimal_gain: P_in must be finite and >= 0");
    if (p_in_w == 0.0) return {amp.g_max, true};
    const double g_bar = amp.p_max_w / p_in_w;
    if (g_bar > amp.g_max) return {amp.g_max, true};
    return {g_bar, false};
}

/// SNR with both surfaces co-phased, at PA gain g:
///   P_t (g/N) A^2 B^2 / ((g F / N) B^2 s2_tot + s2_rx).
inline double active_snr_aligned(double p_t_w, double g, std::size_t n, double noise_figure,
                                 double a, double b, const NoiseSpec& noise) {
    if (n == 0) throw std::invalid_argument("active_snr_aligned: N must be >= 1");
    if (!(p_t_w >= 0.0) || !(g >= 0.0) || !(noise_figure >= 0.0) || !(a >= 0.0) || !(b >= 0.0))
        throw std::invalid_argument("active_snr_aligned: arguments must be non-negative");
    if (!(noise.sigma2_tot_w > 0.0) || !(noise.sigma2_rx_w > 0.0))
        throw std::invalid_argument("active_snr_aligned: noise powers must be > 0");
    const double nd = static_cast<double>(n);
    const double num = p_t_w * (g / nd) * a * a * b * b;
    const double den = (g * noise_figure / nd) * b * b * noise.sigma2_tot_w + noise.sigma2_rx_w;
    return num / den;
}

inline double achievable_rate(double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("achievable_rate: SNR must be >= 0");
    return std::log2(1.0 + gamma);
}

/// Full optimized evaluation of one realization: amplitude sums, gain choice
/// under both constraints, SNR at the aligned phases, achievable rate.
inline LinkSample max_active_snr(double p_t_w, const AmplifierSpec& amp,
                                 std::span<const std::complex<double>> h,
                                 std::span<const std::complex<double>> g,
                                 const NoiseSpec& noise) {
    if (h.empty() || h.size() != g.size())
        throw std::invalid_argument("max_active_snr: h and g must be non-empty, equal length");
    if (!(p_t_w >= 0.0)) throw std::invalid_argument("max_active_snr: P_t must be >= 0");
    LinkSample s;
    s.a = amplitude_sum(h);
    s.b = amplitude_sum(g);
    s.p_in_w = p_t_w * s.a * s.a;
    const GainChoice gc = optimal_gain(s.p_in_w, amp);
    s.g_opt = gc.g;
    s.clipped = gc.clipped;
    s.p_out_w = s.g_opt * s.p_in_w;
    s.gamma = active_snr_aligned(p_t_w, s.g_opt, h.size(), amp.noise_figure, s.a, s.b, noise);
    s.rate_bps_hz = achievable_rate(s.gamma);
    return s;
}

/// Output-power-limited closed form,
///   P_t (P_max/N) A^2 B^2 / ((P_max F / N) B^2 s2_tot + P_t A^2 s2_rx),
/// algebraically equal to max_active_snr whenever the gain ceiling does not
/// bind. Kept as an independent route for cross-checking.
inline double active_snr_power_limited(double p_t_w, double p_max_w, double noise_figure,
                                       std::size_t n, double a, double b,
                                       const NoiseSpec& noise) {
    if (n == 0) throw std::invalid_argument("active_snr_power_limited: N must be >= 1");
    const double nd = static_cast<double>(n);
    const double num = p_t_w * (p_max_w / nd) * a * a * b * b;
    const double den =
        (p_max_w * noise_figure / nd) * b * b * noise.sigma2_tot_w + p_t_w * a * a * noise.sigma2_rx_w;
    return num / den;
}

struct PassiveSample {
    double gamma;
    double rate_bps_hz;
};

/// Passive benchmark with ideal co-phasing of every element:
///   gamma = P_t (sum_i |h_i| |g_i|)^2 / s2_rx.
inline PassiveSample passive_snr(double p_t_w, std::span<const std::complex<double>> h_p,
                                 std::span<const std::complex<double>> g_p, double sigma2_rx_w) {
    if (h_p.empty() || h_p.size() != g_p.size())
        throw std::invalid_argument("passive_snr: mismatched channel lengths");
    if (!(p_t_w >= 0.0) || !(sigma2_rx_w > 0.0))
        throw std::invalid_argument("passive_snr: require P_t >= 0 and sigma2_rx > 0");
    double s = 0.0;
    for (std::size_t i = 0; i < h_p.size(); ++i)
        s += std::sqrt(std::norm(h_p[i]) * std::norm(g_p[i]));
    const double gamma = p_t_w * s * s / sigma2_rx_w;
    return {gamma, std::log2(1.0 + gamma)};
}

}  // namespace arisim
