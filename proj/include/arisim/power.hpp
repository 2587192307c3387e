// SPDX-License-Identifier: Apache-2.0
//
// arisim: power consumption model (transmit PA, static Tx/Rx, RIS element
// control, inter-RIS PA) and bit-per-joule energy efficiency.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace arisim {

struct PowerParams {
    double alpha{1.2};            // transmit-PA inefficiency, 1/omega_max
    double beta{1.2};             // inter-RIS-PA inefficiency, 1/eta_max
    double p_element_w{7.8e-3};   // per-element control power at 6-bit phase resolution
    double p_tx_static_w{7.943282347242816};  // 9 dBW
    double p_rx_static_w{0.01};   // 10 dBm
    double epsilon{0.5};          // PA class parameter
    unsigned panels_counted{1};   // RIS panels charged for control power (1 or 2)
};

namespace detail {
inline void check_pa_args(double p_out_w, double p_max_w, double beta) {
    if (!(p_max_w > 0.0) || !(beta >= 1.0))
        throw std::invalid_argument("pa_power: require P_max > 0 and beta >= 1");
    if (!(p_out_w >= 0.0) || p_out_w > p_max_w * (1.0 + 1e-9))
        throw std::invalid_argument("pa_power: P_out outside [0, P_max]");
}
}  // namespace detail

/// PA consumption for efficiency law P_out/P_amp = eta_max (P_out/P_max)^eps,
/// i.e. P_amp = beta * P_out^(1-eps) * P_max^eps.
inline double pa_power_class(double p_out_w, double p_max_w, double beta, double epsilon) {
    detail::check_pa_args(p_out_w, p_max_w, beta);
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("pa_power_class: require 0 < epsilon <= 1");
    const double p_out = std::min(p_out_w, p_max_w);
    if (p_out == 0.0) return 0.0;
    return beta * std::pow(p_out, 1.0 - epsilon) * std::pow(p_max_w, epsilon);
}

/// Square-root PA law, the epsilon = 0.5 case: beta * sqrt(P_out P_max).
inline double pa_power(double p_out_w, double p_max_w, double beta) {
    detail::check_pa_args(p_out_w, p_max_w, beta);
    return beta * std::sqrt(std::min(p_out_w, p_max_w) * p_max_w);
}

/// Control power of n phase-shifting elements, n * P_n(b).
inline double ris_power(std::size_t n_elements, const PowerParams& p) {
    if (!(p.p_element_w >= 0.0)) throw std::invalid_argument("ris_power: P_n must be >= 0");
    return static_cast<double>(n_elements) * p.p_element_w;
}

struct PowerBreakdown {
    double transmit_pa_w{};
    double static_tx_w{};
    double static_rx_w{};
    double ris_control_w{};
    double inter_ris_pa_w{};
    double total_w{};
};

/// Total consumption of the amplifying design. The transmit PA is assumed to
/// run at its own maximum output, so its draw reduces to alpha * P_t.
inline PowerBreakdown total_power_active(double p_t_w, double p_out_w, double p_max_w,
                                         std::size_t n_elements, const PowerParams& p) {
    if (!(p_t_w >= 0.0)) throw std::invalid_argument("total_power_active: P_t must be >= 0");
    PowerBreakdown b;
    b.transmit_pa_w = p.alpha * p_t_w;
    b.static_tx_w = p.p_tx_static_w;
    b.static_rx_w = p.p_rx_static_w;
    b.ris_control_w = ris_power(static_cast<std::size_t>(p.panels_counted) * n_elements, p);
    b.inter_ris_pa_w = pa_power_class(p_out_w, p_max_w, p.beta, p.epsilon);
    b.total_w = b.transmit_pa_w + b.static_tx_w + b.static_rx_w + b.ris_control_w + b.inter_ris_pa_w;
    return b;
}

/// Passive design: same terms minus the inter-RIS PA; n_elements is the
/// benchmark's own element count (2N when mirroring the amplifying setup).
inline PowerBreakdown total_power_passive(double p_t_w, std::size_t n_elements,
                                          const PowerParams& p) {
    if (!(p_t_w >= 0.0)) throw std::invalid_argument("total_power_passive: P_t must be >= 0");
    PowerBreakdown b;
    b.transmit_pa_w = p.alpha * p_t_w;
    b.static_tx_w = p.p_tx_static_w;
    b.static_rx_w = p.p_rx_static_w;
    b.ris_control_w = ris_power(n_elements, p);
    b.inter_ris_pa_w = 0.0;
    b.total_w = b.transmit_pa_w + b.static_tx_w + b.static_rx_w + b.ris_control_w;
    return b;
}

/// Bit-per-joule efficiency, rate * BW / P_tot.
inline double energy_efficiency(double rate_bps_hz, double bandwidth_hz, double total_power_w) {
    if (!(total_power_w > 0.0))
        throw std::invalid_argument("energy_efficiency: total power must be > 0");
    if (!(rate_bps_hz >= 0.0) || !(bandwidth_hz > 0.0))
        throw std::invalid_argument("energy_efficiency: require rate >= 0 and BW > 0");
    return rate_bps_hz * bandwidth_hz / total_power_w;
}

}  // namespace arisim
