// SPDX-License-Identifier: Apache-2.0
//
// arisim: stochastic channel generation for the Tx->RIS1 and RIS2->Rx links.
// 3GPP InH path loss and LOS probability, Rician/Rayleigh small-scale fading.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "arisim/rng.hpp"
#include "arisim/units.hpp"

namespace arisim {

struct Geometry {
    double d_v_m{5.0};  // vertical Tx-RIS offset
    double d_h_m{5.0};  // horizontal Tx-RIS offset along the Tx-Rx axis
    double d_m{50.0};   // Tx-Rx distance
};

struct LinkDistances {
    double d1_m;  // Tx -> RIS1
    double d2_m;  // RIS2 -> Rx
};

inline LinkDistances link_distances(const Geometry& geo) {
    if (!std::isfinite(geo.d_v_m) || !std::isfinite(geo.d_h_m) || !std::isfinite(geo.d_m))
        throw std::invalid_argument("link_distances: geometry must be finite");
    if (geo.d_v_m < 0.0 || geo.d_h_m < 0.0 || geo.d_m <= 0.0 || geo.d_h_m > geo.d_m)
        throw std::invalid_argument("link_distances: require d_v >= 0 and 0 <= d_h <= d");
    return {std::hypot(geo.d_v_m, geo.d_h_m), std::hypot(geo.d_v_m, geo.d_m - geo.d_h_m)};
}

enum class LosMode { probabilistic, forced_los, forced_nlos };

struct FadingParams {
    double k1{5.0};       // Rician K for the Tx-RIS1 link, linear
    double k2{5.0};       // Rician K for the RIS2-Rx link, linear
    double f_c_ghz{28.0};
    LosMode los_mode_h{LosMode::probabilistic};
    LosMode los_mode_g{LosMode::probabilistic};
};

/// 3GPP InH path loss in dB at distance d_n (meters), carrier f_c (GHz).
/// The NLOS loss is floored by the LOS loss.
inline double path_loss_db(double d_n_m, double f_c_ghz, bool los) {
    if (!std::isfinite(d_n_m) || !std::isfinite(f_c_ghz) || d_n_m <= 0.0 || f_c_ghz <= 0.0)
        throw std::invalid_argument("path_loss_db: require d_n > 0 and f_c > 0");
    const double pl_los = 32.4 + 17.3 * std::log10(d_n_m) + 20.0 * std::log10(f_c_ghz);
    if (los) return pl_los;
    const double pl_nlos = 32.4 + 31.9 * std::log10(d_n_m) + 20.0 * std::log10(f_c_ghz);
    return std::max(pl_los, pl_nlos);
}

/// 3GPP InH LOS probability. The 0.54 factor makes the curve discontinuous at
/// 49 m; the branches are applied exactly as tabulated.
inline double los_probability(double d_n_m) {
    if (!std::isfinite(d_n_m) || d_n_m <= 0.0)
        throw std::invalid_argument("los_probability: require d_n > 0");
    if (d_n_m <= 5.0) return 1.0;
    if (d_n_m <= 49.0) return std::exp(-(d_n_m - 5.0) / 70.8);
    return 0.54 * std::exp(-(d_n_m - 49.0) / 211.7);
}

/// One fading vector:
///   entry_i = sqrt(1/lambda) * (sqrt(K/(K+1)) e^{j w_i} + sqrt(1/(K+1)) c_i),
/// with c_i ~ CN(0,1) and w_i uniform per element. K = 0 reduces exactly to
/// Rayleigh fading scaled by sqrt(1/lambda).
inline std::vector<std::complex<double>> draw_channel_vector(std::size_t n, double k_factor,
                                                             double lambda_db,
                                                             RandomStream& rng) {
    if (n == 0) throw std::invalid_argument("draw_channel_vector: n must be >= 1");
    if (!std::isfinite(k_factor) || k_factor < 0.0)
        throw std::invalid_argument("draw_channel_vector: K must be finite and >= 0");
    if (!std::isfinite(lambda_db))
        throw std::invalid_argument("draw_channel_vector: path loss must be finite");
    const double amp = std::sqrt(db_to_linear(-lambda_db));
    const double w_los = std::sqrt(k_factor / (k_factor + 1.0));
    const double w_nlos = std::sqrt(1.0 / (k_factor + 1.0));
    std::vector<std::complex<double>> v(n);
    for (auto& entry : v) {
        // The phase uniform is consumed even for K = 0 so the Rayleigh and
        // Rician paths stay stream-aligned.
        const double phase_u = rng.next_double();
        std::complex<double> x = w_nlos * rng.next_cnormal();
        if (k_factor > 0.0) {
            const double w = 2.0 * std::numbers::pi * phase_u;
            x += w_los * std::complex<double>{std::cos(w), std::sin(w)};
        }
        entry = amp * x;
    }
    return v;
}

struct ChannelRealization {
    std::vector<std::complex<double>> h;  // Tx -> RIS1
    std::vector<std::complex<double>> g;  // RIS2 -> Rx
    bool los_h{};
    bool los_g{};
    double lambda_h{};  // linear path-loss factor of h
    double lambda_g{};  // linear path-loss factor of g
};

inline bool resolve_los(LosMode mode, double d_n_m, RandomStream& rng) {
    switch (mode) {
        case LosMode::forced_los: return true;
        case LosMode::forced_nlos: return false;
        default: return rng.next_bernoulli(los_probability(d_n_m));
    }
}

/// Draws the per-link LOS states (one per link, shared by all elements since
/// the surface is in the far field), selects the matching path loss, and
/// fills both fading vectors. An NLOS link falls back to K = 0.
inline ChannelRealization draw_realization(const Geometry& geo, const FadingParams& fading,
                                           std::size_t n_elements, RandomStream& rng) {
    const auto [d1, d2] = link_distances(geo);
    ChannelRealization out;
    out.los_h = resolve_los(fading.los_mode_h, d1, rng);
    out.los_g = resolve_los(fading.los_mode_g, d2, rng);
    const double pl_h_db = path_loss_db(d1, fading.f_c_ghz, out.los_h);
    const double pl_g_db = path_loss_db(d2, fading.f_c_ghz, out.los_g);
    out.lambda_h = db_to_linear(pl_h_db);
    out.lambda_g = db_to_linear(pl_g_db);
    out.h = draw_channel_vector(n_elements, out.los_h ? fading.k1 : 0.0, pl_h_db, rng);
    out.g = draw_channel_vector(n_elements, out.los_g ? fading.k2 : 0.0, pl_g_db, rng);
    return out;
}

}  // namespace arisim
