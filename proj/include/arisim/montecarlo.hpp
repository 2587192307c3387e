// SPDX-License-Identifier: Apache-2.0
//
// arisim: seeded, thread-count-invariant Monte Carlo engine. Iteration i
// always owns RandomStream(seed, i); work is handed out in fixed 4096-wide
// chunks and reduced in fixed order (sequential inside a chunk, pairwise over
// chunk partials), so every result is a pure function of (config, seed).

#pragma once

#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "arisim/analysis.hpp"
#include "arisim/channel.hpp"
#include "arisim/config.hpp"
#include "arisim/link.hpp"
#include "arisim/power.hpp"

namespace arisim {

namespace detail {

inline constexpr std::size_t kChunk = 4096;

template <class Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& body) {
    if (count == 0) return;
    const std::size_t n_chunks = (count + kChunk - 1) / kChunk;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned t = threads != 0 ? threads : hw;
    t = static_cast<unsigned>(std::min<std::size_t>(t, n_chunks));

    auto run_chunk = [&](std::size_t c) {
        body(c, c * kChunk, std::min(count, (c + 1) * kChunk));
    };
    if (t <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (std::size_t c; (c = next.fetch_add(1)) < n_chunks;) run_chunk(c);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(t - 1);
    for (unsigned i = 0; i + 1 < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace detail

struct IterationSample {
    double gamma{};
    double rate{};
    double p_out_w{};
    double g_opt{};
    bool clipped{};
};

inline ChannelRealization draw_realization(const SystemConfig& cfg, RandomStream& rng) {
    const std::size_t n =
        cfg.mode == LinkDesign::passive ? cfg.passive_element_count() : cfg.n_elements;
    return draw_realization(cfg.geometry, cfg.fading, n, rng);
}

inline IterationSample run_link_iteration(const SystemConfig& cfg, RandomStream& rng) {
    const ChannelRealization cr = draw_realization(cfg, rng);
    if (cfg.mode == LinkDesign::active) {
        const LinkSample ls = max_active_snr(cfg.p_t_w, cfg.amp, cr.h, cr.g, cfg.noise);
        return {ls.gamma, ls.rate_bps_hz, ls.p_out_w, ls.g_opt, ls.clipped};
    }
    const PassiveSample ps = passive_snr(cfg.p_t_w, cr.h, cr.g, cfg.noise.sigma2_rx_w);
    return {ps.gamma, ps.rate_bps_hz, 0.0, 0.0, false};
}

/// `count` independent SNR draws; sample i comes from stream (seed, i).
inline std::vector<double> simulate_snr_samples(const SystemConfig& cfg, std::size_t count,
                                                std::uint64_t seed, unsigned threads = 0) {
    if (count == 0) throw std::invalid_argument("simulate_snr_samples: count must be >= 1");
    std::vector<double> out(count);
    detail::parallel_chunks(count, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            RandomStream rng(seed, i);
            out[i] = run_link_iteration(cfg, rng).gamma;
        }
    });
    return out;
}

struct LinkStats {
    double mean_rate{};
    double mean_gamma{};
    double mean_ee{};
    double mean_ptot{};
    double mean_pout{};
    double mean_gopt{};
    double mean_rate_fixed_gain{};  // rate with G pinned to G_max, no output cap
    double clipped_fraction{};
    std::size_t iterations{};
};

/// One pass over `count` realizations collecting every per-iteration metric
/// the sweeps need (rate, SNR, EE, total power, PA operating point).
inline LinkStats simulate_link_stats(const SystemConfig& cfg, std::size_t count,
                                     std::uint64_t seed, unsigned threads = 0) {
    if (count == 0) throw std::invalid_argument("simulate_link_stats: count must be >= 1");
    struct Partial {
        double rate{}, gamma{}, ee{}, ptot{}, pout{}, gopt{}, rate_fix{};
        double clipped{};
    };
    const std::size_t n_chunks = (count + detail::kChunk - 1) / detail::kChunk;
    std::vector<Partial> partials(n_chunks);

    detail::parallel_chunks(count, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        Partial p;
        for (std::size_t i = b; i < e; ++i) {
            RandomStream rng(seed, i);
            if (cfg.mode == LinkDesign::active) {
                const ChannelRealization cr =
                    draw_realization(cfg.geometry, cfg.fading, cfg.n_elements, rng);
                const LinkSample ls = max_active_snr(cfg.p_t_w, cfg.amp, cr.h, cr.g, cfg.noise);
                const PowerBreakdown pb = total_power_active(cfg.p_t_w, ls.p_out_w,
                                                             cfg.amp.p_max_w, cfg.n_elements,
                                                             cfg.power);
                p.rate += ls.rate_bps_hz;
                p.gamma += ls.gamma;
                p.ee += energy_efficiency(ls.rate_bps_hz, cfg.bandwidth_hz, pb.total_w);
                p.ptot += pb.total_w;
                p.pout += ls.p_out_w;
                p.gopt += ls.g_opt;
                p.clipped += ls.clipped ? 1.0 : 0.0;
                const double gamma_fix = active_snr_aligned(cfg.p_t_w, cfg.amp.g_max, cr.h.size(),
                                                            cfg.amp.noise_figure, ls.a, ls.b,
                                                            cfg.noise);
                p.rate_fix += achievable_rate(gamma_fix);
            } else {
                const ChannelRealization cr =
                    draw_realization(cfg.geometry, cfg.fading, cfg.passive_element_count(), rng);
                const PassiveSample ps = passive_snr(cfg.p_t_w, cr.h, cr.g, cfg.noise.sigma2_rx_w);
                const PowerBreakdown pb =
                    total_power_passive(cfg.p_t_w, cfg.passive_element_count(), cfg.power);
                p.rate += ps.rate_bps_hz;
                p.gamma += ps.gamma;
                p.ee += energy_efficiency(ps.rate_bps_hz, cfg.bandwidth_hz, pb.total_w);
                p.ptot += pb.total_w;
                p.rate_fix += ps.rate_bps_hz;
            }
        }
        partials[c] = p;
    });

    auto reduce = [&](double Partial::* field) {
        std::vector<double> v(n_chunks);
        for (std::size_t c = 0; c < n_chunks; ++c) v[c] = partials[c].*field;
        return detail::pairwise_sum(v) / static_cast<double>(count);
    };
    LinkStats s;
    s.mean_rate = reduce(&Partial::rate);
    s.mean_gamma = reduce(&Partial::gamma);
    s.mean_ee = reduce(&Partial::ee);
    s.mean_ptot = reduce(&Partial::ptot);
    s.mean_pout = reduce(&Partial::pout);
    s.mean_gopt = reduce(&Partial::gopt);
    s.mean_rate_fixed_gain = reduce(&Partial::rate_fix);
    s.clipped_fraction = reduce(&Partial::clipped);
    s.iterations = count;
    return s;
}

inline double mean_rate(const SystemConfig& cfg, std::uint64_t seed, unsigned threads = 0,
                        std::size_t count = 0) {
    return simulate_link_stats(cfg, count != 0 ? count : cfg.n_iterations, seed, threads).mean_rate;
}

inline double mean_ee(const SystemConfig& cfg, std::uint64_t seed, unsigned threads = 0,
                      std::size_t count = 0) {
    return simulate_link_stats(cfg, count != 0 ? count : cfg.n_iterations, seed, threads).mean_ee;
}

/// Transmits n_symbols Gray-mapped M-PSK symbols over a unit-gain AWGN channel
/// at per-symbol SNR gamma, detects by nearest constellation angle, and
/// returns (bit errors, bits sent).
inline std::pair<std::uint64_t, std::uint64_t> simulate_mpsk_block(double gamma, unsigned m_order,
                                                                   std::size_t n_symbols,
                                                                   RandomStream& rng) {
    check_psk_order(m_order);
    if (!(gamma >= 0.0)) throw std::invalid_argument("simulate_mpsk_block: require gamma >= 0");
    const unsigned bits_per_symbol = static_cast<unsigned>(std::countr_zero(m_order));
    const double amp = std::sqrt(gamma);
    const double step = 2.0 * std::numbers::pi / m_order;
    const auto gray = [](unsigned s) { return s ^ (s >> 1); };
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < n_symbols; ++i) {
        const unsigned s = static_cast<unsigned>(rng.next_below(m_order));
        const double th = step * s;
        std::complex<double> y{amp * std::cos(th), amp * std::sin(th)};
        y += rng.next_cnormal();
        const double phase = std::atan2(y.imag(), y.real());
        const long idx = std::lround(phase / step);
        const unsigned detected =
            static_cast<unsigned>(((idx % static_cast<long>(m_order)) + m_order) % m_order);
        errors += static_cast<unsigned>(std::popcount(gray(s) ^ gray(detected)));
    }
    return {errors, static_cast<std::uint64_t>(n_symbols) * bits_per_symbol};
}

struct BerEstimate {
    double ber{};
    std::uint64_t bit_errors{};
    std::uint64_t bits_simulated{};
    double ci95_halfwidth{};  // normal approximation to the binomial
    std::size_t channel_draws{};
    bool low_confidence{};  // fewer than 100 bit errors observed
};

/// Symbol-level BER: per channel draw, a block of symbols_per_draw M-PSK
/// symbols runs through the equivalent AWGN channel at that draw's SNR.
/// Draws stop at the first 4096-draw batch boundary where target_bit_errors
/// is reached (or at max_draws), so the estimate is identical for any thread
/// count.
inline BerEstimate simulate_ber(const SystemConfig& cfg, std::uint64_t seed, unsigned threads = 0,
                                std::size_t max_draws = 0) {
    const std::size_t cap = max_draws != 0 ? max_draws : cfg.n_iterations;
    if (cap == 0) throw std::invalid_argument("simulate_ber: need at least one draw");
    constexpr std::size_t kBatch = detail::kChunk;
    const std::uint64_t bits_per_draw =
        static_cast<std::uint64_t>(cfg.ber.symbols_per_draw) *
        static_cast<unsigned>(std::countr_zero(cfg.modulation_order));

    std::vector<std::uint64_t> batch_errors(kBatch);
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    std::size_t draws = 0;
    while (draws < cap) {
        const std::size_t m = std::min(kBatch, cap - draws);
        detail::parallel_chunks(m, threads, [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t j = b; j < e; ++j) {
                RandomStream rng(seed, draws + j);
                const IterationSample s = run_link_iteration(cfg, rng);
                batch_errors[j] =
                    simulate_mpsk_block(s.gamma, cfg.modulation_order, cfg.ber.symbols_per_draw, rng)
                        .first;
            }
        });
        for (std::size_t j = 0; j < m; ++j) errors += batch_errors[j];
        bits += static_cast<std::uint64_t>(m) * bits_per_draw;
        draws += m;
        if (errors >= cfg.ber.target_bit_errors) break;
    }

    BerEstimate est;
    est.bit_errors = errors;
    est.bits_simulated = bits;
    est.channel_draws = draws;
    est.ber = static_cast<double>(errors) / static_cast<double>(bits);
    est.ci95_halfwidth =
        1.96 * std::sqrt(est.ber * (1.0 - est.ber) / static_cast<double>(bits));
    est.low_confidence = errors < 100;
    return est;
}

/// Semi-analytic estimator: averages the exact conditional M-PSK SEP over the
/// simulated SNR samples, divided by log2(M). Shares the per-iteration streams
/// with simulate_snr_samples.
inline double semi_analytic_ber(const SystemConfig& cfg, std::uint64_t seed, unsigned threads = 0,
                                std::size_t count = 0) {
    const std::size_t n = count != 0 ? count : cfg.n_iterations;
    if (n == 0) throw std::invalid_argument("semi_analytic_ber: need at least one sample");
    const std::size_t n_chunks = (n + detail::kChunk - 1) / detail::kChunk;
    std::vector<double> partials(n_chunks, 0.0);
    detail::parallel_chunks(n, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        double acc = 0.0;
        for (std::size_t i = b; i < e; ++i) {
            RandomStream rng(seed, i);
            acc += conditional_sep_mpsk(run_link_iteration(cfg, rng).gamma, cfg.modulation_order);
        }
        partials[c] = acc;
    });
    const double mean_sep = detail::pairwise_sum(partials) / static_cast<double>(n);
    return mean_sep / std::log2(static_cast<double>(cfg.modulation_order));
}

}  // namespace arisim
