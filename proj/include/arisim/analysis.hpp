// SPDX-License-Identifier: Apache-2.0
//
// arisim: Gamma-distribution fitting of SNR samples and MGF-based M-PSK
// symbol/bit error probabilities. Everything runs through log-gamma so that
// shapes in the hundreds stay finite.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include "arisim/quadrature.hpp"

namespace arisim {

/// Digamma by upward recurrence into the asymptotic region (x >= 10), then
/// the Bernoulli series; good to ~1e-14 there.
inline double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: require x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

inline double trigamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("trigamma: require x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * inv2 *
        (1.0 / 6 - inv2 * (1.0 / 30 - inv2 * (1.0 / 42 - inv2 * (1.0 / 30 - inv2 * (5.0 / 66)))));
    return acc + inv + 0.5 * inv2 + series;
}

struct GammaFit {
    double k{};               // shape
    double nu{};              // scale, same units as the samples
    std::size_t n_samples{};
    double log_likelihood{};  // nats
};

/// Maximum-likelihood Gamma fit. The shape solves
///   log k - digamma(k) = log(mean) - mean(log)
/// by Newton iteration from the moment estimate k0 = mean^2/var, converged to
/// |dk/k| < 1e-10; the scale is then mean/k, so k*nu matches the sample mean
/// exactly.
inline GammaFit fit_gamma_mle(std::span<const double> samples) {
    if (samples.size() < 100)
        throw std::invalid_argument("fit_gamma_mle: need at least 100 samples");
    double sum = 0.0;
    double sum_log = 0.0;
    for (double x : samples) {
        if (!std::isfinite(x) || !(x > 0.0))
            throw std::invalid_argument("fit_gamma_mle: samples must be positive and finite");
        sum += x;
        sum_log += std::log(x);
    }
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    const double mean_log = sum_log / n;
    double var_acc = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        var_acc += d * d;
    }
    const double var = var_acc / n;
    if (!(var > 0.0)) throw std::invalid_argument("fit_gamma_mle: zero-variance samples");

    const double target = std::log(mean) - mean_log;  // > 0 by Jensen unless degenerate
    if (!(target > 0.0)) throw std::invalid_argument("fit_gamma_mle: degenerate samples");

    double k = mean * mean / var;
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        const double fval = std::log(k) - digamma(k) - target;
        const double fder = 1.0 / k - trigamma(k);  // < 0 for all k > 0
        double next = k - fval / fder;
        if (!(next > 0.0)) next = 0.5 * k;
        converged = std::abs(next - k) < 1e-10 * k;
        k = next;
    }
    if (!converged) throw std::runtime_error("fit_gamma_mle: Newton iteration did not converge");

    const double nu = mean / k;
    const double ll = (k - 1.0) * sum_log - sum / nu - n * (k * std::log(nu) + std::lgamma(k));
    return {k, nu, samples.size(), ll};
}

/// Gamma density x^{k-1} e^{-x/nu} / (nu^k Gamma(k)), evaluated in log space.
inline double gamma_pdf(double x, double k, double nu) {
    if (!(k > 0.0) || !(nu > 0.0)) throw std::invalid_argument("gamma_pdf: require k, nu > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("gamma_pdf: require x >= 0");
    if (x == 0.0) {
        if (k > 1.0) return 0.0;
        if (k == 1.0) return 1.0 / nu;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((k - 1.0) * std::log(x) - x / nu - k * std::log(nu) - std::lgamma(k));
}

/// Gamma MGF (1 - nu s)^{-k}, defined for s < 1/nu.
inline double gamma_mgf(double s, double k, double nu) {
    if (!(k > 0.0) || !(nu > 0.0)) throw std::invalid_argument("gamma_mgf: require k, nu > 0");
    if (!(s < 1.0 / nu)) throw std::domain_error("gamma_mgf: diverges for s >= 1/nu");
    return std::exp(-k * std::log1p(-nu * s));
}

inline void check_psk_order(unsigned m) {
    if (m < 2 || !std::has_single_bit(m))
        throw std::invalid_argument("modulation order must be a power of two >= 2");
}

/// Average M-PSK symbol error probability for Gamma(k, nu) distributed SNR:
///   (1/pi) Int_0^{(M-1)pi/M} (1 + nu sin^2(pi/M) / sin^2 x)^{-k} dx.
inline double sep_mpsk(double k, double nu, unsigned m) {
    check_psk_order(m);
    if (!(k > 0.0) || !(nu > 0.0)) throw std::invalid_argument("sep_mpsk: require k, nu > 0");
    const double s = std::sin(std::numbers::pi / m);
    const double s2 = s * s;
    auto integrand = [k, nu, s2](double x) {
        const double sx = std::sin(x);
        const double sx2 = sx * sx;
        if (!(sx2 > 0.0)) return 0.0;
        return std::exp(-k * std::log1p(nu * s2 / sx2));
    };
    const double hi = (static_cast<double>(m) - 1.0) * std::numbers::pi / m;
    const double ps = integrate_adaptive(integrand, 0.0, hi, 1e-12).value / std::numbers::pi;
    return std::clamp(ps, 0.0, (static_cast<double>(m) - 1.0) / m);
}

/// BPSK bit error probability in its direct single-integral form,
///   (1/pi) Int_0^{pi/2} (1 + nu / sin^2 x)^{-k} dx.
/// Independent of sep_mpsk's code path; the two agree to quadrature tolerance
/// at M = 2.
inline double bep_bpsk(double k, double nu) {
    if (!(k > 0.0) || !(nu > 0.0)) throw std::invalid_argument("bep_bpsk: require k, nu > 0");
    auto integrand = [k, nu](double x) {
        const double sx = std::sin(x);
        const double sx2 = sx * sx;
        if (!(sx2 > 0.0)) return 0.0;
        return std::exp(-k * std::log1p(nu / sx2));
    };
    const double pe =
        integrate_adaptive(integrand, 0.0, 0.5 * std::numbers::pi, 1e-12).value / std::numbers::pi;
    return std::clamp(pe, 0.0, 0.5);
}

/// Gray-mapped bit error probability, P_s / log2(M). Exact for M = 2.
inline double bep(double k, double nu, unsigned m) {
    return sep_mpsk(k, nu, m) / std::log2(static_cast<double>(m));
}

/// Conditional M-PSK SEP on AWGN at instantaneous SNR gamma:
///   (1/pi) Int_0^{(M-1)pi/M} exp(-gamma sin^2(pi/M) / sin^2 x) dx.
inline double conditional_sep_mpsk(double gamma, unsigned m) {
    check_psk_order(m);
    if (!(gamma >= 0.0)) throw std::invalid_argument("conditional_sep_mpsk: require gamma >= 0");
    const double s = std::sin(std::numbers::pi / m);
    const double s2 = s * s;
    auto integrand = [gamma, s2](double x) {
        const double sx = std::sin(x);
        const double sx2 = sx * sx;
        if (!(sx2 > 0.0)) return 0.0;
        return std::exp(-gamma * s2 / sx2);
    };
    const double hi = (static_cast<double>(m) - 1.0) * std::numbers::pi / m;
    const double ps = integrate_adaptive(integrand, 0.0, hi, 1e-12).value / std::numbers::pi;
    return std::clamp(ps, 0.0, (static_cast<double>(m) - 1.0) / m);
}

}  // namespace arisim
