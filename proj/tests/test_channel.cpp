// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "arisim/channel.hpp"

using namespace arisim;

TEST_CASE("link distances", "[channel]") {
    SECTION("degenerate placement at the Tx") {
        const auto d = link_distances({0.0, 0.0, 50.0});
        REQUIRE(d.d1_m == 0.0);
        REQUIRE(d.d2_m == 50.0);
    }
    SECTION("default placement") {
        const auto d = link_distances({5.0, 5.0, 50.0});
        REQUIRE(std::abs(d.d1_m - 7.0711) < 1e-4);
        REQUIRE(std::abs(d.d2_m - 45.2769) < 1e-4);
    }
    SECTION("3-4-5 triangle with the Rx under the surface") {
        const auto d = link_distances({3.0, 4.0, 4.0});
        REQUIRE(d.d1_m == 5.0);
        REQUIRE(d.d2_m == 3.0);
    }
    SECTION("rejects bad geometry") {
        REQUIRE_THROWS_AS(link_distances({-1.0, 5.0, 50.0}), std::invalid_argument);
        REQUIRE_THROWS_AS(link_distances({5.0, 60.0, 50.0}), std::invalid_argument);
        REQUIRE_THROWS_AS(link_distances({std::nan(""), 5.0, 50.0}), std::invalid_argument);
        REQUIRE_THROWS_AS(link_distances({5.0, 5.0, -50.0}), std::invalid_argument);
    }
}

TEST_CASE("InH path loss", "[channel]") {
    REQUIRE(path_loss_db(1.0, 1.0, true) == Catch::Approx(32.4).margin(1e-12));
    REQUIRE(std::abs(path_loss_db(10.0, 28.0, true) - 78.643) < 5e-4);
    REQUIRE(std::abs(path_loss_db(10.0, 28.0, false) - 93.243) < 5e-4);

    SECTION("NLOS never below LOS") {
        for (double d : {0.5, 1.0, 3.0, 7.07, 20.0, 45.3, 120.0})
            for (double f : {1.0, 6.0, 28.0, 60.0})
                REQUIRE(path_loss_db(d, f, false) >= path_loss_db(d, f, true));
    }
    SECTION("the max clause binds below 1 m") {
        // 31.9 log10(d) < 17.3 log10(d) for d < 1, so the LOS term takes over
        REQUIRE(path_loss_db(0.5, 28.0, false) == path_loss_db(0.5, 28.0, true));
    }
    SECTION("rejects non-positive arguments") {
        REQUIRE_THROWS_AS(path_loss_db(0.0, 28.0, true), std::invalid_argument);
        REQUIRE_THROWS_AS(path_loss_db(-3.0, 28.0, true), std::invalid_argument);
        REQUIRE_THROWS_AS(path_loss_db(10.0, 0.0, true), std::invalid_argument);
    }
}

TEST_CASE("InH LOS probability", "[channel]") {
    REQUIRE(los_probability(5.0) == 1.0);
    REQUIRE(los_probability(0.3) == 1.0);
    REQUIRE(std::abs(los_probability(49.0) - 0.5372) < 1e-4);
    REQUIRE(std::abs(los_probability(100.0) - 0.4244) < 1e-4);

    SECTION("non-increasing within each branch, always in (0, 1]") {
        double prev = los_probability(5.0 + 1e-9);
        for (double d = 6.0; d <= 49.0; d += 1.0) {
            const double p = los_probability(d);
            REQUIRE(p <= prev);
            REQUIRE(p > 0.0);
            REQUIRE(p <= 1.0);
            prev = p;
        }
        prev = los_probability(49.0 + 1e-9);
        for (double d = 50.0; d <= 500.0; d += 10.0) {
            const double p = los_probability(d);
            REQUIRE(p <= prev);
            REQUIRE(p > 0.0);
            prev = p;
        }
    }
    SECTION("rejects non-positive or non-finite") {
        REQUIRE_THROWS_AS(los_probability(0.0), std::invalid_argument);
        REQUIRE_THROWS_AS(los_probability(std::nan("")), std::invalid_argument);
    }
}

namespace {

double mean_abs2(const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("channel vector statistics", "[channel]") {
    SECTION("Rayleigh, unit path loss: E|h|^2 = 1") {
        RandomStream rng(101, 0);
        double acc = 0.0;
        const std::size_t draws = 250000;  // 1e6 entries at n = 4
        for (std::size_t i = 0; i < draws; ++i) acc += mean_abs2(draw_channel_vector(4, 0.0, 0.0, rng));
        REQUIRE(std::abs(acc / draws - 1.0) < 0.01);
    }
    SECTION("huge K approaches a unit-modulus entry") {
        RandomStream rng(7, 3);
        const auto v = draw_channel_vector(1, 1e9, 0.0, rng);
        REQUIRE(std::abs(std::abs(v[0]) - 1.0) < 1e-4);
    }
    SECTION("Rician K=5 at 20 dB loss: E|h|^2 = 0.01") {
        RandomStream rng(55, 1);
        double acc = 0.0;
        const std::size_t draws = 250000;
        for (std::size_t i = 0; i < draws; ++i) acc += mean_abs2(draw_channel_vector(4, 5.0, 20.0, rng));
        REQUIRE(std::abs(acc / draws - 0.01) < 0.01 * 0.01);
    }
    SECTION("second moment equals 1/lambda within 3 standard errors, any K") {
        for (const auto& [k, lambda_db] : std::vector<std::pair<double, double>>{
                 {0.0, 10.0}, {5.0, 30.0}, {20.0, 0.0}}) {
            RandomStream rng(909, static_cast<std::uint64_t>(k * 7 + lambda_db));
            const std::size_t n_entries = 200000;
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < n_entries / 8; ++i) {
                for (const auto& x : draw_channel_vector(8, k, lambda_db, rng)) {
                    const double p = std::norm(x);
                    s1 += p;
                    s2 += p * p;
                }
            }
            const double n = static_cast<double>(n_entries);
            const double mean = s1 / n;
            const double se = std::sqrt((s2 / n - mean * mean) / n);
            const double expected = db_to_linear(-lambda_db);
            REQUIRE(std::abs(mean - expected) < 3.0 * se);
        }
    }
    SECTION("rejects invalid arguments") {
        RandomStream rng(1, 1);
        REQUIRE_THROWS_AS(draw_channel_vector(0, 0.0, 0.0, rng), std::invalid_argument);
        REQUIRE_THROWS_AS(draw_channel_vector(4, -1.0, 0.0, rng), std::invalid_argument);
        REQUIRE_THROWS_AS(draw_channel_vector(4, 0.0, std::nan(""), rng), std::invalid_argument);
    }
}

TEST_CASE("Rayleigh magnitude passes a KS test against its CDF", "[channel]") {
    const double lambda_db = 12.0;
    const double lambda = db_to_linear(lambda_db);
    RandomStream rng(2024, 5);
    const std::size_t n = 100000;
    std::vector<double> mags;
    mags.reserve(n);
    for (std::size_t i = 0; i < n / 10; ++i)
        for (const auto& x : draw_channel_vector(10, 0.0, lambda_db, rng))
            mags.push_back(std::abs(x));
    std::sort(mags.begin(), mags.end());
    double d_stat = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const double cdf = 1.0 - std::exp(-mags[i] * mags[i] * lambda);
        const double hi = static_cast<double>(i + 1) / n - cdf;
        const double lo = cdf - static_cast<double>(i) / n;
        d_stat = std::max({d_stat, hi, lo});
    }
    const double crit_1pct = 1.62762 / std::sqrt(static_cast<double>(n));
    REQUIRE(d_stat < crit_1pct);
}

TEST_CASE("channel draws are deterministic per (seed, stream)", "[channel]") {
    RandomStream a(42, 17), b(42, 17), c(42, 18);
    const auto va = draw_channel_vector(16, 5.0, 60.0, a);
    const auto vb = draw_channel_vector(16, 5.0, 60.0, b);
    const auto vc = draw_channel_vector(16, 5.0, 60.0, c);
    REQUIRE(va == vb);
    REQUIRE(va != vc);
}

TEST_CASE("realizations", "[channel]") {
    const Geometry geo{5.0, 5.0, 50.0};

    SECTION("probabilistic LOS fraction at d1 = 7.071 m") {
        FadingParams fading;  // probabilistic both
        std::size_t los_count = 0;
        const std::size_t draws = 100000;
        for (std::size_t i = 0; i < draws; ++i) {
            RandomStream rng(31337, i);
            los_count += draw_realization(geo, fading, 1, rng).los_h ? 1 : 0;
        }
        const double frac = static_cast<double>(los_count) / draws;
        REQUIRE(std::abs(frac - 0.9712) < 0.005);
    }

    SECTION("forced modes pin the LOS flags and the path-loss branch") {
        FadingParams fading;
        fading.los_mode_h = LosMode::forced_los;
        fading.los_mode_g = LosMode::forced_nlos;
        RandomStream rng(9, 0);
        const auto cr = draw_realization(geo, fading, 8, rng);
        REQUIRE(cr.los_h);
        REQUIRE_FALSE(cr.los_g);
        const auto [d1, d2] = link_distances(geo);
        REQUIRE(cr.lambda_h == Catch::Approx(db_to_linear(path_loss_db(d1, 28.0, true))));
        REQUIRE(cr.lambda_g == Catch::Approx(db_to_linear(path_loss_db(d2, 28.0, false))));
        REQUIRE(cr.lambda_h > 1.0);
        REQUIRE(cr.lambda_g > 1.0);
        REQUIRE(cr.h.size() == 8);
        REQUIRE(cr.g.size() == 8);
    }

    SECTION("K = 0 makes forced-LOS and forced-NLOS draws equal after path-loss rescale") {
        FadingParams los_fading;
        los_fading.k1 = los_fading.k2 = 0.0;
        los_fading.los_mode_h = los_fading.los_mode_g = LosMode::forced_los;
        FadingParams nlos_fading = los_fading;
        nlos_fading.los_mode_h = nlos_fading.los_mode_g = LosMode::forced_nlos;

        RandomStream rng_a(77, 4), rng_b(77, 4);
        const auto cr_los = draw_realization(geo, los_fading, 16, rng_a);
        const auto cr_nlos = draw_realization(geo, nlos_fading, 16, rng_b);
        const double scale_h = std::sqrt(cr_nlos.lambda_h / cr_los.lambda_h);
        for (std::size_t i = 0; i < 16; ++i) {
            REQUIRE(std::abs(cr_los.h[i] * (1.0 / scale_h) - cr_nlos.h[i]) <
                    1e-12 * std::abs(cr_nlos.h[i]));
        }
    }

    SECTION("passive benchmark element count") {
        FadingParams fading;
        RandomStream rng(5, 5);
        const auto cr = draw_realization(geo, fading, 2 * 128, rng);
        REQUIRE(cr.h.size() == 256);
        REQUIRE(cr.g.size() == 256);
    }
}
