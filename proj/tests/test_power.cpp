// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "arisim/power.hpp"

using namespace arisim;

TEST_CASE("PA consumption, square-root law", "[power]") {
    REQUIRE(pa_power(1.0, 1.0, 1.2) == Catch::Approx(1.2));
    REQUIRE(pa_power(0.0, 1.0, 1.2) == 0.0);
    REQUIRE(pa_power(0.25, 1.0, 1.2) == Catch::Approx(0.6));
    REQUIRE_THROWS_AS(pa_power(1.1, 1.0, 1.2), std::invalid_argument);
    REQUIRE_THROWS_AS(pa_power(-0.1, 1.0, 1.2), std::invalid_argument);
    REQUIRE_THROWS_AS(pa_power(0.5, 0.0, 1.2), std::invalid_argument);

    SECTION("concave and increasing on [0, P_max], full-scale value beta * P_max") {
        const double p_max = 2.0, beta = 1.2;
        double prev = 0.0;
        double prev_slope = 1e300;
        for (double p = 0.1; p <= p_max + 1e-12; p += 0.1) {
            const double val = pa_power(p, p_max, beta);
            REQUIRE(val > prev);
            const double slope = (val - prev) / 0.1;
            REQUIRE(slope <= prev_slope);
            prev = val;
            prev_slope = slope;
        }
        REQUIRE(pa_power(p_max, p_max, beta) == Catch::Approx(beta * p_max));
    }
}

TEST_CASE("general PA class law agrees with the square-root form at eps = 0.5", "[power]") {
    for (double p_max : {0.01, 0.1, 1.0, 100.0}) {
        for (double frac : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
            const double p_out = frac * p_max;
            const double a = pa_power_class(p_out, p_max, 1.2, 0.5);
            const double b = pa_power(p_out, p_max, 1.2);
            REQUIRE(std::abs(a - b) <= 1e-12 * b);
            // efficiency identity: P_out / P_amp = eta_max (P_out / P_max)^eps
            const double eff = p_out / a;
            const double eff_law = (1.0 / 1.2) * std::pow(p_out / p_max, 0.5);
            REQUIRE(std::abs(eff - eff_law) <= 1e-12 * eff_law);
        }
    }
    REQUIRE_THROWS_AS(pa_power_class(0.5, 1.0, 1.2, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(pa_power_class(0.5, 1.0, 1.2, 1.5), std::invalid_argument);
}

TEST_CASE("RIS control power", "[power]") {
    PowerParams p;
    REQUIRE(ris_power(128, p) == Catch::Approx(0.9984));
    REQUIRE(ris_power(0, p) == 0.0);
    REQUIRE(ris_power(256, p) == Catch::Approx(1.9968));
}

TEST_CASE("total power, amplifying design", "[power]") {
    PowerParams p;

    SECTION("reference operating point") {
        const PowerBreakdown b = total_power_active(1.0, 1.0, 1.0, 128, p);
        REQUIRE(b.transmit_pa_w == Catch::Approx(1.2));
        REQUIRE(b.static_tx_w == Catch::Approx(7.9433).margin(1e-4));
        REQUIRE(b.static_rx_w == Catch::Approx(0.01));
        REQUIRE(b.ris_control_w == Catch::Approx(0.9984));
        REQUIRE(b.inter_ris_pa_w == Catch::Approx(1.2));
        REQUIRE(b.total_w == Catch::Approx(11.3517).margin(1e-3));
        REQUIRE(b.total_w == Catch::Approx(b.transmit_pa_w + b.static_tx_w + b.static_rx_w +
                                           b.ris_control_w + b.inter_ris_pa_w));
    }
    SECTION("idle inter-RIS PA") {
        const PowerBreakdown b = total_power_active(1.0, 0.0, 1.0, 128, p);
        REQUIRE(b.inter_ris_pa_w == 0.0);
        REQUIRE(b.total_w == Catch::Approx(11.3517 - 1.2).margin(1e-3));
    }
    SECTION("element count scales only the control term") {
        const PowerBreakdown b1 = total_power_active(1.0, 0.5, 1.0, 128, p);
        const PowerBreakdown b2 = total_power_active(1.0, 0.5, 1.0, 256, p);
        REQUIRE(b2.total_w - b1.total_w == Catch::Approx(128 * p.p_element_w));
    }
    SECTION("both panels can be charged") {
        PowerParams both = p;
        both.panels_counted = 2;
        const PowerBreakdown b = total_power_active(1.0, 0.5, 1.0, 128, both);
        REQUIRE(b.ris_control_w == Catch::Approx(2 * 0.9984));
    }
}

TEST_CASE("total power, passive design", "[power]") {
    PowerParams p;
    const PowerBreakdown b = total_power_passive(1.0, 256, p);
    REQUIRE(b.inter_ris_pa_w == 0.0);
    REQUIRE(b.total_w == Catch::Approx(11.1501).margin(1e-3));

    SECTION("differs from the amplifying total exactly by the inter-RIS PA term") {
        const PowerBreakdown act = total_power_active(1.0, 0.25, 1.0, 256, p);
        REQUIRE(act.total_w - b.total_w == Catch::Approx(pa_power(0.25, 1.0, p.beta)));
    }
    SECTION("zero transmit power leaves the static and control terms") {
        const PowerBreakdown z = total_power_passive(0.0, 256, p);
        REQUIRE(z.transmit_pa_w == 0.0);
        REQUIRE(z.total_w == Catch::Approx(b.total_w - 1.2));
    }
}

TEST_CASE("energy efficiency", "[power]") {
    REQUIRE(energy_efficiency(10.0, 180e3, 10.0) == Catch::Approx(180000.0));
    REQUIRE(energy_efficiency(0.0, 180e3, 10.0) == 0.0);
    REQUIRE(energy_efficiency(4.0, 1e6, 8.0) == Catch::Approx(0.5 * energy_efficiency(4.0, 1e6, 4.0)));
    REQUIRE_THROWS_AS(energy_efficiency(1.0, 180e3, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(energy_efficiency(1.0, 180e3, -1.0), std::invalid_argument);
}
