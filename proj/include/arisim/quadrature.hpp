// SPDX-License-Identifier: Apache-2.0
//
// arisim: adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arisim {

namespace detail {

// 15-point Kronrod abscissae (positive half, descending) with weights, and
// the weights of the embedded 7-point Gauss rule at nodes 1, 3, 5 and center.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

}  // namespace detail

struct QuadratureResult {
    double value;
    double error_estimate;
    std::size_t intervals;
};

/// Integrates f over [lo, hi] to absolute tolerance abs_tol by repeatedly
/// bisecting the interval with the largest Kronrod-vs-Gauss error estimate.
/// Throws std::runtime_error if the interval budget runs out first; a result
/// is never silently returned out of tolerance.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol = 1e-12,
                                    std::size_t max_intervals = 10000) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo) || !(abs_tol > 0.0))
        throw std::invalid_argument("integrate_adaptive: bad interval or tolerance");

    struct Seg {
        double lo, hi, value, err;
    };
    auto rule = [&f](double a, double b) -> Seg {
        const double c = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        const double fc = f(c);
        double k = detail::kGk15Weights[7] * fc;
        double g = detail::kG7Weights[3] * fc;
        for (int i = 0; i < 7; ++i) {
            const double dx = hw * detail::kGk15Nodes[i];
            const double pair = f(c - dx) + f(c + dx);
            k += detail::kGk15Weights[i] * pair;
            if (i % 2 == 1) g += detail::kG7Weights[(i - 1) / 2] * pair;
        }
        return {a, b, k * hw, std::abs(k - g) * hw};
    };

    auto by_err = [](const Seg& x, const Seg& y) { return x.err < y.err; };
    std::vector<Seg> heap;
    heap.reserve(64);
    heap.push_back(rule(lo, hi));
    double total_err = heap.front().err;

    while (total_err > abs_tol && heap.size() < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), by_err);
        const Seg worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo) || !(mid < worst.hi)) {
            // interval at fp resolution, cannot refine further
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_err);
            break;
        }
        total_err -= worst.err;
        for (const Seg& part : {rule(worst.lo, mid), rule(mid, worst.hi)}) {
            total_err += part.err;
            heap.push_back(part);
            std::push_heap(heap.begin(), heap.end(), by_err);
        }
    }

    double value = 0.0;
    double err = 0.0;
    for (const Seg& s : heap) {
        value += s.value;
        err += s.err;
    }
    if (err > abs_tol)
        throw std::runtime_error("integrate_adaptive: tolerance not reached within interval budget");
    return {value, err, heap.size()};
}

}  // namespace arisim
