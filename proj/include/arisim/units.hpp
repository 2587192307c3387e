// SPDX-License-Identifier: Apache-2.0
//
// arisim: dB / dBm / watt conversion helpers. Power quantities convert with
// 10^(x/10); amplitude scaling takes the square root of the linear factor.

#pragma once

#include <cmath>

namespace arisim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

inline double watt_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }

}  // namespace arisim
