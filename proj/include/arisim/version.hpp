// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace arisim {

inline constexpr const char* kToolName = "arisim";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace arisim
