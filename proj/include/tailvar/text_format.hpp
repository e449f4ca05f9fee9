// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace tailvar {

/// Render a double with 10 significant digits, locale-independent: fixed
/// notation below 1e6 in magnitude, scientific above. Values survive a
/// print/parse round trip at 10 significant digits.
inline std::string format_number(double x) {
    char buf[48];
    if (std::isfinite(x) && std::abs(x) >= 1e6) {
        std::snprintf(buf, sizeof(buf), "%.9e", x);
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", x);
    }
    return buf;
}

inline std::string format_number(int x) { return std::to_string(x); }

}  // namespace tailvar
