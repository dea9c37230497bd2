#pragma once

#include <cstdio>
#include <string>

namespace tierperf {

/// Fixed 6-significant-digit formatting; keeps CSV output byte-stable.
inline std::string format_g6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

}  // namespace tierperf
