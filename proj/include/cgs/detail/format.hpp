#pragma once

#include <cstdio>
#include <string>

namespace cgs::detail {

/// Render a real with 12 significant digits ("%.12g"), enough to round-trip
/// every value this library reports.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

} // namespace cgs::detail
