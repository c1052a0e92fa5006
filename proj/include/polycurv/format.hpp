#pragma once

#include <cstdio>
#include <string>

namespace polycurv::detail {

/// Decimal form with 17 significant digits: round-trips any double.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace polycurv::detail
