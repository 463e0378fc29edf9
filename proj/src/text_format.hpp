#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "graphdiscord/linalg.hpp"

namespace gd::detail {

// 17 significant digits, round-trips any double. Negative zero prints as 0.
inline std::string format_real(double x) {
    if(x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_complex_pair(Complex z) {
    return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

inline std::string json_string(std::string_view s) {
    std::string out = "\"";
    for(char c : s) {
        switch(c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

} // namespace gd::detail
