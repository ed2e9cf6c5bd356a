#pragma once

#include <charconv>
#include <string>

namespace hypmet {

/// Shortest round-trip decimal form of a double. Pure function of the bit
/// pattern, so equal inputs format to equal bytes on every run.
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_row(std::initializer_list<double> cells) {
    std::string out;
    bool first = true;
    for (double c : cells) {
        if (!first) out.push_back(',');
        out += fmt_double(c);
        first = false;
    }
    out.push_back('\n');
    return out;
}

} // namespace hypmet
