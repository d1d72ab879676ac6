#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>

namespace legendre::csv {

/// Shortest decimal string that round-trips to the same double.
inline std::string format(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline std::string format(std::uint64_t v) {
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace legendre::csv
