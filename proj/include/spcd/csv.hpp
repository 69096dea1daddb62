#pragma once

// Locale-independent numeric formatting for CSV output: shortest
// representation that round-trips through a double, period decimal
// separator, LF newlines.

#include <charconv>
#include <cstdint>
#include <string>

namespace spcd {

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::string format_u64(std::uint64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace spcd
