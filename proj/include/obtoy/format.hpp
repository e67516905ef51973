#pragma once

// Shortest round-trip decimal formatting: values written by the CSV and
// config writers re-read bit-identically.

#include <charconv>
#include <string>
#include <system_error>

namespace obtoy {

inline std::string fmt_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string fmt_int(long long x) { return std::to_string(x); }

}  // namespace obtoy
