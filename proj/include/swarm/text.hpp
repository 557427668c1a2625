#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swarm {

// Shortest round-trip text form of a double; every file the project writes
// goes through this so that outputs are byte-reproducible.
inline std::string format_double(double v)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format double");
    }
    return std::string(buf, end);
}

inline double parse_double(std::string_view text)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("not a number: '" + std::string(text) + "'");
    }
    return v;
}

inline std::uint64_t parse_uint(std::string_view text)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("not an unsigned integer: '" + std::string(text) + "'");
    }
    return v;
}

} // namespace swarm
