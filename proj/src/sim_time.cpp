#include "powervp/sim_time.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace powervp {

namespace {

struct Unit {
    std::string_view suffix;
    std::uint64_t ns;
};

// Longest suffixes first so "ms" is not read as "s" and "min" not as "ns".
constexpr std::array<Unit, 6> kUnits{{
    {"min", 60'000'000'000ULL},
    {"ns", 1ULL},
    {"us", 1'000ULL},
    {"ms", 1'000'000ULL},
    {"h", 3'600'000'000'000ULL},
    {"s", 1'000'000'000ULL},
}};

}  // namespace

SimTime parse_duration(std::string_view spec) {
    const std::string original(spec);
    for (const auto& unit : kUnits) {
        if (spec.size() <= unit.suffix.size() || !spec.ends_with(unit.suffix)) continue;
        const auto number = spec.substr(0, spec.size() - unit.suffix.size());
        // Integers are parsed exactly; fractions go through double.
        std::uint64_t whole = 0;
        auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), whole);
        if (ec == std::errc{} && end == number.data() + number.size()) {
            if (whole == 0) throw std::invalid_argument("duration must be positive: " + original);
            if (whole > std::numeric_limits<std::uint64_t>::max() / unit.ns)
                throw std::invalid_argument("duration overflows: " + original);
            return SimTime{whole * unit.ns};
        }
        double value = 0.0;
        auto [dend, dec] = std::from_chars(number.data(), number.data() + number.size(), value);
        if (dec != std::errc{} || dend != number.data() + number.size() || !std::isfinite(value))
            throw std::invalid_argument("malformed duration: " + original);
        const double ns = std::round(value * static_cast<double>(unit.ns));
        if (ns <= 0.0) throw std::invalid_argument("duration must be positive: " + original);
        if (ns >= 1.8e19) throw std::invalid_argument("duration overflows: " + original);
        return SimTime{static_cast<std::uint64_t>(ns)};
    }
    throw std::invalid_argument("duration needs a unit (ns, us, ms, s, min, h): " + original);
}

std::string format_duration(SimTime t) {
    static constexpr std::array<std::pair<std::uint64_t, const char*>, 5> units{{
        {3'600'000'000'000ULL, "h"},
        {1'000'000'000ULL, "s"},
        {1'000'000ULL, "ms"},
        {1'000ULL, "us"},
        {1ULL, "ns"},
    }};
    if (t.ns == 0) return "0ns";
    for (const auto& [scale, name] : units) {
        if (t.ns % scale == 0) return std::to_string(t.ns / scale) + name;
    }
    return std::to_string(t.ns) + "ns";
}

}  // namespace powervp
