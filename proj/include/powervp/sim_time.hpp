#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace powervp {

/// Simulated time as an integer count of nanoseconds since t=0.
struct SimTime {
    std::uint64_t ns = 0;

    constexpr SimTime() = default;
    constexpr explicit SimTime(std::uint64_t nanoseconds) : ns(nanoseconds) {}

    static constexpr SimTime zero() { return SimTime{0}; }
    static constexpr SimTime infinity() { return SimTime{std::numeric_limits<std::uint64_t>::max()}; }
    static constexpr SimTime from_us(std::uint64_t us) { return SimTime{us * 1'000ULL}; }
    static constexpr SimTime from_ms(std::uint64_t ms) { return SimTime{ms * 1'000'000ULL}; }
    static constexpr SimTime from_s(std::uint64_t s) { return SimTime{s * 1'000'000'000ULL}; }

    constexpr bool is_infinite() const { return ns == std::numeric_limits<std::uint64_t>::max(); }
    constexpr double seconds() const { return static_cast<double>(ns) * 1e-9; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime rhs) const { return SimTime{ns + rhs.ns}; }
    constexpr SimTime operator-(SimTime rhs) const { return SimTime{ns - rhs.ns}; }
    constexpr SimTime& operator+=(SimTime rhs) {
        ns += rhs.ns;
        return *this;
    }
};

constexpr SimTime min(SimTime a, SimTime b) { return a < b ? a : b; }
constexpr SimTime max(SimTime a, SimTime b) { return a < b ? b : a; }

/// Parses "<number><unit>" with unit one of ns, us, ms, s, min, h. Fractions are
/// allowed ("1.5s"); the result is rounded to the nearest nanosecond and must be
/// strictly positive. Throws std::invalid_argument on malformed input.
SimTime parse_duration(std::string_view spec);

/// Human-readable rendering using the largest unit that divides the value.
std::string format_duration(SimTime t);

}  // namespace powervp
