#include <random>

#include "catch_amalgamated.hpp"
#include "powervp/errors.hpp"
#include "powervp/func_bus.hpp"

using namespace powervp;

namespace {

BusHandler echo(std::uint32_t tag, std::uint32_t latency = 0) {
    return [tag, latency](const BusRequest& r) { return BusResponse{tag << 16 | r.address, false, latency}; };
}

}  // namespace

TEST_CASE("requests reach the owning region with offset-relative addresses") {
    FuncBus bus(10);
    bus.register_peripheral("mic", 0x1A100000, 0x10, echo(1, 3));
    bus.register_peripheral("pwrctl", 0x1A100100, 0x10, echo(2));

    auto r = bus.route({0x1A100008, false, 0, 4, 1});
    CHECK_FALSE(r.error);
    CHECK(r.data == (1u << 16 | 0x8));
    CHECK(r.latency == 13);

    r = bus.route({0x1A100104, true, 7, 4, 1});
    CHECK(r.data == (2u << 16 | 0x4));
    CHECK(r.latency == 10);
}

TEST_CASE("unmapped and straddling accesses return error responses") {
    FuncBus bus;
    bus.register_peripheral("a", 0x1000, 0x10, echo(1));
    CHECK(bus.route({0x0FFC, false, 0, 4, 0}).error);
    CHECK(bus.route({0x1010, false, 0, 4, 0}).error);
    CHECK(bus.route({0x100E, false, 0, 4, 0}).error);  // crosses the end
    CHECK_FALSE(bus.route({0x100C, false, 0, 4, 0}).error);
}

TEST_CASE("overlapping and malformed regions are rejected") {
    FuncBus bus;
    bus.register_peripheral("a", 0x1000, 0x100, echo(1));
    CHECK_THROWS_AS(bus.register_peripheral("b", 0x10FC, 0x10, echo(2)), OverlapError);
    CHECK_THROWS_AS(bus.register_peripheral("c", 0x0F00, 0x104, echo(3)), OverlapError);
    CHECK_THROWS_AS(bus.register_peripheral("d", 0x0800, 0x1000, echo(4)), OverlapError);
    CHECK_THROWS_AS(bus.register_peripheral("e", 0x2000, 0, echo(5)), Error);
    CHECK_THROWS_AS(bus.register_peripheral("f", 0x2002, 0x10, echo(6)), Error);
    CHECK_THROWS_AS(bus.register_peripheral("g", 0xFFFFFFF0, 0x20, echo(7)), Error);
    CHECK_NOTHROW(bus.register_peripheral("h", 0x1100, 0x10, echo(8)));  // adjacent is fine
    CHECK(bus.regions().size() == 2);
}

TEST_CASE("decode agrees with a linear scan over random layouts") {
    std::mt19937 rng(11);
    for (int layout = 0; layout < 50; ++layout) {
        FuncBus bus;
        std::vector<Region> placed;
        std::uniform_int_distribution<std::uint32_t> base(0, 0x3FFF), size(1, 64);
        for (int k = 0; k < 40; ++k) {
            const std::uint32_t b = base(rng) * 4, s = size(rng) * 4;
            try {
                bus.register_peripheral("r" + std::to_string(k), b, s, echo(k));
                placed.push_back({"r" + std::to_string(k), b, s});
            } catch (const OverlapError&) {
            }
        }
        const auto regions = bus.regions();
        REQUIRE(regions.size() == placed.size());
        std::uniform_int_distribution<std::uint32_t> addr(0, 0x10100);
        for (int q = 0; q < 2000; ++q) {
            const std::uint32_t a = addr(rng);
            const std::uint32_t w = 1u << (q % 3);
            int expect = -1;
            for (std::size_t i = 0; i < regions.size(); ++i) {
                if (a >= regions[i].base && std::uint64_t{a} + w <= std::uint64_t{regions[i].base} + regions[i].size) {
                    expect = static_cast<int>(i);
                }
            }
            CHECK(bus.decode(a, w) == expect);
        }
    }
}
