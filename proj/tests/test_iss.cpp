#include <random>

#include "catch_amalgamated.hpp"
#include "powervp/errors.hpp"
#include "powervp/func_bus.hpp"
#include "powervp/iss.hpp"
#include "powervp/rv32.hpp"
#include "random_program.hpp"
#include "ref_rv32.hpp"

using namespace powervp;
using namespace powervp::rv32;
using Catch::Approx;

namespace {

std::uint64_t oracle_cycles(const ref::Machine& m, const IssConfig& cfg) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < kInstrClassCount; ++c) {
        auto it = m.counts.find(config_key(static_cast<InstrClass>(c)));
        if (it != m.counts.end()) total += it->second * cfg.cycles[c];
    }
    return total;
}

IssConfig distinct_cycles() {
    IssConfig cfg;
    cfg.cycles = {1, 3, 35, 2, 4, 5, 1, 6, 7};
    return cfg;
}

}  // namespace

TEST_CASE("worked example: addi, addi, mul, halt") {
    IssConfig cfg;
    cfg.clock_hz = 1'000'000'000;
    cfg.cycles[static_cast<std::size_t>(InstrClass::Alu)] = 1;
    cfg.cycles[static_cast<std::size_t>(InstrClass::Mul)] = 2;
    const std::vector<std::uint32_t> prog{addi(ra, zero, 5), addi(sp, zero, 7), mul(gp, ra, sp), ebreak()};
    Iss iss(cfg, prog);
    CHECK_FALSE(iss.step_until(SimTime{100}).has_value());
    CHECK(iss.reg(3) == 35);
    CHECK(iss.cycle_count() == 4);
    CHECK(iss.instret() == 3);
    CHECK(iss.halted());
    CHECK(iss.now() == SimTime{4});
}

TEST_CASE("step_until stops at or past the requested time") {
    IssConfig cfg;
    cfg.clock_hz = 100'000'000;  // 10 ns per cycle
    Assembler a;
    a.label("spin");
    a.emit(addi(t0, t0, 1));
    a.jal(zero, "spin");
    Iss iss(cfg, a.finish());
    auto next = iss.step_until(SimTime{95});
    REQUIRE(next);
    CHECK(*next >= SimTime{95});
    CHECK(iss.now() == *next);
    // addi (1 cycle) + jal (2 cycles) per iteration = 30 ns.
    CHECK(iss.now() == SimTime{100});
    CHECK(iss.reg(t0) == 4);
}

TEST_CASE("random programs match the reference interpreter") {
    std::mt19937 rng(1234);
    const IssConfig cfg = distinct_cycles();
    for (int trial = 0; trial < 300; ++trial) {
        const auto prog = testprog::random_program(rng, 200);
        ref::Machine ref(prog);
        ref.run();
        REQUIRE(ref.halted);

        Iss iss(cfg, prog);
        iss.step_until(SimTime::infinity());
        REQUIRE(iss.halted());
        for (std::size_t r = 0; r < 32; ++r) {
            INFO("trial " << trial << " x" << r);
            CHECK(iss.reg(r) == ref.x[r]);
        }
        CHECK(iss.pc() == ref.pc);
        for (std::uint32_t addr = 0x4000; addr < 0x4400; addr += 4) CHECK(iss.read_word(addr) == ref.rd32(addr));
        CHECK(iss.instret() == ref.retired);
        CHECK(iss.cycle_count() == oracle_cycles(ref, cfg));
    }
}

TEST_CASE("division edge cases follow RV32M") {
    const std::vector<std::uint32_t> prog{
        lui(a0, 0x80000),      // INT_MIN
        addi(a1, zero, -1),
        div(a2, a0, a1),       // overflow -> INT_MIN
        rem(a3, a0, a1),       // overflow -> 0
        div(a4, a0, zero),     // /0 -> -1
        divu(a5, a0, zero),    // /0 -> 2^32-1
        rem(a6, a1, zero),     // %0 -> dividend
        remu(a7, a0, zero),
        addi(t0, zero, -7),
        addi(t1, zero, 2),
        div(t2, t0, t1),       // truncates toward zero -> -3
        rem(s2, t0, t1),       // -1
        ebreak(),
    };
    Iss iss(IssConfig{}, prog);
    iss.step_until(SimTime::infinity());
    CHECK(iss.reg(a2) == 0x80000000u);
    CHECK(iss.reg(a3) == 0);
    CHECK(iss.reg(a4) == 0xffffffffu);
    CHECK(iss.reg(a5) == 0xffffffffu);
    CHECK(iss.reg(a6) == 0xffffffffu);
    CHECK(iss.reg(a7) == 0x80000000u);
    CHECK(iss.reg(t2) == static_cast<std::uint32_t>(-3));
    CHECK(iss.reg(s2) == static_cast<std::uint32_t>(-1));
}

TEST_CASE("x0 stays zero") {
    Iss iss(IssConfig{}, std::vector<std::uint32_t>{addi(zero, zero, 5), lui(zero, 1), ebreak()});
    iss.step_until(SimTime::infinity());
    CHECK(iss.reg(0) == 0);
}

TEST_CASE("faults carry kind and pc") {
    auto fault_of = [](std::vector<std::uint32_t> prog) {
        Iss iss(IssConfig{}, prog);
        try {
            iss.step_until(SimTime::infinity());
        } catch (const CoreFault& f) {
            return std::make_pair(f.kind(), f.pc());
        }
        FAIL("no fault");
        return std::make_pair(FaultKind::BusError, 0u);
    };
    CHECK(fault_of({addi(t0, zero, 1), 0xffffffffu}) == std::make_pair(FaultKind::IllegalInstruction, 4u));
    CHECK(fault_of({ecall()}).first == FaultKind::IllegalInstruction);
    CHECK(fault_of({addi(t0, zero, 2), lw(t1, t0, 0)}).first == FaultKind::MisalignedAccess);
    CHECK(fault_of({lui(t0, 0x20000), lw(t1, t0, 0)}).first == FaultKind::AccessFault);
    CHECK(fault_of({lui(t0, 0x20000), sw(t1, t0, 0)}).first == FaultKind::AccessFault);
    CHECK(fault_of({jal(zero, 6)}).first == FaultKind::MisalignedAccess);
    CHECK(fault_of({lui(t0, 0x1A100), lw(t1, t0, 0)}).first == FaultKind::BusError);  // no bus attached
    CHECK(fault_of({addi(t0, zero, 1)}).first == FaultKind::IllegalInstruction);      // runs into zeroed memory
}

TEST_CASE("power sample: 1000 ALU instructions in a 100 us window") {
    IssConfig cfg;
    std::vector<std::uint32_t> prog(1000, addi(t0, t0, 1));
    prog.push_back(ebreak());
    Iss iss(cfg, prog);
    iss.step_until(SimTime::from_us(100));
    const auto s = iss.get_instant_power(SimTime::from_us(100));
    CHECK(s.dynamic_w == Approx(1000 * 10e-12 / 1e-4));
    CHECK(s.leakage_w == Approx(1e-3));
    CHECK(s.state_tag == "ACTIVE");

    const auto empty = iss.get_instant_power(SimTime::from_us(200));
    CHECK(empty.dynamic_w == 0.0);
}

TEST_CASE("window energies add up to the instruction energy") {
    std::mt19937 rng(99);
    const auto prog = testprog::random_program(rng, 3000, 0xC000);
    IssConfig cfg;
    cfg.clock_hz = 10'000'000;

    Iss whole(cfg, prog);
    whole.step_until(SimTime::infinity());
    const SimTime end = whole.now() + SimTime{1};
    const double single = whole.get_instant_power(end).dynamic_w * end.seconds();

    Iss split(cfg, prog);
    double sum = 0.0;
    SimTime prev{};
    for (SimTime t = SimTime::from_us(7); prev < end; t += SimTime::from_us(7)) {
        const SimTime w = min(t, end);
        split.step_until(w);
        sum += split.get_instant_power(w).dynamic_w * (w - prev).seconds();
        prev = w;
    }
    double oracle = 0.0;
    for (std::size_t c = 0; c < kInstrClassCount; ++c) oracle += whole.class_counts()[c] * cfg.energy_j[c];
    CHECK(whole.total_dynamic_energy() == Approx(oracle).epsilon(1e-12));
    CHECK(single == Approx(oracle).epsilon(1e-12));
    CHECK(sum == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("MMIO accesses go through the bus and add its latency") {
    IssConfig cfg;
    cfg.clock_hz = 1'000'000'000;
    FuncBus bus(10);
    std::uint32_t last_write = 0;
    bus.register_peripheral("dev", 0x1A100000, 0x10, [&](const BusRequest& r) {
        if (r.write) last_write = r.data;
        return BusResponse{0xfffffff0u | r.address, r.address == 0xC, 5};
    });
    Assembler a;
    a.li(s0, 0x1A100000);
    a.emit(lb(t0, s0, 4));
    a.emit(addi(t1, zero, 0x55));
    a.emit(sw(t1, s0, 8));
    a.emit(ebreak());
    Iss iss(cfg, a.finish());
    iss.set_bus_port([&](const BusRequest& r) { return bus.route(r); });
    iss.step_until(SimTime::infinity());
    CHECK(iss.reg(t0) == static_cast<std::uint32_t>(static_cast<std::int8_t>(0xf4)));
    CHECK(last_write == 0x55);
    // lui+addi (2 alu) + load 2 + alu 1 + store 2, plus 2 x (10 + 5) bus cycles.
    CHECK(iss.cycle_count() == 2 + 2 + 1 + 2 + 30);

    Assembler b;
    b.li(s0, 0x1A100000);
    b.emit(lw(t0, s0, 0xC));
    Iss bad(cfg, b.finish());
    bad.set_bus_port([&](const BusRequest& r) { return bus.route(r); });
    CHECK_THROWS_AS(bad.step_until(SimTime::infinity()), CoreFault);
}

TEST_CASE("WFE blocks until data-ready and restores the requested state") {
    IssConfig cfg;
    cfg.clock_hz = 1'000'000'000;
    Assembler a;
    a.li(s1, 0x1A100100);
    a.emit(addi(t0, zero, 2));
    a.emit(sw(t0, s1, kPwrCtlState));  // request CLUSTER_ACTIVE
    a.emit(sw(zero, s1, kPwrCtlWfe));
    a.emit(addi(t1, zero, 9));
    a.emit(ebreak());
    Iss iss(cfg, a.finish());
    FuncBus bus;
    bus.register_peripheral("pwrctl", 0x1A100100, kPwrCtlSize, make_power_controller(iss));
    iss.set_bus_port([&](const BusRequest& r) { return bus.route(r); });

    CHECK(iss.step_until(SimTime::from_us(10)) == SimTime::infinity());
    CHECK(iss.waiting());
    CHECK(iss.power_state() == PowerState::SleepWait);
    CHECK(iss.now() == SimTime::from_us(10));
    CHECK(iss.reg(t1) == 0);

    iss.notify_data_ready(SimTime::from_us(16));
    CHECK_FALSE(iss.waiting());
    CHECK(iss.power_state() == PowerState::ClusterActive);
    CHECK_FALSE(iss.step_until(SimTime::from_us(20)).has_value());
    CHECK(iss.reg(t1) == 9);
    CHECK(iss.now() >= SimTime::from_us(16));
}

TEST_CASE("a data-ready that arrives early is remembered") {
    Assembler a;
    a.li(s1, 0x1A100100);
    a.emit(sw(zero, s1, kPwrCtlWfe));
    a.emit(ebreak());
    Iss iss(IssConfig{}, a.finish());
    FuncBus bus;
    bus.register_peripheral("pwrctl", 0x1A100100, kPwrCtlSize, make_power_controller(iss));
    iss.set_bus_port([&](const BusRequest& r) { return bus.route(r); });
    iss.notify_data_ready(SimTime{});
    CHECK_FALSE(iss.step_until(SimTime::from_us(1)).has_value());
}

TEST_CASE("program images round-trip through files") {
    const std::vector<std::uint32_t> words{0x12345678u, ebreak(), 0};
    const std::string path = "iss_image_roundtrip.bin";
    write_program_image(path, words);
    CHECK(load_program_image(path) == words);
    CHECK_THROWS_AS(load_program_image("does/not/exist.bin"), Error);
}

TEST_CASE("config validation") {
    IssConfig cfg;
    CHECK(cfg.validate().empty());
    cfg.clock_hz = 0;
    cfg.cycles[0] = 0;
    cfg.mmio_base = 0x100;
    CHECK(cfg.validate().size() == 3);
    CHECK_THROWS_AS(Iss(cfg, std::vector<std::uint32_t>{}), ValidationError);
}
