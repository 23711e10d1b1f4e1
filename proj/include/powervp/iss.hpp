#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "powervp/core.hpp"
#include "powervp/errors.hpp"
#include "powervp/func_bus.hpp"

namespace powervp {

enum class InstrClass : std::uint8_t {
    Alu,
    Mul,
    Div,
    Load,
    Store,
    BranchTaken,
    BranchNotTaken,
    Jump,
    System,
};
inline constexpr std::size_t kInstrClassCount = 9;

const char* to_string(InstrClass c);
/// Config-file spelling: "alu", "mul", "div", "load", "store", "branch_taken",
/// "branch_not_taken", "jump", "system".
const char* config_key(InstrClass c);

using CycleTable = std::array<std::uint32_t, kInstrClassCount>;
using EnergyTable = std::array<double, kInstrClassCount>;  ///< joules per instruction

struct IssConfig {
    std::uint64_t clock_hz = 240'000'000;
    CycleTable cycles{1, 1, 35, 2, 2, 2, 1, 2, 1};
    EnergyTable energy_j{10e-12, 15e-12, 40e-12, 20e-12, 20e-12, 12e-12, 10e-12, 12e-12, 5e-12};
    LeakageTable leakage_w{1e-4, 1e-3, 1.5e-3};
    std::uint32_t memory_base = 0x0000'0000;
    std::uint32_t memory_size = 0x0001'0000;
    std::uint32_t mmio_base = 0x1A10'0000;
    std::uint32_t mmio_size = 0x0000'1000;

    std::vector<std::string> validate() const;
};

using BusPort = std::function<BusResponse(const BusRequest&)>;

/// RV32IM instruction-set simulator with per-class cycle and energy annotation.
/// Little-endian, no compressed instructions, no CSRs or interrupts; EBREAK halts and is
/// not counted as retired.
/// Accesses inside the MMIO window are forwarded to the bus port and block the
/// core for the response latency.
class Iss : public CoreModel {
public:
    static constexpr std::uint32_t kOriginId = 1;

    /// Loads `program` at memory_base; execution starts there.
    Iss(IssConfig config, std::span<const std::uint32_t> program);

    void set_bus_port(BusPort port) { bus_port_ = std::move(port); }

    std::optional<SimTime> step_until(SimTime t) override;
    void notify_data_ready(SimTime at) override;
    PowerSample get_instant_power(SimTime window_end) override;

    SimTime now() const override { return now_; }
    bool halted() const override { return halted_; }
    PowerState power_state() const override { return state_; }
    /// Sum over classes of count x energy, so it stays exact over long runs.
    double total_dynamic_energy() const override;

    /// Executes one already-fetched word at the current pc.
    void execute_instruction(std::uint32_t word);
    /// Completes the outstanding bus transaction. Throws CoreFault(BusError) on
    /// an error response and Error if nothing is outstanding.
    void handle_bus_response(const BusResponse& resp);

    /// Power-controller hooks (memory-mapped via make_power_controller).
    void set_power_state(PowerState s);
    /// Blocks in SLEEP_WAIT until the next data-ready notification; returns
    /// immediately if one arrived since the last wait.
    void wait_for_event();
    bool waiting() const { return waiting_; }

    std::uint32_t pc() const { return pc_; }
    std::uint32_t reg(std::size_t i) const { return regs_[i]; }
    const std::array<std::uint32_t, 32>& regs() const { return regs_; }
    std::uint64_t cycle_count() const { return cycles_; }
    std::uint64_t instret() const { return instret_; }
    const std::array<std::uint64_t, kInstrClassCount>& class_counts() const { return class_counts_; }
    const IssConfig& config() const { return config_; }

    std::uint32_t read_word(std::uint32_t address) const;
    void write_word(std::uint32_t address, std::uint32_t value);

private:
    struct Outstanding {
        bool load = false;
        std::uint32_t rd = 0;
        std::uint8_t width = 4;
        bool sign_extend = false;
    };

    void retire(InstrClass c);
    void set_reg(std::uint32_t rd, std::uint32_t v) {
        if (rd != 0) regs_[rd] = v;
    }
    bool in_memory(std::uint32_t addr, std::uint32_t width) const;
    bool in_mmio(std::uint32_t addr, std::uint32_t width) const;
    std::uint32_t load(std::uint32_t addr, std::uint8_t width, bool sign_extend, std::uint32_t rd);
    void store(std::uint32_t addr, std::uint8_t width, std::uint32_t value);
    void jump_to(std::uint32_t target);
    [[noreturn]] void fault(FaultKind kind, const std::string& detail) const;

    SimTime time_from_cycles() const;
    void rebase_clock();
    void account_leakage(SimTime upto);

    IssConfig config_;
    std::vector<std::uint8_t> memory_;
    std::array<std::uint32_t, 32> regs_{};
    std::uint32_t pc_ = 0;
    std::uint32_t next_pc_ = 0;
    bool halted_ = false;
    bool waiting_ = false;
    bool pending_event_ = false;
    PowerState state_ = PowerState::Active;
    PowerState requested_state_ = PowerState::Active;
    std::optional<Outstanding> outstanding_;
    BusPort bus_port_;

    std::uint64_t cycles_ = 0;
    std::uint64_t instret_ = 0;
    std::array<std::uint64_t, kInstrClassCount> class_counts_{};
    SimTime now_{};
    SimTime base_time_{};
    std::uint64_t base_cycles_ = 0;

    SimTime window_start_{};
    SimTime leak_time_{};
    double energy_accum_ = 0.0;
    double leak_accum_ = 0.0;
};

/// Bus handler for the core's power controller: offset 0x0 STATE (read/write,
/// 0=SLEEP_WAIT 1=ACTIVE 2=CLUSTER_ACTIVE), offset 0x4 WFE (write: wait for data).
BusHandler make_power_controller(Iss& core);

inline constexpr std::uint32_t kPwrCtlState = 0x0;
inline constexpr std::uint32_t kPwrCtlWfe = 0x4;
inline constexpr std::uint32_t kPwrCtlSize = 0x10;

/// Flat little-endian binary image -> words (length must be a multiple of 4).
std::vector<std::uint32_t> load_program_image(const std::string& path);
void write_program_image(const std::string& path, std::span<const std::uint32_t> words);

}  // namespace powervp
