#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "powervp/config.hpp"
#include "powervp/core.hpp"
#include "powervp/func_bus.hpp"
#include "powervp/iss.hpp"
#include "powervp/microphone.hpp"
#include "powervp/phase_core.hpp"
#include "powervp/power_net.hpp"

namespace powervp {

/// A wired system: core and mic on the functional bus, both registered as
/// loads on the power net. Handlers capture raw pointers, so a Platform is
/// never moved once built.
struct Platform {
    SystemConfig config;
    std::unique_ptr<CoreModel> core;  ///< null for core.kind == none
    std::unique_ptr<Microphone> mic;  ///< null when the mic is disabled
    FuncBus bus;
    std::unique_ptr<PowerNet> net;
    std::size_t core_load = PowerNet::npos;
    std::size_t mic_load = PowerNet::npos;

    explicit Platform(const SystemConfig& c) : config(c), bus(c.bus.latency_cycles) {}
    Platform(const Platform&) = delete;
    Platform& operator=(const Platform&) = delete;

    Iss* iss() const { return dynamic_cast<Iss*>(core.get()); }
    PhaseCore* phase_core() const { return dynamic_cast<PhaseCore*>(core.get()); }
};

/// Builds from a validated config. For ISS cores the program comes from
/// `program` when given, otherwise from config.resolved_program_path().
std::unique_ptr<Platform> build_platform(const SystemConfig& config,
                                         std::optional<std::vector<std::uint32_t>> program = std::nullopt);

}  // namespace powervp
