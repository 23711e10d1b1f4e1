#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powervp/sim_time.hpp"

namespace powervp {

struct KernelConfig {
    SimTime power_timestep = SimTime::from_us(100);
    SimTime horizon = SimTime::from_s(3600);
    std::uint64_t trace_stride = 1;

    std::vector<std::string> validate() const {
        std::vector<std::string> out;
        if (power_timestep.ns == 0) out.emplace_back("power_timestep must be > 0");
        if (horizon < power_timestep) out.emplace_back("horizon must be >= power_timestep");
        if (trace_stride < 1) out.emplace_back("trace_stride must be >= 1");
        return out;
    }
};

}  // namespace powervp
