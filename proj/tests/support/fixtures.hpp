#pragma once

#include "powervp/config.hpp"

namespace fixtures {

/// Lossless converters, flat 3.8 V cell with no series resistance, no mic.
inline powervp::SystemConfig ideal_config(double capacity_coulomb = 115.2, double rs = 0.0) {
    using namespace powervp;
    SystemConfig c = default_config();
    c.name = "ideal";
    c.mic.enabled = false;
    c.bus.regions.clear();
    const EfficiencyLut unity({{0.0, 1.0}, {1.0, 1.0}});
    c.power.lut_library = {{"unity", unity}};
    for (auto& conv : c.power.converters) {
        conv.lut_ref = "unity";
        conv.lut = unity;
    }
    c.power.battery.capacity_coulomb = capacity_coulomb;
    c.power.battery.initial_soc = 1.0;
    c.power.battery.voc_lut = Lut({{0.0, 3.8}, {1.0, 3.8}});
    c.power.battery.rs_lut = Lut({{0.0, rs}, {1.0, rs}});
    return c;
}

}  // namespace fixtures
