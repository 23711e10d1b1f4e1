#pragma once

#include <string>
#include <vector>

#include "powervp/core.hpp"

namespace powervp {

/// Scripted FIR workload: wait for sensor data, run a tiled filter on the
/// cluster, wait for the next buffer. Every interval [k T, (k+1) T) with k >= 1
/// starts with taps * per_tap of CLUSTER_ACTIVE split into `tiles` equal tiles,
/// each opened by a spike of `spike` duration. The first interval is all wait
/// (the first buffer is still filling).
struct PhaseScript {
    SimTime interval = SimTime::from_s(1);
    std::uint32_t taps = 40;
    std::uint32_t tiles = 8;
    SimTime per_tap = SimTime::from_us(25);
    SimTime spike = SimTime::from_us(10);
    double spike_power_w = 40e-3;
    double compute_power_w = 25e-3;
    double wait_power_w = 1.5e-3;
    LeakageTable leakage_w{1e-4, 1e-3, 1.5e-3};

    SimTime compute_time() const { return SimTime{per_tap.ns * taps}; }
    SimTime tile_start(std::uint32_t tile) const;

    std::vector<std::string> validate() const;
};

/// One piecewise-constant stretch of the script timeline.
struct PhaseSegment {
    PowerState state = PowerState::SleepWait;
    double dynamic_w = 0.0;
    SimTime begin;
    SimTime end;  ///< exclusive
};

/// Segment covering time t.
PhaseSegment phase_segment_at(const PhaseScript& script, SimTime t);

class PhaseCore : public CoreModel {
public:
    /// Throws ValidationError if the script is inconsistent.
    explicit PhaseCore(PhaseScript script);

    std::optional<SimTime> step_until(SimTime t) override;
    void notify_data_ready(SimTime) override {}
    PowerSample get_instant_power(SimTime window_end) override;

    SimTime now() const override { return now_; }
    bool halted() const override { return false; }
    PowerState power_state() const override { return phase_segment_at(script_, now_).state; }
    double total_dynamic_energy() const override { return total_dynamic_; }
    double total_leakage_energy() const { return total_leakage_; }

    const PhaseScript& script() const { return script_; }

private:
    PhaseScript script_;
    SimTime now_{};
    SimTime window_start_{};
    double dynamic_accum_ = 0.0;
    double leakage_accum_ = 0.0;
    double total_dynamic_ = 0.0;
    double total_leakage_ = 0.0;
    PowerState last_state_ = PowerState::SleepWait;
};

/// Runs a fresh core on `script` from t=0 to `until` and returns the next phase
/// boundary after it.
SimTime phase_step(const PhaseScript& script, SimTime until);

}  // namespace powervp
