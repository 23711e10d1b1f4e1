#pragma once

#include <array>
#include <optional>
#include <string>

#include "powervp/sim_time.hpp"

namespace powervp {

enum class PowerState : std::uint8_t { SleepWait = 0, Active = 1, ClusterActive = 2 };
inline constexpr std::size_t kPowerStateCount = 3;

const char* to_string(PowerState s);
/// Accepts "SLEEP_WAIT", "ACTIVE", "CLUSTER_ACTIVE"; throws UnknownState otherwise.
PowerState power_state_from_string(const std::string& s);

using LeakageTable = std::array<double, kPowerStateCount>;  ///< watts, indexed by PowerState

/// Window-averaged power reported by a functional model.
struct PowerSample {
    double dynamic_w = 0.0;
    double leakage_w = 0.0;
    std::string state_tag;

    double total() const { return dynamic_w + leakage_w; }
};

/// Anything that draws power from a rail. Sampled once per power tick with the
/// tick's end time; reports the average over [previous end, window_end).
class LoadModel {
public:
    virtual ~LoadModel() = default;
    virtual PowerSample get_instant_power(SimTime window_end) = 0;
};

/// Functional simulator contract: time advances only through step_until.
class CoreModel : public LoadModel {
public:
    /// Runs until internal time >= t, the core blocks, or it halts. Returns the
    /// time of the next internal event (>= t; infinity while blocked), or nullopt
    /// once halted.
    virtual std::optional<SimTime> step_until(SimTime t) = 0;

    /// Sensor data became available at time `at` (delivered by the kernel).
    virtual void notify_data_ready(SimTime at) = 0;

    virtual SimTime now() const = 0;
    virtual bool halted() const = 0;
    virtual PowerState power_state() const = 0;
    /// Total dynamic energy produced since construction (J).
    virtual double total_dynamic_energy() const = 0;
};

/// Constant draw; stands in for an idle or externally characterised core.
class ConstantLoad : public CoreModel {
public:
    explicit ConstantLoad(double watts, PowerState state = PowerState::Active) : watts_(watts), state_(state) {}

    std::optional<SimTime> step_until(SimTime t) override {
        now_ = max(now_, t);
        return SimTime::infinity();
    }
    void notify_data_ready(SimTime) override {}
    PowerSample get_instant_power(SimTime window_end) override {
        energy_ += watts_ * (window_end - last_).seconds();
        last_ = window_end;
        return PowerSample{watts_, 0.0, to_string(state_)};
    }
    SimTime now() const override { return now_; }
    bool halted() const override { return false; }
    PowerState power_state() const override { return state_; }
    double total_dynamic_energy() const override { return energy_; }

private:
    double watts_;
    PowerState state_;
    SimTime now_{};
    SimTime last_{};
    double energy_ = 0.0;
};

}  // namespace powervp
