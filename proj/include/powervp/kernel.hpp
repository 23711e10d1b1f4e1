#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "powervp/kernel_config.hpp"
#include "powervp/platform.hpp"
#include "powervp/power_net.hpp"
#include "powervp/trace.hpp"

namespace powervp {

/// Ranked: when causes coincide the later enumerator wins.
enum class EndCause { HorizonReached, CoreHalted, BatteryDepleted };

const char* to_string(EndCause c);

struct ConverterSummary {
    std::string name;
    double mean_eta = 1.0;  ///< time-weighted over all ticks
    double energy_in_j = 0.0;
    double energy_out_j = 0.0;
};

struct SimulationSummary {
    SimTime end_time;
    EndCause end_cause = EndCause::HorizonReached;
    double initial_soc = 0.0;
    double final_soc = 0.0;
    double battery_energy_j = 0.0;  ///< integral of battery output power
    double avg_battery_w = 0.0;
    double load_energy_j = 0.0;
    std::vector<ConverterSummary> converters;  ///< config order
    std::size_t source_converter = 0;
    std::size_t core_converter = PowerNet::npos;  ///< converter feeding the core rail
    double core_dynamic_energy_j = 0.0;
    std::uint64_t power_ticks = 0;
    std::uint64_t events_delivered = 0;
    SimTime max_lockstep_gap;

    /// State-of-charge decrease over the run, in percent.
    double dsoc_pct() const { return (initial_soc - final_soc) * 100.0; }
    double dsoc_per_hour_pct() const;
    /// initial_soc * 100 / (dsoc per hour); +inf when nothing was drawn.
    double lifetime_h() const;
    /// Mean efficiency of the core-rail converter in percent (100 if the core sits on the bus).
    double core_dcdc_eff_pct() const;
};

/// Lifetime estimate by linear extrapolation of a discharge rate.
double lifetime_hours(double initial_soc, double dsoc_per_hour_pct);

struct RunHooks {
    /// Receives every trace_stride-th power tick.
    std::function<void(const TraceRecord&)> trace;
    /// Receives every power tick with the functional time at that point.
    std::function<void(const PowerTick&, SimTime functional_time)> observer;
};

/// Next global time for a functional/power time pair.
SimTime align(SimTime functional_time, SimTime power_time);

/// Alternates the functional side (core stepped to the next power-tick
/// boundary, events delivered in (due, seq) order) with fixed-timestep power
/// ticks until the horizon, battery depletion or core halt. Propagates
/// PowerNetError and CoreFault.
SimulationSummary run(Platform& platform, const KernelConfig& config, const RunHooks& hooks = {});

}  // namespace powervp
