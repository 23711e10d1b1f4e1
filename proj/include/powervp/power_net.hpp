#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "powervp/sim_time.hpp"

namespace powervp {

/// Piecewise-linear table y(x) with strictly increasing x. Queries outside the
/// table clamp to the end values.
class Lut {
public:
    using Point = std::pair<double, double>;

    Lut() = default;
    explicit Lut(std::vector<Point> points);

    double operator()(double x) const;

    const std::vector<Point>& points() const { return points_; }
    double min_y() const;
    double max_y() const;

    /// Empty when valid; otherwise human-readable problems ("x must be strictly increasing").
    std::vector<std::string> check_shape() const;

private:
    std::vector<Point> points_;
};

/// Converter efficiency as a function of output current (A -> eta in (0,1]).
class EfficiencyLut : public Lut {
public:
    EfficiencyLut() = default;
    explicit EfficiencyLut(std::vector<Point> points) : Lut(std::move(points)) {}

    std::vector<std::string> validate() const;
};

double interpolate_efficiency(const EfficiencyLut& lut, double i_out);

enum class Placement { BatteryToBus, BusToRail };

struct ConverterSpec {
    std::string name;
    double v_out = 0.0;
    EfficiencyLut lut;
    Placement placement = Placement::BusToRail;
    std::string rail;  ///< rail fed by a bus->rail converter; empty for battery->bus
};

/// p_out / eta(p_out / v_out); 0 for p_out == 0.
double converter_input_power(const ConverterSpec& spec, double p_out);

struct OperatingPoint {
    double current = 0.0;     ///< A
    double v_terminal = 0.0;  ///< V
};

/// Smaller root of i (voc - i rs) = p_demand. Throws MaxPowerExceeded when
/// voc^2 < 4 rs p_demand.
OperatingPoint battery_operating_point(double voc, double rs, double p_demand);

struct BatterySpec {
    double capacity_coulomb = 0.0;
    double initial_soc = 1.0;
    Lut voc_lut;  ///< soc -> V
    Lut rs_lut;   ///< soc -> ohm
};

struct BatteryState {
    double soc = 1.0;
    double capacity_coulomb = 0.0;
    double voc = 0.0;
    double rs = 0.0;
    double v_terminal = 0.0;
    double i_out = 0.0;
};

/// Coulomb counting: soc' = soc - i dt / Q, floored at 0, with voc/rs re-read at soc'.
BatteryState update_soc(const BatteryState& state, const BatterySpec& spec, double current, SimTime dt);

BatteryState initial_battery_state(const BatterySpec& spec);

/// Load whose current depends only on a discrete operating state.
class Psm {
public:
    struct State {
        std::string label;
        double i_draw = 0.0;  ///< A
    };

    Psm() = default;
    Psm(std::vector<State> states, double supply_v, const std::string& initial);

    void set_state(const std::string& label);
    double power() const { return states_[current_].i_draw * supply_v_; }
    const std::string& state() const { return states_[current_].label; }

    const std::vector<State>& states() const { return states_; }
    double supply_v() const { return supply_v_; }

private:
    std::size_t index_of(const std::string& label) const;

    std::vector<State> states_;
    double supply_v_ = 0.0;
    std::size_t current_ = 0;
};

struct ConverterTick {
    double p_out = 0.0;
    double p_in = 0.0;
    double eta = 1.0;
};

/// Everything one power tick computed, in topology order.
struct PowerTick {
    SimTime end;
    SimTime dt;
    std::vector<double> load_w;             ///< indexed like the registered loads
    std::vector<ConverterTick> converters;  ///< indexed like PowerNetSpec::converters
    double bus_w = 0.0;                     ///< power delivered by the battery converter to the bus
    double battery_w = 0.0;                 ///< battery output power (= battery converter input)
    double batt_i = 0.0;
    double batt_v = 0.0;
    double soc = 0.0;
    bool depleted = false;
};

struct PowerNetSpec {
    double bus_voltage = 3.3;
    std::vector<ConverterSpec> converters;  ///< exactly one BatteryToBus
    BatterySpec battery;

    std::vector<std::string> validate() const;
};

/// Two-level converter tree: battery -> converter -> bus -> {direct loads, bus->rail converters -> rail loads}.
class PowerNet {
public:
    explicit PowerNet(PowerNetSpec spec);

    /// Registers a load on "bus" or on a rail named by a bus->rail converter.
    std::size_t add_load(const std::string& name, const std::string& rail);

    /// Aggregates load powers, applies converter losses, solves the battery and integrates soc.
    /// load_w must have one entry per registered load (watts, >= 0).
    PowerTick tick(SimTime end, SimTime dt, std::span<const double> load_w);

    const BatteryState& battery() const { return battery_; }
    const PowerNetSpec& spec() const { return spec_; }
    std::size_t source_converter() const { return source_; }
    /// Index of the converter feeding `rail`, or npos for the bus itself.
    std::size_t converter_for_rail(const std::string& rail) const;
    const std::vector<std::string>& load_names() const { return load_names_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    PowerNetSpec spec_;
    BatteryState battery_;
    std::size_t source_ = npos;
    std::vector<std::string> load_names_;
    std::vector<std::size_t> load_converter_;  ///< npos = directly on bus
};

}  // namespace powervp
