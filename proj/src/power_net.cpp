#include "powervp/power_net.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "powervp/errors.hpp"

namespace powervp {

Lut::Lut(std::vector<Point> points) : points_(std::move(points)) {}

double Lut::operator()(double x) const {
    if (points_.empty()) return 0.0;
    if (x <= points_.front().first) return points_.front().second;
    if (x >= points_.back().first) return points_.back().second;
    // First breakpoint strictly above x; x lies in [hi-1, hi).
    auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double v, const Point& p) { return v < p.first; });
    auto lo = hi - 1;
    const double frac = (x - lo->first) / (hi->first - lo->first);
    return lo->second + frac * (hi->second - lo->second);
}

double Lut::min_y() const {
    double m = points_.empty() ? 0.0 : points_.front().second;
    for (const auto& p : points_) m = std::min(m, p.second);
    return m;
}

double Lut::max_y() const {
    double m = points_.empty() ? 0.0 : points_.front().second;
    for (const auto& p : points_) m = std::max(m, p.second);
    return m;
}

std::vector<std::string> Lut::check_shape() const {
    std::vector<std::string> out;
    if (points_.size() < 2) out.emplace_back("needs at least 2 points");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k].first) || !std::isfinite(points_[k].second)) {
            out.emplace_back("point " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(points_[k].first > points_[k - 1].first)) {
            out.emplace_back("x must be strictly increasing (point " + std::to_string(k) + ")");
        }
    }
    return out;
}

std::vector<std::string> EfficiencyLut::validate() const {
    auto out = check_shape();
    for (std::size_t k = 0; k < points().size(); ++k) {
        const auto& [i, eta] = points()[k];
        if (i < 0.0) out.emplace_back("current must be >= 0 (point " + std::to_string(k) + ")");
        if (!(eta > 0.0 && eta <= 1.0)) {
            out.emplace_back("efficiency must lie in (0, 1] (point " + std::to_string(k) + ")");
        }
    }
    return out;
}

double interpolate_efficiency(const EfficiencyLut& lut, double i_out) { return lut(i_out); }

double converter_input_power(const ConverterSpec& spec, double p_out) {
    if (p_out == 0.0) return 0.0;
    return p_out / interpolate_efficiency(spec.lut, p_out / spec.v_out);
}

OperatingPoint battery_operating_point(double voc, double rs, double p_demand) {
    if (p_demand == 0.0) return {0.0, voc};
    if (rs == 0.0) return {p_demand / voc, voc};
    const double disc = voc * voc - 4.0 * rs * p_demand;
    if (disc < 0.0) {
        std::ostringstream msg;
        msg << "battery demand " << p_demand << " W exceeds maximum transferable power "
            << voc * voc / (4.0 * rs) << " W (voc=" << voc << " V, rs=" << rs << " ohm)";
        throw MaxPowerExceeded(msg.str());
    }
    // Rationalized form of (voc - sqrt(disc)) / (2 rs); no cancellation at light load.
    const double i = 2.0 * p_demand / (voc + std::sqrt(disc));
    return {i, voc - i * rs};
}

BatteryState initial_battery_state(const BatterySpec& spec) {
    BatteryState s;
    s.soc = spec.initial_soc;
    s.capacity_coulomb = spec.capacity_coulomb;
    s.voc = spec.voc_lut(s.soc);
    s.rs = spec.rs_lut(s.soc);
    s.v_terminal = s.voc;
    s.i_out = 0.0;
    return s;
}

BatteryState update_soc(const BatteryState& state, const BatterySpec& spec, double current, SimTime dt) {
    BatteryState next = state;
    next.soc = std::max(0.0, state.soc - current * dt.seconds() / state.capacity_coulomb);
    next.voc = spec.voc_lut(next.soc);
    next.rs = spec.rs_lut(next.soc);
    return next;
}

Psm::Psm(std::vector<State> states, double supply_v, const std::string& initial)
    : states_(std::move(states)), supply_v_(supply_v) {
    if (states_.empty()) throw Error("power state machine needs at least one state");
    current_ = index_of(initial);
}

std::size_t Psm::index_of(const std::string& label) const {
    for (std::size_t k = 0; k < states_.size(); ++k) {
        if (states_[k].label == label) return k;
    }
    throw UnknownState("unknown power state '" + label + "'");
}

void Psm::set_state(const std::string& label) { current_ = index_of(label); }

std::vector<std::string> PowerNetSpec::validate() const {
    std::vector<std::string> out;
    if (!(bus_voltage > 0.0)) out.emplace_back("bus_voltage must be > 0");
    std::size_t sources = 0;
    std::set<std::string> names;
    std::set<std::string> rails;
    for (const auto& c : converters) {
        const std::string where = "converter '" + c.name + "': ";
        if (!names.insert(c.name).second) out.push_back(where + "duplicate name");
        if (!(c.v_out > 0.0)) out.push_back(where + "v_out must be > 0");
        for (const auto& problem : c.lut.validate()) out.push_back(where + "lut: " + problem);
        if (c.placement == Placement::BatteryToBus) {
            ++sources;
            if (c.v_out != bus_voltage) out.push_back(where + "v_out must equal the bus voltage");
        } else {
            if (c.rail.empty() || c.rail == "bus") out.push_back(where + "bus->rail converter needs a rail name");
            if (!rails.insert(c.rail).second) out.push_back(where + "rail '" + c.rail + "' fed twice");
        }
    }
    if (sources != 1) out.emplace_back("exactly one battery->bus converter is required");
    if (!(battery.capacity_coulomb > 0.0)) out.emplace_back("battery: capacity must be > 0");
    if (!(battery.initial_soc >= 0.0 && battery.initial_soc <= 1.0)) {
        out.emplace_back("battery: initial_soc must lie in [0, 1]");
    }
    for (const auto& p : battery.voc_lut.check_shape()) out.push_back("battery: voc: " + p);
    for (const auto& p : battery.rs_lut.check_shape()) out.push_back("battery: rs: " + p);
    for (const auto& [soc, v] : battery.voc_lut.points()) {
        if (soc < 0.0 || soc > 1.0) out.emplace_back("battery: voc: soc breakpoints must lie in [0, 1]");
        if (!(v > 0.0)) out.emplace_back("battery: voc: voltage must be > 0");
    }
    for (const auto& [soc, r] : battery.rs_lut.points()) {
        if (soc < 0.0 || soc > 1.0) out.emplace_back("battery: rs: soc breakpoints must lie in [0, 1]");
        if (r < 0.0) out.emplace_back("battery: rs: resistance must be >= 0");
    }
    return out;
}

PowerNet::PowerNet(PowerNetSpec spec) : spec_(std::move(spec)) {
    if (auto problems = spec_.validate(); !problems.empty()) {
        for (auto& p : problems) p = "power: " + p;
        throw ValidationError(std::move(problems));
    }
    for (std::size_t k = 0; k < spec_.converters.size(); ++k) {
        if (spec_.converters[k].placement == Placement::BatteryToBus) source_ = k;
    }
    battery_ = initial_battery_state(spec_.battery);
}

std::size_t PowerNet::converter_for_rail(const std::string& rail) const {
    if (rail == "bus") return npos;
    for (std::size_t k = 0; k < spec_.converters.size(); ++k) {
        const auto& c = spec_.converters[k];
        if (c.placement == Placement::BusToRail && c.rail == rail) return k;
    }
    throw Error("no converter feeds rail '" + rail + "'");
}

std::size_t PowerNet::add_load(const std::string& name, const std::string& rail) {
    load_converter_.push_back(converter_for_rail(rail));
    load_names_.push_back(name);
    return load_names_.size() - 1;
}

PowerTick PowerNet::tick(SimTime end, SimTime dt, std::span<const double> load_w) {
    if (load_w.size() != load_names_.size()) throw Error("power tick: load vector size mismatch");

    PowerTick t;
    t.end = end;
    t.dt = dt;
    t.load_w.assign(load_w.begin(), load_w.end());
    t.converters.resize(spec_.converters.size());

    double direct = 0.0;
    for (std::size_t k = 0; k < load_w.size(); ++k) {
        if (load_converter_[k] == npos) {
            direct += load_w[k];
        } else {
            t.converters[load_converter_[k]].p_out += load_w[k];
        }
    }

    double bus = direct;
    for (std::size_t c = 0; c < spec_.converters.size(); ++c) {
        if (c == source_) continue;
        auto& ct = t.converters[c];
        ct.p_in = converter_input_power(spec_.converters[c], ct.p_out);
        ct.eta = ct.p_out > 0.0 ? ct.p_out / ct.p_in : 1.0;
        bus += ct.p_in;
    }
    t.bus_w = bus;

    auto& src = t.converters[source_];
    src.p_out = bus;
    src.p_in = converter_input_power(spec_.converters[source_], bus);
    src.eta = bus > 0.0 ? bus / src.p_in : 1.0;
    t.battery_w = src.p_in;

    const auto op = battery_operating_point(battery_.voc, battery_.rs, t.battery_w);
    t.batt_i = op.current;
    t.batt_v = op.v_terminal;

    battery_ = update_soc(battery_, spec_.battery, op.current, dt);
    battery_.v_terminal = op.v_terminal;
    battery_.i_out = op.current;
    t.soc = battery_.soc;
    t.depleted = battery_.soc <= 0.0;
    return t;
}

}  // namespace powervp
