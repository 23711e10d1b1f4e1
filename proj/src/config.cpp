#include "powervp/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "powervp/errors.hpp"

namespace powervp {

using nlohmann::json;

const char* to_string(CoreKind k) {
    switch (k) {
        case CoreKind::None: return "none";
        case CoreKind::Phase: return "phase";
        case CoreKind::Iss: return "iss";
        case CoreKind::Constant: return "constant";
    }
    return "unknown";
}

EfficiencyLut rt8097a_lut() {
    return EfficiencyLut({{1e-4, 0.86}, {5e-4, 0.915}, {1e-3, 0.93}, {2e-3, 0.94},
                          {5e-3, 0.945}, {1e-2, 0.95}, {5e-2, 0.95}, {2e-1, 0.93}});
}

EfficiencyLut st1ps03_lut() {
    return EfficiencyLut({{1e-4, 0.90}, {5e-4, 0.885}, {1e-3, 0.875}, {2e-3, 0.86},
                          {5e-3, 0.84}, {1e-2, 0.815}, {2e-2, 0.79}, {5e-2, 0.75}});
}

SystemConfig default_config() {
    SystemConfig c;
    c.name = "default";
    c.kernel.power_timestep = SimTime::from_us(100);
    c.kernel.horizon = SimTime::from_s(3600);
    c.kernel.trace_stride = 100;

    c.core.kind = CoreKind::Phase;
    c.core.rail = "core";
    c.core.phase = PhaseScript{};

    c.bus.latency_cycles = 10;
    c.bus.regions = {{"mic", 0x1A10'0000, kMicRegionSize}, {"pwrctl", 0x1A10'0100, kPwrCtlSize}};

    c.mic.enabled = true;
    c.mic.rail = "bus";
    c.mic.mic = MicConfig{};

    c.power.bus_voltage = 3.3;
    c.power.lut_library = {{"RT8097A", rt8097a_lut()}, {"ST1PS03", st1ps03_lut()}};
    c.power.converters = {
        {"batt_dcdc", Placement::BatteryToBus, "", 3.3, "RT8097A", rt8097a_lut()},
        {"core_dcdc", Placement::BusToRail, "core", 1.8, "ST1PS03", st1ps03_lut()},
    };
    c.power.battery.capacity_coulomb = 32e-3 * 3600.0;
    c.power.battery.initial_soc = 1.0;
    c.power.battery.voc_lut = Lut({{0.0, 3.0}, {0.05, 3.45}, {0.1, 3.6}, {0.2, 3.68},
                                   {0.4, 3.76}, {0.6, 3.82}, {0.8, 3.92}, {1.0, 4.05}});
    c.power.battery.rs_lut =
        Lut({{0.0, 1.6}, {0.1, 0.9}, {0.2, 0.65}, {0.4, 0.5}, {0.6, 0.45}, {0.8, 0.42}, {1.0, 0.4}});
    return c;
}

PowerNetSpec PowerConfig::net_spec() const {
    PowerNetSpec spec;
    spec.bus_voltage = bus_voltage;
    spec.battery = battery;
    for (const auto& c : converters) spec.converters.push_back({c.name, c.v_out, c.lut, c.placement, c.rail});
    return spec;
}

std::string SystemConfig::resolved_program_path() const {
    if (core.program.empty()) return {};
    std::filesystem::path p(core.program);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return p.lexically_normal().string();
}

namespace {

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", v);
    return buf;
}

// Collects violations instead of throwing so one pass reports everything.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); }

    bool object(const json& doc, const std::string& path) {
        if (doc.is_object()) return true;
        fail(path, "expected an object");
        return false;
    }

    void known_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
        if (!obj.is_object()) return;
        for (const auto& [k, v] : obj.items()) {
            bool ok = false;
            for (const char* key : keys) ok = ok || k == key;
            if (!ok) fail(join(path, k), "unknown field");
        }
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    const json* child(const json& obj, const std::string& path, const char* key, bool required) {
        if (!obj.is_object()) return nullptr;
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    void number(const json& obj, const std::string& path, const char* key, double& out, bool required = false) {
        const json* v = child(obj, path, key, required);
        if (!v) return;
        if (!v->is_number()) return fail(join(path, key), "expected a number");
        out = v->get<double>();
    }

    template <class UInt>
    void unsigned_int(const json& obj, const std::string& path, const char* key, UInt& out, bool required = false) {
        const json* v = child(obj, path, key, required);
        if (!v) return;
        std::uint64_t value = 0;
        if (v->is_number_unsigned()) {
            value = v->get<std::uint64_t>();
        } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
            value = static_cast<std::uint64_t>(v->get<std::int64_t>());
        } else if (v->is_string()) {
            const auto s = v->get<std::string>();
            try {
                std::size_t used = 0;
                value = std::stoull(s, &used, 0);
                if (used != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                return fail(join(path, key), "expected an unsigned integer, got \"" + s + "\"");
            }
        } else {
            return fail(join(path, key), "expected an unsigned integer");
        }
        if (value > std::numeric_limits<UInt>::max()) return fail(join(path, key), "value out of range");
        out = static_cast<UInt>(value);
    }

    void time_ns(const json& obj, const std::string& path, const char* key, SimTime& out, bool required = false) {
        std::uint64_t ns = out.ns;
        unsigned_int(obj, path, key, ns, required);
        out = SimTime{ns};
    }

    void boolean(const json& obj, const std::string& path, const char* key, bool& out) {
        const json* v = child(obj, path, key, false);
        if (!v) return;
        if (!v->is_boolean()) return fail(join(path, key), "expected true or false");
        out = v->get<bool>();
    }

    void string(const json& obj, const std::string& path, const char* key, std::string& out, bool required = false) {
        const json* v = child(obj, path, key, required);
        if (!v) return;
        if (!v->is_string()) return fail(join(path, key), "expected a string");
        out = v->get<std::string>();
    }

    std::vector<Lut::Point> points(const json& v, const std::string& path) {
        std::vector<Lut::Point> out;
        if (!v.is_array()) {
            fail(path, "expected an array of [x, y] pairs");
            return out;
        }
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto& p = v[k];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                fail(path + "[" + std::to_string(k) + "]", "expected [number, number]");
                continue;
            }
            out.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return out;
    }

    void leakage(const json& obj, const std::string& path, LeakageTable& out) {
        const json* v = child(obj, path, "leakage_w", false);
        if (!v) return;
        const auto p = join(path, "leakage_w");
        if (!object(*v, p)) return;
        known_keys(*v, p, {"SLEEP_WAIT", "ACTIVE", "CLUSTER_ACTIVE"});
        for (std::size_t s = 0; s < kPowerStateCount; ++s) {
            number(*v, p, to_string(static_cast<PowerState>(s)), out[s]);
        }
    }
};

json lut_json(const Lut& lut) {
    json arr = json::array();
    for (const auto& [x, y] : lut.points()) arr.push_back({x, y});
    return arr;
}

json leakage_json(const LeakageTable& t) {
    json o = json::object();
    for (std::size_t s = 0; s < kPowerStateCount; ++s) o[to_string(static_cast<PowerState>(s))] = t[s];
    return o;
}

void parse_kernel(Reader& r, const json& doc, KernelConfig& k) {
    const std::string path = "kernel";
    const json* v = r.child(doc, "", "kernel", false);
    if (!v || !r.object(*v, path)) return;
    r.known_keys(*v, path, {"power_timestep_ns", "horizon_ns", "trace_stride"});
    r.time_ns(*v, path, "power_timestep_ns", k.power_timestep);
    r.time_ns(*v, path, "horizon_ns", k.horizon);
    r.unsigned_int(*v, path, "trace_stride", k.trace_stride);
}

void parse_phase(Reader& r, const json& v, const std::string& path, PhaseScript& s) {
    if (!r.object(v, path)) return;
    r.known_keys(v, path,
                 {"interval_ns", "taps", "tiles", "per_tap_ns", "spike_ns", "spike_power_w", "compute_power_w",
                  "wait_power_w", "leakage_w"});
    r.time_ns(v, path, "interval_ns", s.interval);
    r.unsigned_int(v, path, "taps", s.taps);
    r.unsigned_int(v, path, "tiles", s.tiles);
    r.time_ns(v, path, "per_tap_ns", s.per_tap);
    r.time_ns(v, path, "spike_ns", s.spike);
    r.number(v, path, "spike_power_w", s.spike_power_w);
    r.number(v, path, "compute_power_w", s.compute_power_w);
    r.number(v, path, "wait_power_w", s.wait_power_w);
    r.leakage(v, path, s.leakage_w);
}

void parse_class_table(Reader& r, const json& obj, const std::string& path, const char* key, auto& table) {
    const json* v = r.child(obj, path, key, false);
    if (!v) return;
    const auto p = Reader::join(path, key);
    if (!r.object(*v, p)) return;
    std::set<std::string> keys;
    for (std::size_t c = 0; c < kInstrClassCount; ++c) keys.insert(config_key(static_cast<InstrClass>(c)));
    for (const auto& [k, val] : v->items()) {
        if (!keys.count(k)) r.fail(Reader::join(p, k), "unknown instruction class");
    }
    for (std::size_t c = 0; c < kInstrClassCount; ++c) {
        const char* name = config_key(static_cast<InstrClass>(c));
        if constexpr (std::is_same_v<std::decay_t<decltype(table[0])>, double>) {
            r.number(*v, p, name, table[c]);
        } else {
            r.unsigned_int(*v, p, name, table[c]);
        }
    }
}

void parse_iss(Reader& r, const json& v, const std::string& path, CoreConfig& core) {
    if (!r.object(v, path)) return;
    r.known_keys(v, path,
                 {"clock_hz", "cycles", "energy_j", "leakage_w", "memory_base", "memory_size", "mmio_base",
                  "mmio_size", "program"});
    auto& c = core.iss;
    r.unsigned_int(v, path, "clock_hz", c.clock_hz);
    parse_class_table(r, v, path, "cycles", c.cycles);
    parse_class_table(r, v, path, "energy_j", c.energy_j);
    r.leakage(v, path, c.leakage_w);
    r.unsigned_int(v, path, "memory_base", c.memory_base);
    r.unsigned_int(v, path, "memory_size", c.memory_size);
    r.unsigned_int(v, path, "mmio_base", c.mmio_base);
    r.unsigned_int(v, path, "mmio_size", c.mmio_size);
    r.string(v, path, "program", core.program);
}

void parse_core(Reader& r, const json& doc, CoreConfig& core) {
    const std::string path = "core";
    const json* v = r.child(doc, "", "core", false);
    if (!v || !r.object(*v, path)) return;
    r.known_keys(*v, path, {"kind", "rail", "phase", "iss", "constant_power_w"});
    std::string kind = to_string(core.kind);
    r.string(*v, path, "kind", kind);
    if (kind == "none") {
        core.kind = CoreKind::None;
    } else if (kind == "phase") {
        core.kind = CoreKind::Phase;
    } else if (kind == "iss") {
        core.kind = CoreKind::Iss;
    } else if (kind == "constant") {
        core.kind = CoreKind::Constant;
    } else {
        r.fail("core.kind", "expected one of none, phase, iss, constant");
    }
    r.string(*v, path, "rail", core.rail);
    r.number(*v, path, "constant_power_w", core.constant_power_w);
    if (const json* p = r.child(*v, path, "phase", false)) parse_phase(r, *p, "core.phase", core.phase);
    if (const json* i = r.child(*v, path, "iss", false)) parse_iss(r, *i, "core.iss", core);
}

void parse_bus(Reader& r, const json& doc, BusConfig& bus) {
    const std::string path = "bus";
    const json* v = r.child(doc, "", "bus", false);
    if (!v || !r.object(*v, path)) return;
    r.known_keys(*v, path, {"latency_cycles", "regions"});
    r.unsigned_int(*v, path, "latency_cycles", bus.latency_cycles);
    const json* regions = r.child(*v, path, "regions", false);
    if (!regions) return;
    if (!regions->is_array()) return r.fail("bus.regions", "expected an array");
    bus.regions.clear();
    for (std::size_t k = 0; k < regions->size(); ++k) {
        const auto p = "bus.regions[" + std::to_string(k) + "]";
        const auto& item = (*regions)[k];
        if (!r.object(item, p)) continue;
        r.known_keys(item, p, {"id", "base", "size"});
        Region region;
        r.string(item, p, "id", region.id, true);
        r.unsigned_int(item, p, "base", region.base, true);
        r.unsigned_int(item, p, "size", region.size, true);
        bus.regions.push_back(region);
    }
}

void parse_mic(Reader& r, const json& doc, MicSection& mic) {
    const std::string path = "mic";
    const json* v = r.child(doc, "", "mic", false);
    if (!v || !r.object(*v, path)) return;
    r.known_keys(*v, path,
                 {"enabled", "rail", "sample_rate_hz", "fifo_depth", "buffer_len", "start_on_reset", "pattern", "psm"});
    auto& m = mic.mic;
    r.boolean(*v, path, "enabled", mic.enabled);
    r.string(*v, path, "rail", mic.rail);
    r.unsigned_int(*v, path, "sample_rate_hz", m.sample_rate_hz);
    r.unsigned_int(*v, path, "fifo_depth", m.fifo_depth);
    r.unsigned_int(*v, path, "buffer_len", m.buffer_len);
    r.boolean(*v, path, "start_on_reset", m.start_on_reset);
    if (const json* p = r.child(*v, path, "pattern", false); p && r.object(*p, "mic.pattern")) {
        r.known_keys(*p, "mic.pattern", {"shape", "seed", "amplitude", "frequency_hz"});
        std::string shape = m.pattern.shape == SampleShape::Sine ? "sine" : "noise";
        r.string(*p, "mic.pattern", "shape", shape);
        if (shape == "sine") {
            m.pattern.shape = SampleShape::Sine;
        } else if (shape == "noise") {
            m.pattern.shape = SampleShape::Noise;
        } else {
            r.fail("mic.pattern.shape", "expected sine or noise");
        }
        r.unsigned_int(*p, "mic.pattern", "seed", m.pattern.seed);
        r.number(*p, "mic.pattern", "amplitude", m.pattern.amplitude);
        r.number(*p, "mic.pattern", "frequency_hz", m.pattern.frequency_hz);
    }
    if (const json* p = r.child(*v, path, "psm", false); p && r.object(*p, "mic.psm")) {
        r.known_keys(*p, "mic.psm", {"supply_v", "states"});
        r.number(*p, "mic.psm", "supply_v", m.supply_v);
        if (const json* s = r.child(*p, "mic.psm", "states", false); s && r.object(*s, "mic.psm.states")) {
            r.known_keys(*s, "mic.psm.states", {"IDLE", "ACTIVE"});
            r.number(*s, "mic.psm.states", "IDLE", m.idle_current_a, true);
            r.number(*s, "mic.psm.states", "ACTIVE", m.active_current_a, true);
        }
    }
}

void parse_power(Reader& r, const json& doc, PowerConfig& power) {
    const std::string path = "power";
    const json* v = r.child(doc, "", "power", true);
    if (!v || !r.object(*v, path)) return;
    r.known_keys(*v, path, {"bus_voltage", "lut_library", "converters", "battery"});
    r.number(*v, path, "bus_voltage", power.bus_voltage);

    if (const json* lib = r.child(*v, path, "lut_library", false); lib && r.object(*lib, "power.lut_library")) {
        power.lut_library.clear();
        for (const auto& [name, pts] : lib->items()) {
            power.lut_library[name] = EfficiencyLut(r.points(pts, "power.lut_library." + name));
        }
    }

    if (const json* conv = r.child(*v, path, "converters", true); conv && r.object(*conv, "power.converters")) {
        power.converters.clear();
        for (const auto& [name, item] : conv->items()) {
            const auto p = "power.converters." + name;
            if (!r.object(item, p)) continue;
            r.known_keys(item, p, {"placement", "rail", "v_out", "lut"});
            ConverterConfig c;
            c.name = name;
            std::string placement;
            r.string(item, p, "placement", placement, true);
            if (placement == "battery_bus") {
                c.placement = Placement::BatteryToBus;
            } else if (placement == "bus_rail") {
                c.placement = Placement::BusToRail;
            } else if (!placement.empty()) {
                r.fail(p + ".placement", "expected battery_bus or bus_rail");
            }
            r.string(item, p, "rail", c.rail);
            r.number(item, p, "v_out", c.v_out, true);
            const json* lut = r.child(item, p, "lut", true);
            if (lut && lut->is_string()) {
                c.lut_ref = lut->get<std::string>();
                auto it = power.lut_library.find(c.lut_ref);
                if (it == power.lut_library.end()) {
                    r.fail(p + ".lut", "unknown LUT '" + c.lut_ref + "' (not in power.lut_library)");
                } else {
                    c.lut = it->second;
                }
            } else if (lut) {
                c.lut = EfficiencyLut(r.points(*lut, p + ".lut"));
            }
            power.converters.push_back(std::move(c));
        }
    }

    const json* bat = r.child(*v, path, "battery", true);
    if (!bat || !r.object(*bat, "power.battery")) return;
    r.known_keys(*bat, "power.battery", {"capacity_coulomb", "initial_soc", "voc", "rs"});
    r.number(*bat, "power.battery", "capacity_coulomb", power.battery.capacity_coulomb, true);
    r.number(*bat, "power.battery", "initial_soc", power.battery.initial_soc);
    if (const json* voc = r.child(*bat, "power.battery", "voc", true)) {
        power.battery.voc_lut = Lut(r.points(*voc, "power.battery.voc"));
    }
    if (const json* rs = r.child(*bat, "power.battery", "rs", true)) {
        power.battery.rs_lut = Lut(r.points(*rs, "power.battery.rs"));
    }
}

}  // namespace

std::vector<std::string> validate(const SystemConfig& c) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& prefix, const std::vector<std::string>& problems) {
        for (const auto& p : problems) out.push_back(prefix + ": " + p);
    };

    add("kernel", c.kernel.validate());

    std::set<std::string> rails{"bus"};
    for (const auto& conv : c.power.converters) {
        if (conv.placement == Placement::BusToRail && !conv.rail.empty()) rails.insert(conv.rail);
    }
    for (const auto& [name, lut] : c.power.lut_library) add("power.lut_library." + name, lut.validate());
    for (const auto& conv : c.power.converters) {
        const auto p = "power.converters." + conv.name;
        if (!(conv.v_out > 0.0)) out.push_back(p + ".v_out: must be > 0");
        if (conv.lut_ref.empty()) add(p + ".lut", conv.lut.validate());
        if (conv.placement == Placement::BatteryToBus) {
            if (!conv.rail.empty() && conv.rail != "bus") out.push_back(p + ".rail: battery_bus converter feeds the bus");
            if (conv.v_out != c.power.bus_voltage) out.push_back(p + ".v_out: must equal power.bus_voltage");
        } else if (conv.rail.empty() || conv.rail == "bus") {
            out.push_back(p + ".rail: bus_rail converter needs a rail name other than 'bus'");
        }
    }
    {
        std::size_t sources = 0;
        std::set<std::string> fed;
        for (const auto& conv : c.power.converters) {
            if (conv.placement == Placement::BatteryToBus) ++sources;
            if (conv.placement == Placement::BusToRail && !fed.insert(conv.rail).second) {
                out.push_back("power.converters." + conv.name + ".rail: rail '" + conv.rail + "' is fed twice");
            }
        }
        if (sources != 1) out.emplace_back("power.converters: exactly one battery_bus converter is required");
    }
    if (!(c.power.bus_voltage > 0.0)) out.emplace_back("power.bus_voltage: must be > 0");
    {
        const auto& b = c.power.battery;
        if (!(b.capacity_coulomb > 0.0)) out.emplace_back("power.battery.capacity_coulomb: must be > 0");
        if (!(b.initial_soc >= 0.0 && b.initial_soc <= 1.0)) {
            out.emplace_back("power.battery.initial_soc: must lie in [0, 1]");
        }
        add("power.battery.voc", b.voc_lut.check_shape());
        add("power.battery.rs", b.rs_lut.check_shape());
        for (const auto& [soc, volts] : b.voc_lut.points()) {
            if (soc < 0.0 || soc > 1.0) out.emplace_back("power.battery.voc: soc breakpoints must lie in [0, 1]");
            if (!(volts > 0.0)) out.emplace_back("power.battery.voc: voltages must be > 0");
        }
        for (const auto& [soc, ohm] : b.rs_lut.points()) {
            if (soc < 0.0 || soc > 1.0) out.emplace_back("power.battery.rs: soc breakpoints must lie in [0, 1]");
            if (ohm < 0.0) out.emplace_back("power.battery.rs: resistances must be >= 0");
        }
    }

    if (c.core.kind != CoreKind::None && !rails.count(c.core.rail)) {
        out.push_back("core.rail: '" + c.core.rail + "' is neither 'bus' nor fed by a bus_rail converter");
    }
    if (c.core.kind == CoreKind::Phase) add("core.phase", c.core.phase.validate());
    if (c.core.kind == CoreKind::Iss) {
        add("core.iss", c.core.iss.validate());
        if (c.core.program.empty()) out.emplace_back("core.iss.program: required when core.kind is iss");
    }
    if (c.core.kind == CoreKind::Constant && !(c.core.constant_power_w >= 0.0)) {
        out.emplace_back("core.constant_power_w: must be >= 0");
    }

    if (c.mic.enabled) {
        add("mic", c.mic.mic.validate());
        if (!rails.count(c.mic.rail)) {
            out.push_back("mic.rail: '" + c.mic.rail + "' is neither 'bus' nor fed by a bus_rail converter");
        }
    }

    {
        FuncBus probe;
        std::set<std::string> ids;
        for (std::size_t k = 0; k < c.bus.regions.size(); ++k) {
            const auto& region = c.bus.regions[k];
            const auto p = "bus.regions[" + std::to_string(k) + "]";
            if (region.id != "mic" && region.id != "pwrctl") {
                out.push_back(p + ".id: unknown peripheral '" + region.id + "' (expected mic or pwrctl)");
            }
            if (!ids.insert(region.id).second) out.push_back(p + ".id: duplicate region '" + region.id + "'");
            try {
                probe.register_peripheral(region.id, region.base, region.size, {});
            } catch (const std::exception& e) {
                out.push_back(p + ": " + e.what());
            }
            const std::uint32_t need = region.id == "mic" ? kMicRegionSize : kPwrCtlSize;
            if (region.size < need) {
                out.push_back(p + ".size: must be >= " + std::to_string(need));
            }
            if (c.core.kind == CoreKind::Iss) {
                const auto& iss = c.core.iss;
                const bool inside = region.base >= iss.mmio_base &&
                                    std::uint64_t{region.base} + region.size <=
                                        std::uint64_t{iss.mmio_base} + iss.mmio_size;
                if (!inside) out.push_back(p + ": region must lie inside core.iss mmio window");
            }
        }
        if (c.core.kind == CoreKind::Iss) {
            if (!ids.count("pwrctl")) out.emplace_back("bus.regions: iss core requires a 'pwrctl' region");
            if (c.mic.enabled && !ids.count("mic")) out.emplace_back("bus.regions: enabled mic requires a 'mic' region");
        }
    }
    return out;
}

SystemConfig parse_config(const json& doc, const std::string& base_dir) {
    Reader r;
    SystemConfig c = default_config();
    c.base_dir = base_dir;
    if (!doc.is_object()) throw ValidationError({"<root>: expected an object"});
    r.known_keys(doc, "", {"name", "kernel", "core", "bus", "mic", "power"});
    r.string(doc, "", "name", c.name);
    parse_kernel(r, doc, c.kernel);
    parse_core(r, doc, c.core);
    parse_bus(r, doc, c.bus);
    parse_mic(r, doc, c.mic);
    parse_power(r, doc, c.power);
    if (r.errors.empty()) {
        auto semantic = validate(c);
        r.errors.insert(r.errors.end(), semantic.begin(), semantic.end());
    }
    if (!r.errors.empty()) throw ValidationError(std::move(r.errors));
    return c;
}

SystemConfig parse_config_text(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc, base_dir);
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto dir = std::filesystem::path(path).parent_path().string();
    if (dir.empty()) dir = ".";
    try {
        return parse_config_text(buf.str(), dir);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json to_json(const SystemConfig& c) {
    json doc;
    doc["name"] = c.name;
    doc["kernel"] = {{"power_timestep_ns", c.kernel.power_timestep.ns},
                     {"horizon_ns", c.kernel.horizon.ns},
                     {"trace_stride", c.kernel.trace_stride}};

    const auto& ph = c.core.phase;
    json iss_cycles = json::object();
    json iss_energy = json::object();
    for (std::size_t k = 0; k < kInstrClassCount; ++k) {
        iss_cycles[config_key(static_cast<InstrClass>(k))] = c.core.iss.cycles[k];
        iss_energy[config_key(static_cast<InstrClass>(k))] = c.core.iss.energy_j[k];
    }
    doc["core"] = {
        {"kind", to_string(c.core.kind)},
        {"rail", c.core.rail},
        {"constant_power_w", c.core.constant_power_w},
        {"phase",
         {{"interval_ns", ph.interval.ns},
          {"taps", ph.taps},
          {"tiles", ph.tiles},
          {"per_tap_ns", ph.per_tap.ns},
          {"spike_ns", ph.spike.ns},
          {"spike_power_w", ph.spike_power_w},
          {"compute_power_w", ph.compute_power_w},
          {"wait_power_w", ph.wait_power_w},
          {"leakage_w", leakage_json(ph.leakage_w)}}},
        {"iss",
         {{"clock_hz", c.core.iss.clock_hz},
          {"cycles", iss_cycles},
          {"energy_j", iss_energy},
          {"leakage_w", leakage_json(c.core.iss.leakage_w)},
          {"memory_base", hex(c.core.iss.memory_base)},
          {"memory_size", c.core.iss.memory_size},
          {"mmio_base", hex(c.core.iss.mmio_base)},
          {"mmio_size", c.core.iss.mmio_size},
          {"program", c.core.program}}},
    };

    json regions = json::array();
    for (const auto& r : c.bus.regions) regions.push_back({{"id", r.id}, {"base", hex(r.base)}, {"size", r.size}});
    doc["bus"] = {{"latency_cycles", c.bus.latency_cycles}, {"regions", regions}};

    const auto& m = c.mic.mic;
    doc["mic"] = {
        {"enabled", c.mic.enabled},
        {"rail", c.mic.rail},
        {"sample_rate_hz", m.sample_rate_hz},
        {"fifo_depth", m.fifo_depth},
        {"buffer_len", m.buffer_len},
        {"start_on_reset", m.start_on_reset},
        {"pattern",
         {{"shape", m.pattern.shape == SampleShape::Sine ? "sine" : "noise"},
          {"seed", m.pattern.seed},
          {"amplitude", m.pattern.amplitude},
          {"frequency_hz", m.pattern.frequency_hz}}},
        {"psm", {{"supply_v", m.supply_v}, {"states", {{"IDLE", m.idle_current_a}, {"ACTIVE", m.active_current_a}}}}},
    };

    json lib = json::object();
    for (const auto& [name, lut] : c.power.lut_library) lib[name] = lut_json(lut);
    json conv = json::object();
    for (const auto& cc : c.power.converters) {
        json item = {{"placement", cc.placement == Placement::BatteryToBus ? "battery_bus" : "bus_rail"},
                     {"v_out", cc.v_out}};
        if (cc.placement == Placement::BusToRail) item["rail"] = cc.rail;
        item["lut"] = cc.lut_ref.empty() ? lut_json(cc.lut) : json(cc.lut_ref);
        conv[cc.name] = item;
    }
    doc["power"] = {
        {"bus_voltage", c.power.bus_voltage},
        {"lut_library", lib},
        {"converters", conv},
        {"battery",
         {{"capacity_coulomb", c.power.battery.capacity_coulomb},
          {"initial_soc", c.power.battery.initial_soc},
          {"voc", lut_json(c.power.battery.voc_lut)},
          {"rs", lut_json(c.power.battery.rs_lut)}}},
    };
    return doc;
}

void apply_override(json& doc, const std::string& dotted_path, const json& value) {
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = dotted_path.find('.', start);
        const auto key = dotted_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ValidationError({dotted_path + ": malformed override path"});
        if (!node->is_object() || !node->contains(key)) {
            throw ValidationError({dotted_path + ": override path does not exist in the configuration"});
        }
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    *node = value;
}

}  // namespace powervp
