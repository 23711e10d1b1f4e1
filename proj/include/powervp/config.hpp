#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "powervp/func_bus.hpp"
#include "powervp/iss.hpp"
#include "powervp/kernel_config.hpp"
#include "powervp/microphone.hpp"
#include "powervp/phase_core.hpp"
#include "powervp/power_net.hpp"

namespace powervp {

enum class CoreKind { None, Phase, Iss, Constant };

const char* to_string(CoreKind k);

struct CoreConfig {
    CoreKind kind = CoreKind::Phase;
    std::string rail = "core";
    PhaseScript phase;
    IssConfig iss;
    std::string program;  ///< flat binary, relative paths resolve against the config file's directory
    double constant_power_w = 0.0;
};

struct BusConfig {
    std::uint32_t latency_cycles = 10;
    std::vector<Region> regions;  ///< ids: "mic", "pwrctl"
};

struct MicSection {
    bool enabled = true;
    std::string rail = "bus";
    MicConfig mic;
};

struct ConverterConfig {
    std::string name;
    Placement placement = Placement::BusToRail;
    std::string rail;
    double v_out = 0.0;
    std::string lut_ref;  ///< name in lut_library; empty when the table is inline
    EfficiencyLut lut;    ///< resolved table
};

struct PowerConfig {
    double bus_voltage = 3.3;
    std::map<std::string, EfficiencyLut> lut_library;
    std::vector<ConverterConfig> converters;  ///< sorted by name
    BatterySpec battery;

    PowerNetSpec net_spec() const;
};

/// Declarative platform description: kernel timing, core, functional bus,
/// microphone and the power network.
struct SystemConfig {
    std::string name = "default";
    KernelConfig kernel;
    CoreConfig core;
    BusConfig bus;
    MicSection mic;
    PowerConfig power;
    std::string base_dir = ".";  ///< not serialised

    std::string resolved_program_path() const;
};

/// Calibrated default pack: 1 s filter interval, 40 taps, RT8097A-like battery
/// converter, ST1PS03-like 1.8 V core converter, 32 mAh cell, 120/160 uA mic.
SystemConfig default_config();

/// Converter efficiency tables shipped with the default pack.
EfficiencyLut rt8097a_lut();
EfficiencyLut st1ps03_lut();

/// Throws ParseError (malformed JSON / unreadable file) or ValidationError
/// (every schema violation, with field paths).
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = ".");
SystemConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

/// Complete document: every field, defaults included.
nlohmann::json to_json(const SystemConfig& config);

/// Semantic checks on an already-parsed config. Empty when valid.
std::vector<std::string> validate(const SystemConfig& config);

/// Sets the value at a dotted path ("core.phase.taps"). The path must already
/// exist in `doc`; throws ValidationError otherwise.
void apply_override(nlohmann::json& doc, const std::string& dotted_path, const nlohmann::json& value);

}  // namespace powervp
