#include <algorithm>
#include <fstream>

#include "catch_amalgamated.hpp"
#include "powervp/config.hpp"
#include "powervp/errors.hpp"

using namespace powervp;
using nlohmann::json;

namespace {

const std::string kDir = POWERVP_CONFIG_DIR;

json shipped(const std::string& name) {
    std::ifstream in(kDir + "/" + name);
    return json::parse(in);
}

std::vector<std::string> violations_of(const json& doc) {
    try {
        parse_config(doc, kDir);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const auto& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("shipped config_A has the reference setup shape") {
    const SystemConfig c = load_config(kDir + "/config_A.json");
    CHECK(c.name == "config_A");
    CHECK(c.core.kind == CoreKind::Phase);
    CHECK(c.core.phase.taps == 40);
    CHECK(c.core.phase.interval == SimTime::from_ms(50));
    REQUIRE(c.power.converters.size() == 2);
    CHECK(c.power.converters[0].name == "batt_dcdc");
    CHECK(c.power.converters[0].placement == Placement::BatteryToBus);
    CHECK(c.power.converters[1].name == "core_dcdc");
    CHECK(c.power.converters[1].rail == "core");
    CHECK(c.power.converters[1].v_out == 1.8);
    CHECK(c.power.battery.capacity_coulomb == 115.2);
    CHECK(c.mic.mic.idle_current_a == 120e-6);
    CHECK(c.mic.mic.active_current_a == 160e-6);
}

TEST_CASE("every shipped config loads") {
    for (const char* name : {"config_A.json", "default_1s.json", "iss_fir.json"}) {
        INFO(name);
        CHECK_NOTHROW(load_config(kDir + "/" + name));
    }
    const auto iss = load_config(kDir + "/iss_fir.json");
    CHECK(iss.core.kind == CoreKind::Iss);
    CHECK(iss.resolved_program_path() == kDir + "/firmware/fir40.bin");
}

TEST_CASE("the default pack equals the shipped 1 s config") {
    SystemConfig d = default_config();
    d.name = "default_1s";
    const SystemConfig shipped_cfg = load_config(kDir + "/default_1s.json");
    json a = to_json(d), b = to_json(shipped_cfg);
    a["kernel"] = b["kernel"];  // stride and horizon are run settings
    CHECK(a == b);
}

TEST_CASE("an efficiency LUT with decreasing currents names the LUT") {
    json doc = shipped("config_A.json");
    doc["power"]["lut_library"]["ST1PS03"] = json::array({{0.01, 0.9}, {0.001, 0.8}});
    const auto v = violations_of(doc);
    REQUIRE_FALSE(v.empty());
    CHECK(mentions(v, "ST1PS03"));
    CHECK(mentions(v, "increasing"));
}

TEST_CASE("missing battery section is a violation") {
    json doc = shipped("config_A.json");
    doc["power"].erase("battery");
    CHECK(mentions(violations_of(doc), "power.battery"));
}

TEST_CASE("violations are aggregated, not first-failure") {
    json doc = shipped("config_A.json");
    doc["kernel"]["power_timestep_ns"] = "soon";
    doc["core"]["phase"]["taps"] = -3;
    doc["mic"]["sample_rate_hz"] = 1.5;
    doc["power"]["converters"]["core_dcdc"]["lut"] = "NOPE";
    doc["bogus"] = 1;
    const auto v = violations_of(doc);
    CHECK(v.size() >= 5);
    CHECK(mentions(v, "kernel.power_timestep_ns"));
    CHECK(mentions(v, "core.phase.taps"));
    CHECK(mentions(v, "mic.sample_rate_hz"));
    CHECK(mentions(v, "power.converters.core_dcdc.lut"));
    CHECK(mentions(v, "bogus: unknown field"));
}

TEST_CASE("semantic checks") {
    json doc = shipped("config_A.json");
    doc["core"]["phase"]["interval_ns"] = 500000;  // compute does not fit
    CHECK(mentions(violations_of(doc), "core.phase"));

    doc = shipped("config_A.json");
    doc["core"]["rail"] = "io";
    CHECK(mentions(violations_of(doc), "core.rail"));

    doc = shipped("config_A.json");
    doc["power"]["converters"]["core_dcdc"]["placement"] = "battery_bus";
    CHECK(mentions(violations_of(doc), "exactly one battery_bus"));

    doc = shipped("config_A.json");
    doc["bus"]["regions"][1]["base"] = "0x1A100008";
    CHECK(mentions(violations_of(doc), "overlaps"));

    doc = shipped("config_A.json");
    doc["power"]["battery"]["initial_soc"] = 1.5;
    CHECK(mentions(violations_of(doc), "initial_soc"));
}

TEST_CASE("malformed JSON is a parse error") {
    CHECK_THROWS_AS(parse_config_text("{ \"power\": ", "."), ParseError);
    CHECK_THROWS_AS(load_config(kDir + "/nope.json"), ParseError);
}

TEST_CASE("round trip: writing a loaded config and reloading is identical") {
    for (const char* name : {"config_A.json", "default_1s.json", "iss_fir.json"}) {
        const SystemConfig a = load_config(kDir + "/" + name);
        const json doc = to_json(a);
        const SystemConfig b = parse_config_text(doc.dump(2), a.base_dir);
        CHECK(to_json(b) == doc);
    }
}

TEST_CASE("inline converter LUTs survive the round trip") {
    json doc = shipped("config_A.json");
    doc["power"]["converters"]["core_dcdc"]["lut"] = json::array({{0.001, 0.8}, {0.01, 0.9}});
    const SystemConfig c = parse_config(doc, kDir);
    CHECK(c.power.converters[1].lut_ref.empty());
    CHECK(c.power.converters[1].lut(0.0055) == Catch::Approx(0.85));
    CHECK(to_json(parse_config(to_json(c), kDir)) == to_json(c));
}

TEST_CASE("dotted overrides must name existing paths") {
    json doc = to_json(default_config());
    apply_override(doc, "core.phase.taps", 20);
    CHECK(doc["core"]["phase"]["taps"] == 20);
    CHECK_THROWS_AS(apply_override(doc, "core.phase.tapz", 20), ValidationError);
    CHECK_THROWS_AS(apply_override(doc, "core..taps", 20), ValidationError);
    CHECK_THROWS_AS(apply_override(doc, "core.phase.taps.x", 20), ValidationError);
}
