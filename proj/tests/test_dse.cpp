#include "catch_amalgamated.hpp"
#include "powervp/dse.hpp"
#include "powervp/errors.hpp"

using namespace powervp;
using nlohmann::json;

TEST_CASE("builtin paper variants") {
    const auto v = load_variants("builtin:paper");
    REQUIRE(v.size() == 4);
    CHECK(v[0].label == "A");
    CHECK(v[0].overrides.empty());
    CHECK(v[3].overrides.size() == 2);

    const SystemConfig base = paper_base_config();
    CHECK(base.core.phase.interval == SimTime::from_ms(50));
    const auto b = apply_variant(base, v[1]);
    CHECK(b.core.phase.taps == 20);
    CHECK(b.power.converters[1].lut_ref == "ST1PS03");
    const auto c = apply_variant(base, v[2]);
    CHECK(c.core.phase.taps == 40);
    CHECK(c.power.converters[1].lut_ref == "RT8097A");
    const auto d = apply_variant(base, v[3]);
    CHECK(d.core.phase.taps == 20);
    CHECK(d.power.converters[1].lut_ref == "RT8097A");
    CHECK(d.name == "D");
}

TEST_CASE("shipped variants file matches the builtin set") {
    const auto file = load_variants(std::string(POWERVP_CONFIG_DIR) + "/variants_paper.json");
    const auto builtin = paper_variants();
    REQUIRE(file.size() == builtin.size());
    for (std::size_t k = 0; k < file.size(); ++k) {
        CHECK(file[k].label == builtin[k].label);
        CHECK(file[k].overrides == builtin[k].overrides);
    }
}

TEST_CASE("variant files: both override forms, last wins") {
    const auto v = parse_variants(json::parse(R"({"variants": [
        {"label": "X", "overrides": [["core.phase.taps", 10], ["core.phase.taps", 30]]},
        {"label": "Y", "overrides": {"kernel.trace_stride": 5}}
    ]})"));
    REQUIRE(v.size() == 2);
    CHECK(apply_variant(paper_base_config(), v[0]).core.phase.taps == 30);
    CHECK(apply_variant(paper_base_config(), v[1]).kernel.trace_stride == 5);
}

TEST_CASE("malformed variant files are rejected with every problem") {
    try {
        parse_variants(json::parse(R"({"variants": [
            {"label": "A"}, {"label": "A"}, {"overrides": {}}, {"label": "B", "extra": 1, "overrides": 3}
        ]})"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() == 4);
    }
    CHECK_THROWS_AS(parse_variants(json::parse(R"({"variants": []})")), ValidationError);
    CHECK_THROWS_AS(parse_variants(json::parse("[]")), ValidationError);
    CHECK_THROWS_AS(load_variants("missing-variants.json"), ParseError);
}

TEST_CASE("overrides must name schema paths and produce a valid config") {
    const SystemConfig base = paper_base_config();
    CHECK_THROWS_AS(apply_variant(base, {"Q", {{"core.phase.tapz", 20}}}), ValidationError);
    CHECK_THROWS_AS(apply_variant(base, {"Q", {{"core.phase.taps", 0}}}), ValidationError);
    CHECK_THROWS_AS(apply_variant(base, {"Q", {{"power.converters.core_dcdc.lut", "MISSING"}}}), ValidationError);
}

TEST_CASE("a single variant normalizes to 1") {
    const auto r = run_dse(paper_base_config(), {{"solo", {}}}, SimTime::from_s(2), 1);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].lifetime_norm == 1.0);
    CHECK(r.all_ok());
}

TEST_CASE("report is independent of the parallelism degree") {
    const auto variants = paper_variants();
    const auto serial = run_dse(paper_base_config(), variants, SimTime::from_s(10), 1);
    const auto parallel = run_dse(paper_base_config(), variants, SimTime::from_s(10), 4);
    CHECK(report_csv(serial.rows) == report_csv(parallel.rows));
    for (const auto& r : serial.rows) {
        CHECK(r.lifetime_norm * r.dsoc_per_h_pct ==
              Catch::Approx(serial.rows.front().dsoc_per_h_pct).epsilon(1e-12));
    }
}

TEST_CASE("failing variants are reported per row") {
    std::vector<DseVariant> variants{{"B", {{"core.phase.interval_ns", 1000}}}, {"A", {}}};
    const auto r = run_dse(paper_base_config(), variants, SimTime::from_s(1), 2);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].label == "A");
    CHECK(r.rows[0].ok);
    CHECK_FALSE(r.rows[1].ok);
    CHECK(r.rows[1].error.find("core.phase") != std::string::npos);
    CHECK_FALSE(r.all_ok());
}
