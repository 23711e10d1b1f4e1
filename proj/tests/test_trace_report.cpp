#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "powervp/errors.hpp"
#include "powervp/report.hpp"
#include "powervp/trace.hpp"

using namespace powervp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ReportRow row(const std::string& label, double rate) {
    ReportRow r;
    r.label = label;
    r.battery_p_mw = 1.0;
    r.core_dcdc_eff_pct = 90.0;
    r.dsoc_per_h_pct = rate;
    r.lifetime_h = lifetime_hours(1.0, rate);
    return r;
}

}  // namespace

TEST_CASE("numbers use 9 significant digits and no locale") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(123456789012.0) == "1.23456789e+11");
    CHECK(format_number(2.5e-7) == "2.5e-07");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(42.0) == "42");
}

TEST_CASE("empty run gives a header-only trace") {
    {
        TraceWriter w("trace_empty.csv");
        w.close();
    }
    CHECK(slurp("trace_empty.csv") == std::string(kTraceHeader) + "\n");
}

TEST_CASE("two records give three LF-terminated lines") {
    TraceWriter w("trace_two.csv");
    TraceRecord r;
    r.t_ns = 100000;
    r.core_state = "SLEEP_WAIT";
    r.load_core_w = 1e-4;
    r.load_mic_w = 5.28e-4;
    r.bus_w = 6.5e-4;
    r.eta_batt_dcdc = 0.87;
    r.eta_core_dcdc = 0.9;
    r.batt_i_a = 1.8e-4;
    r.batt_v = 4.05;
    r.soc = 1.0;
    w.write(r);
    r.t_ns = 200000;
    w.write(r);
    w.close();
    CHECK(w.rows() == 2);
    const auto text = slurp("trace_two.csv");
    CHECK(text.find('\r') == std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.substr(text.find('\n') + 1, text.find('\n', text.find('\n') + 1) - text.find('\n') - 1) ==
          "100000,SLEEP_WAIT,0.0001,0.000528,0.00065,0.87,0.9,0.00018,4.05,1");
}

TEST_CASE("unwritable trace path is reported with the path") {
    try {
        TraceWriter w("no/such/dir/trace.csv");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("no/such/dir/trace.csv") != std::string::npos);
    }
}

TEST_CASE("lifetime extrapolates the discharge rate") {
    CHECK(lifetime_hours(1.0, 5.2) == Catch::Approx(19.23).margin(0.005));
    CHECK(std::isinf(lifetime_hours(1.0, 0.0)));
    CHECK(lifetime_hours(0.8, 4.0) == Catch::Approx(20.0));
}

TEST_CASE("zero-load rows print inf") {
    std::vector<ReportRow> rows{row("Z", 0.0)};
    normalize(rows);
    CHECK(report_csv(rows) == std::string(kReportHeader) + "\nZ,1,90,0,inf,1\n");
}

TEST_CASE("rows are sorted by label and normalized to A") {
    std::vector<ReportRow> rows{row("D", 4.4), row("A", 5.2), row("C", 5.0), row("B", 4.6)};
    normalize(rows);
    const auto csv = report_csv(rows);
    CHECK(csv.find("\nA,") < csv.find("\nB,"));
    CHECK(csv.find("\nB,") < csv.find("\nC,"));
    CHECK(csv.find("\nC,") < csv.find("\nD,"));
    for (const auto& r : rows) {
        CHECK(r.lifetime_norm * r.dsoc_per_h_pct == Catch::Approx(5.2).epsilon(1e-12));
    }
    const auto table = report_table(rows);
    CHECK(table.find("lifetime (norm)") != std::string::npos);
}

TEST_CASE("without an A row the first label is the reference") {
    std::vector<ReportRow> rows{row("y", 2.0), row("x", 4.0)};
    normalize(rows);
    CHECK(rows[0].lifetime_norm == 2.0);
    CHECK(rows[1].lifetime_norm == 1.0);
}

TEST_CASE("failed rows are marked") {
    std::vector<ReportRow> rows{row("A", 1.0)};
    ReportRow bad;
    bad.label = "B";
    bad.ok = false;
    bad.error = "boom";
    rows.push_back(bad);
    normalize(rows);
    CHECK(report_csv(rows).find("B,error,error,error,error,error") != std::string::npos);
    CHECK(report_table(rows).find("B: boom") != std::string::npos);
}
