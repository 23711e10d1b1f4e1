#include "powervp/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "powervp/errors.hpp"

namespace powervp {

ReportRow make_row(const std::string& label, const SimulationSummary& s) {
    ReportRow r;
    r.label = label;
    r.battery_p_mw = s.avg_battery_w * 1e3;
    r.core_dcdc_eff_pct = s.core_dcdc_eff_pct();
    r.dsoc_per_h_pct = s.dsoc_per_hour_pct();
    r.lifetime_h = s.lifetime_h();
    r.lifetime_norm = 1.0;
    return r;
}

void normalize(std::vector<ReportRow>& rows, const std::string& reference) {
    const ReportRow* ref = nullptr;
    for (const auto& r : rows) {
        if (r.ok && r.label == reference) ref = &r;
    }
    if (!ref) {
        for (const auto& r : rows) {
            if (r.ok && (!ref || r.label < ref->label)) ref = &r;
        }
    }
    if (!ref) return;
    const double base = ref->dsoc_per_h_pct;
    const std::string ref_label = ref->label;
    for (auto& r : rows) {
        if (!r.ok) continue;
        if (r.label == ref_label) {
            r.lifetime_norm = 1.0;
        } else if (r.dsoc_per_h_pct > 0.0) {
            r.lifetime_norm = base / r.dsoc_per_h_pct;
        } else {
            r.lifetime_norm = base > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
        }
    }
}

namespace {

void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
}

std::vector<std::string> cells(const ReportRow& r) {
    if (!r.ok) return {r.label, "error", "error", "error", "error", "error"};
    return {r.label,
            format_number(r.battery_p_mw),
            format_number(r.core_dcdc_eff_pct),
            format_number(r.dsoc_per_h_pct),
            format_number(r.lifetime_h),
            format_number(r.lifetime_norm)};
}

}  // namespace

std::string report_csv(std::vector<ReportRow> rows) {
    sort_rows(rows);
    std::string out = std::string(kReportHeader) + "\n";
    for (const auto& r : rows) {
        const auto c = cells(r);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) out += ',';
            out += c[k];
        }
        out += '\n';
    }
    return out;
}

std::string report_table(std::vector<ReportRow> rows) {
    sort_rows(rows);
    std::vector<std::vector<std::string>> grid{
        {"label", "battery P [mW]", "core DC/DC eff [%]", "dSoC/h [%]", "lifetime [h]", "lifetime (norm)"}};
    for (const auto& r : rows) grid.push_back(cells(r));
    std::vector<std::size_t> width(grid[0].size(), 0);
    for (const auto& line : grid) {
        for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], line[k].size());
    }
    std::string out;
    for (const auto& line : grid) {
        for (std::size_t k = 0; k < line.size(); ++k) {
            if (k) out += "  ";
            const auto pad = std::string(width[k] - line[k].size(), ' ');
            out += k == 0 ? line[k] + pad : pad + line[k];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    for (const auto& r : rows) {
        if (!r.ok) out += r.label + ": " + r.error + "\n";
    }
    return out;
}

std::string summary_csv(const std::string& label, const SimulationSummary& s) {
    std::string out = "field,value\n";
    auto put = [&out](const std::string& k, const std::string& v) { out += k + "," + v + "\n"; };
    put("label", label);
    put("end_cause", to_string(s.end_cause));
    put("end_time_ns", std::to_string(s.end_time.ns));
    put("initial_soc", format_number(s.initial_soc));
    put("final_soc", format_number(s.final_soc));
    put("battery_p_mw", format_number(s.avg_battery_w * 1e3));
    put("battery_energy_j", format_number(s.battery_energy_j));
    put("core_dcdc_eff_pct", format_number(s.core_dcdc_eff_pct()));
    for (const auto& c : s.converters) put("eta_mean_" + c.name, format_number(c.mean_eta));
    put("dsoc_pct", format_number(s.dsoc_pct()));
    put("dsoc_per_h_pct", format_number(s.dsoc_per_hour_pct()));
    put("lifetime_h", format_number(s.lifetime_h()));
    put("power_ticks", std::to_string(s.power_ticks));
    put("events_delivered", std::to_string(s.events_delivered));
    put("max_lockstep_gap_ns", std::to_string(s.max_lockstep_gap.ns));
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (out.fail()) throw Error("write failed on '" + path + "'");
}

}  // namespace powervp
