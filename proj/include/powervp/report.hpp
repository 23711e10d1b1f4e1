#pragma once

#include <string>
#include <vector>

#include "powervp/kernel.hpp"

namespace powervp {

inline constexpr const char* kReportHeader = "label,battery_p_mw,core_dcdc_eff_pct,dsoc_per_h_pct,lifetime_h,lifetime_norm";

struct ReportRow {
    std::string label;
    bool ok = true;
    std::string error;  ///< set when the variant failed
    double battery_p_mw = 0.0;
    double core_dcdc_eff_pct = 0.0;
    double dsoc_per_h_pct = 0.0;
    double lifetime_h = 0.0;
    double lifetime_norm = 0.0;
};

ReportRow make_row(const std::string& label, const SimulationSummary& s);

/// Fills lifetime_norm relative to the row labelled `reference` (A by default,
/// else the alphabetically first label): norm(X) = rate(reference) / rate(X).
void normalize(std::vector<ReportRow>& rows, const std::string& reference = "A");

/// Rows sorted by label. Failed rows carry "error" in every numeric column.
std::string report_csv(std::vector<ReportRow> rows);
std::string report_table(std::vector<ReportRow> rows);

/// field,value pairs for a single run.
std::string summary_csv(const std::string& label, const SimulationSummary& s);

/// Writes text to path, throwing Error with the path on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace powervp
