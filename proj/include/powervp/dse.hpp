#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "powervp/config.hpp"
#include "powervp/kernel.hpp"
#include "powervp/report.hpp"

namespace powervp {

struct DseVariant {
    std::string label;
    /// Dotted config paths applied in order after the base loads; last wins.
    std::vector<std::pair<std::string, nlohmann::json>> overrides;
};

/// The four shipped configurations: A baseline, B 20 taps, C RT8097A-like
/// core converter, D both.
std::vector<DseVariant> paper_variants();

/// Default pack with the 50 ms filter interval used for the comparison.
SystemConfig paper_base_config();

/// {"variants": [{"label": "B", "overrides": {"core.phase.taps": 20}}, ...]}.
/// "overrides" may also be a list of [path, value] pairs.
std::vector<DseVariant> parse_variants(const nlohmann::json& doc);
/// A path, or the literal "builtin:paper".
std::vector<DseVariant> load_variants(const std::string& spec);

/// Base config with the variant's overrides applied, re-validated.
SystemConfig apply_variant(const SystemConfig& base, const DseVariant& variant);

struct DseResult {
    std::vector<ReportRow> rows;  ///< sorted by label, normalized
    std::vector<SimulationSummary> summaries;  ///< aligned with rows; empty summary for failures
    bool all_ok() const;
};

/// Runs every variant over `duration` with up to `jobs` simulations in flight.
/// Results do not depend on `jobs`.
DseResult run_dse(const SystemConfig& base, const std::vector<DseVariant>& variants, SimTime duration,
                  unsigned jobs = 1);

}  // namespace powervp
