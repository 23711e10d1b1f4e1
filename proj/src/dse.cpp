#include "powervp/dse.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include "powervp/errors.hpp"
#include "powervp/platform.hpp"

namespace powervp {

using nlohmann::json;

std::vector<DseVariant> paper_variants() {
    return {
        {"A", {}},
        {"B", {{"core.phase.taps", 20}}},
        {"C", {{"power.converters.core_dcdc.lut", "RT8097A"}}},
        {"D", {{"core.phase.taps", 20}, {"power.converters.core_dcdc.lut", "RT8097A"}}},
    };
}

SystemConfig paper_base_config() {
    SystemConfig c = default_config();
    c.name = "config_A";
    c.core.phase.interval = SimTime::from_ms(50);
    return c;
}

std::vector<DseVariant> parse_variants(const json& doc) {
    std::vector<std::string> errors;
    std::vector<DseVariant> out;
    if (!doc.is_object() || !doc.contains("variants") || !doc["variants"].is_array()) {
        throw ValidationError({"variants: expected {\"variants\": [...]}"});
    }
    std::set<std::string> labels;
    const auto& list = doc["variants"];
    for (std::size_t k = 0; k < list.size(); ++k) {
        const auto path = "variants[" + std::to_string(k) + "]";
        const auto& item = list[k];
        if (!item.is_object() || !item.contains("label") || !item["label"].is_string()) {
            errors.push_back(path + ".label: required string");
            continue;
        }
        for (const auto& [key, v] : item.items()) {
            if (key != "label" && key != "overrides") errors.push_back(path + "." + key + ": unknown field");
        }
        DseVariant v;
        v.label = item["label"].get<std::string>();
        if (v.label.empty() || !labels.insert(v.label).second) {
            errors.push_back(path + ".label: labels must be non-empty and unique");
        }
        if (item.contains("overrides")) {
            const auto& ov = item["overrides"];
            if (ov.is_object()) {
                for (const auto& [p, val] : ov.items()) v.overrides.emplace_back(p, val);
            } else if (ov.is_array()) {
                for (const auto& pair : ov) {
                    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) {
                        errors.push_back(path + ".overrides: entries must be [path, value]");
                        continue;
                    }
                    v.overrides.emplace_back(pair[0].get<std::string>(), pair[1]);
                }
            } else {
                errors.push_back(path + ".overrides: expected an object or a list of [path, value]");
            }
        }
        out.push_back(std::move(v));
    }
    if (out.empty() && errors.empty()) errors.emplace_back("variants: at least one variant is required");
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return out;
}

std::vector<DseVariant> load_variants(const std::string& spec) {
    if (spec == "builtin:paper") return paper_variants();
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot open variants file '" + spec + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_variants(json::parse(buf.str()));
    } catch (const json::parse_error& e) {
        throw ParseError(spec + ": malformed JSON: " + e.what());
    }
}

SystemConfig apply_variant(const SystemConfig& base, const DseVariant& variant) {
    json doc = to_json(base);
    std::vector<std::string> errors;
    for (const auto& [path, value] : variant.overrides) {
        try {
            apply_override(doc, path, value);
        } catch (const ValidationError& e) {
            errors.insert(errors.end(), e.violations().begin(), e.violations().end());
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    SystemConfig c = parse_config(doc, base.base_dir);
    c.name = variant.label;
    return c;
}

bool DseResult::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.ok; });
}

namespace {

struct Outcome {
    ReportRow row;
    SimulationSummary summary;
};

Outcome run_variant(const SystemConfig& base, const DseVariant& variant, SimTime duration) {
    Outcome o;
    try {
        SystemConfig c = apply_variant(base, variant);
        c.kernel.horizon = duration;
        auto platform = build_platform(c);
        o.summary = run(*platform, c.kernel);
        o.row = make_row(variant.label, o.summary);
    } catch (const std::exception& e) {
        o.row.label = variant.label;
        o.row.ok = false;
        o.row.error = e.what();
    }
    return o;
}

}  // namespace

DseResult run_dse(const SystemConfig& base, const std::vector<DseVariant>& variants, SimTime duration,
                  unsigned jobs) {
    jobs = std::max(1u, jobs);
    std::vector<Outcome> outcomes(variants.size());
    std::vector<std::future<Outcome>> inflight;
    std::size_t next = 0;
    std::size_t collected = 0;
    while (collected < variants.size()) {
        while (next < variants.size() && inflight.size() < jobs) {
            inflight.push_back(std::async(std::launch::async, run_variant, std::cref(base), std::cref(variants[next]),
                                          duration));
            ++next;
        }
        // Collect in submission order; slot index = collected.
        outcomes[collected] = inflight.front().get();
        inflight.erase(inflight.begin());
        ++collected;
    }

    std::vector<std::size_t> order(variants.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return variants[a].label < variants[b].label; });
    DseResult result;
    for (std::size_t k : order) {
        result.rows.push_back(outcomes[k].row);
        result.summaries.push_back(outcomes[k].summary);
    }
    normalize(result.rows, "A");
    return result;
}

}  // namespace powervp
