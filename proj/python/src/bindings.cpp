// Python bindings. Configs cross the boundary as plain dicts (JSON-shaped).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "powervp/dse.hpp"
#include "powervp/errors.hpp"
#include "powervp/kernel.hpp"
#include "powervp/trace.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace powervp;

namespace {

json to_cpp(const py::object& obj) {
    return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object to_py(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

/// A path (str / os.PathLike) or a config dict.
SystemConfig config_from(const py::object& source) {
    if (py::isinstance<py::dict>(source)) return parse_config(to_cpp(source));
    return load_config(py::str(source).cast<std::string>());
}

SimTime duration_from(const py::object& d) {
    if (py::isinstance<py::str>(d)) return parse_duration(d.cast<std::string>());
    const double s = d.cast<double>();
    if (!(s >= 0.0) || !std::isfinite(s)) throw py::value_error("duration must be a non-negative number of seconds");
    return SimTime{static_cast<std::uint64_t>(std::llround(s * 1e9))};
}

py::dict summary_dict(const std::string& label, const SimulationSummary& s) {
    py::dict d;
    d["name"] = label;
    d["end_time_s"] = s.end_time.seconds();
    d["end_cause"] = to_string(s.end_cause);
    d["initial_soc"] = s.initial_soc;
    d["final_soc"] = s.final_soc;
    d["dsoc_pct"] = s.dsoc_pct();
    d["dsoc_per_h_pct"] = s.dsoc_per_hour_pct();
    d["lifetime_h"] = s.lifetime_h();
    d["battery_energy_j"] = s.battery_energy_j;
    d["avg_battery_w"] = s.avg_battery_w;
    d["load_energy_j"] = s.load_energy_j;
    d["core_dcdc_eff_pct"] = s.core_dcdc_eff_pct();
    d["core_dynamic_energy_j"] = s.core_dynamic_energy_j;
    d["power_ticks"] = s.power_ticks;
    d["events_delivered"] = s.events_delivered;
    py::dict conv;
    for (const auto& c : s.converters) {
        py::dict e;
        e["mean_eta"] = c.mean_eta;
        e["energy_in_j"] = c.energy_in_j;
        e["energy_out_j"] = c.energy_out_j;
        conv[py::str(c.name)] = e;
    }
    d["converters"] = conv;
    return d;
}

py::dict run_py(const py::object& config, const py::object& duration, const py::object& power_timestep,
                std::optional<std::string> trace) {
    SystemConfig cfg = config_from(config);
    if (!duration.is_none()) cfg.kernel.horizon = duration_from(duration);
    if (!power_timestep.is_none()) cfg.kernel.power_timestep = duration_from(power_timestep);
    if (const auto v = validate(cfg); !v.empty()) throw ValidationError(v);
    SimulationSummary s;
    {
        py::gil_scoped_release release;
        auto platform = build_platform(cfg);
        std::optional<TraceWriter> writer;
        RunHooks hooks;
        if (trace) {
            writer.emplace(*trace);
            hooks.trace = [&writer](const TraceRecord& r) { writer->write(r); };
        }
        s = run(*platform, cfg.kernel, hooks);
        if (writer) writer->close();
    }
    return summary_dict(cfg.name, s);
}

py::list dse_py(const py::object& base, const py::object& variants, double hours, unsigned jobs) {
    const SystemConfig cfg = base.is_none() ? paper_base_config() : config_from(base);
    std::vector<DseVariant> list;
    if (py::isinstance<py::str>(variants)) {
        list = load_variants(variants.cast<std::string>());
    } else {
        list = parse_variants(to_cpp(variants));
    }
    if (!(hours > 0.0)) throw py::value_error("hours must be positive");
    DseResult r;
    {
        py::gil_scoped_release release;
        r = run_dse(cfg, list, SimTime{static_cast<std::uint64_t>(std::llround(hours * 3600e9))}, std::max(1u, jobs));
    }
    py::list out;
    for (const auto& row : r.rows) {
        py::dict d;
        d["label"] = row.label;
        d["ok"] = row.ok;
        d["error"] = row.error;
        d["battery_p_mw"] = row.battery_p_mw;
        d["core_dcdc_eff_pct"] = row.core_dcdc_eff_pct;
        d["dsoc_per_h_pct"] = row.dsoc_per_h_pct;
        d["lifetime_h"] = row.lifetime_h;
        d["lifetime_norm"] = row.lifetime_norm;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_powervp, m) {
    m.doc() = "Power-aware virtual platform for battery-powered edge devices";
    m.attr("__version__") = "0.1.0";

    static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
    static py::exception<Error> sim_error(m, "SimulationError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            std::string msg;
            for (const auto& v : e.violations()) msg += (msg.empty() ? "" : "\n") + v;
            validation_error(msg.c_str());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            sim_error(e.what());
        }
    });

    m.def("default_config", [] { return to_py(to_json(default_config())); },
          "Calibrated default configuration as a dict.");
    m.def("paper_base_config", [] { return to_py(to_json(paper_base_config())); },
          "Default configuration with the 50 ms filter interval used by the builtin variants.");
    m.def("load_config", [](const std::string& path) { return to_py(to_json(load_config(path))); }, py::arg("path"),
          "Load and validate a JSON config file; returns the complete document.");
    m.def("validate", [](const py::dict& doc) { return to_py(to_json(parse_config(to_cpp(doc)))); }, py::arg("config"),
          "Validate a config dict; returns it with defaults filled in or raises ValidationError.");
    m.def("parse_duration", [](const std::string& s) { return parse_duration(s).ns; }, py::arg("text"),
          "Duration string such as '250ms' or '1h' to integer nanoseconds.");
    m.def("run", &run_py, py::arg("config"), py::arg("duration") = py::none(), py::arg("power_timestep") = py::none(),
          py::arg("trace") = py::none(),
          "Simulate one configuration (path or dict). Durations are strings or seconds.");
    m.def("dse", &dse_py, py::arg("base") = py::none(), py::arg("variants") = "builtin:paper",
          py::arg("hours") = 1.0, py::arg("jobs") = 1,
          "Run a design-space exploration; returns one dict per variant, sorted by label.");
}
