// powervp: run one simulation or a design-space exploration.
#include <cmath>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "powervp/config.hpp"
#include "powervp/dse.hpp"
#include "powervp/errors.hpp"
#include "powervp/kernel.hpp"
#include "powervp/platform.hpp"
#include "powervp/report.hpp"
#include "powervp/trace.hpp"

using namespace powervp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDepleted = 2;

struct RunArgs {
    std::string config;
    std::string duration;
    std::string trace;
    std::string summary;
    std::string power_timestep;
    std::uint64_t trace_stride = 0;
};

struct DseArgs {
    std::string base;
    std::string variants = "builtin:paper";
    double hours = 1.0;
    std::string report;
    unsigned jobs = 0;
};

void print_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
}

int cmd_run(const RunArgs& a) {
    SystemConfig c = load_config(a.config);
    if (!a.duration.empty()) c.kernel.horizon = parse_duration(a.duration);
    if (!a.power_timestep.empty()) c.kernel.power_timestep = parse_duration(a.power_timestep);
    if (a.trace_stride) c.kernel.trace_stride = a.trace_stride;

    auto platform = build_platform(c);
    std::optional<TraceWriter> writer;
    RunHooks hooks;
    if (!a.trace.empty()) {
        writer.emplace(a.trace);
        hooks.trace = [&writer](const TraceRecord& r) { writer->write(r); };
    }
    const SimulationSummary s = run(*platform, c.kernel, hooks);
    if (writer) writer->close();

    const std::string text = summary_csv(c.name, s);
    if (!a.summary.empty()) write_text_file(a.summary, text);
    std::cout << text;
    return s.end_cause == EndCause::BatteryDepleted ? kExitDepleted : kExitOk;
}

int cmd_dse(const DseArgs& a) {
    if (!(a.hours > 0.0) || !std::isfinite(a.hours)) throw Error("--hours must be a positive number");
    const SystemConfig base = a.base.empty() ? paper_base_config() : load_config(a.base);
    const auto variants = load_variants(a.variants);
    const SimTime duration{static_cast<std::uint64_t>(std::llround(a.hours * 3600e9))};
    const unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());

    const DseResult result = run_dse(base, variants, duration, jobs);
    if (!a.report.empty()) write_text_file(a.report, report_csv(result.rows));
    std::cout << report_table(result.rows);
    return result.all_ok() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery-aware virtual platform: co-simulates a RISC-V core with its power network."};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Simulate one configuration");
    run_cmd->add_option("--config", run_args.config, "System configuration (JSON)")->required();
    run_cmd->add_option("--duration", run_args.duration, "Horizon, e.g. 1h, 250ms (default: from config)");
    run_cmd->add_option("--trace", run_args.trace, "Write the CSV trace here");
    run_cmd->add_option("--summary", run_args.summary, "Write the summary CSV here");
    run_cmd->add_option("--power-timestep", run_args.power_timestep, "Power-net timestep, e.g. 100us");
    run_cmd->add_option("--trace-stride", run_args.trace_stride, "Emit every k-th power tick");

    DseArgs dse_args;
    auto* dse_cmd = app.add_subcommand("dse", "Run and compare configuration variants");
    dse_cmd->add_option("--base", dse_args.base, "Base configuration (default: shipped 50 ms pack)");
    dse_cmd->add_option("--variants", dse_args.variants, "Variants file or builtin:paper")->capture_default_str();
    dse_cmd->add_option("--hours", dse_args.hours, "Simulated hours per variant")->capture_default_str();
    dse_cmd->add_option("--report", dse_args.report, "Write the report CSV here");
    dse_cmd->add_option("--jobs", dse_args.jobs, "Parallel simulations (default: hardware threads)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitError;
    }

    try {
        if (*run_cmd) return cmd_run(run_args);
        return cmd_dse(dse_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: invalid configuration\n";
        for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        print_error(e);
        return kExitError;
    }
}
