#include "powervp/kernel.hpp"

#include <cmath>
#include <limits>

#include "powervp/errors.hpp"
#include "powervp/event_queue.hpp"

namespace powervp {

const char* to_string(EndCause c) {
    switch (c) {
        case EndCause::HorizonReached: return "HorizonReached";
        case EndCause::CoreHalted: return "CoreHalted";
        case EndCause::BatteryDepleted: return "BatteryDepleted";
    }
    return "unknown";
}

double SimulationSummary::dsoc_per_hour_pct() const {
    const double hours = end_time.seconds() / 3600.0;
    return hours > 0.0 ? dsoc_pct() / hours : 0.0;
}

double lifetime_hours(double initial_soc, double rate) {
    if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
    return initial_soc * 100.0 / rate;
}

double SimulationSummary::lifetime_h() const { return lifetime_hours(initial_soc, dsoc_per_hour_pct()); }

double SimulationSummary::core_dcdc_eff_pct() const {
    if (core_converter == PowerNet::npos || core_converter >= converters.size()) return 100.0;
    return converters[core_converter].mean_eta * 100.0;
}

SimTime align(SimTime functional_time, SimTime power_time) { return max(functional_time, power_time); }

namespace {

class Loop {
public:
    Loop(Platform& p, const KernelConfig& k, const RunHooks& h) : p_(p), k_(k), h_(h) {}

    SimulationSummary run();

private:
    void functional_phase(SimTime boundary);
    void ensure_mic_event();
    SimTime functional_time(SimTime power_time) const {
        return p_.core ? p_.core->now() : power_time;
    }

    Platform& p_;
    const KernelConfig& k_;
    const RunHooks& h_;
    EventQueue queue_;
    bool mic_scheduled_ = false;
    std::uint64_t mic_gen_ = 0;
    std::uint64_t delivered_ = 0;
};

void Loop::ensure_mic_event() {
    Microphone* mic = p_.mic.get();
    if (!mic || !p_.core) return;
    if (mic_scheduled_ && mic->generation() == mic_gen_) return;
    mic->tick(queue_.now());
    const SimTime due = mic->next_data_ready();
    mic_gen_ = mic->generation();
    mic_scheduled_ = !due.is_infinite();
    if (mic_scheduled_) queue_.schedule(max(due, queue_.now()), ComponentId::Mic, mic_gen_);
}

void Loop::functional_phase(SimTime boundary) {
    CoreModel* core = p_.core.get();
    if (!core) return;
    for (;;) {
        const Event* next = queue_.peek();
        const SimTime target = min(next ? next->due : SimTime::infinity(), boundary);
        if (!core->halted() && core->now() < target) core->step_until(target);
        ensure_mic_event();

        next = queue_.peek();
        if (!next || next->due >= boundary) return;
        if (next->due > target) continue;

        const Event ev = *queue_.pop_next();
        ++delivered_;
        if (ev.target == ComponentId::Mic && p_.mic && ev.payload == p_.mic->generation()) {
            mic_scheduled_ = false;
            p_.mic->tick(ev.due);
            if (!core->halted()) core->notify_data_ready(ev.due);
        }
    }
}

SimulationSummary Loop::run() {
    if (auto problems = k_.validate(); !problems.empty()) throw ValidationError(std::move(problems));

    PowerNet& net = *p_.net;
    const auto& spec = net.spec();
    SimulationSummary s;
    s.initial_soc = net.battery().soc;
    s.source_converter = net.source_converter();
    s.core_converter = p_.core ? net.converter_for_rail(p_.config.core.rail) : PowerNet::npos;
    std::vector<double> eta_time(spec.converters.size(), 0.0);
    s.converters.resize(spec.converters.size());
    for (std::size_t c = 0; c < spec.converters.size(); ++c) s.converters[c].name = spec.converters[c].name;

    std::vector<double> loads(net.load_names().size(), 0.0);
    SimTime t_power{};
    EndCause cause = EndCause::HorizonReached;
    bool done = false;
    std::uint64_t tick_index = 0;

    if (p_.core) p_.core->step_until(SimTime{});

    while (!done && t_power < k_.horizon) {
        const SimTime boundary = min(t_power + k_.power_timestep, k_.horizon);
        functional_phase(boundary);

        SimTime tick_end = boundary;
        bool halted = false;
        if (p_.core && p_.core->halted()) {
            halted = true;
            tick_end = min(max(p_.core->now(), t_power), boundary);
            if (tick_end == t_power) {
                cause = EndCause::CoreHalted;
                break;
            }
        }
        const SimTime dt = tick_end - t_power;

        std::string state_tag = "NONE";
        if (p_.core) {
            const auto sample = p_.core->get_instant_power(tick_end);
            loads[p_.core_load] = sample.total();
            state_tag = sample.state_tag;
        }
        if (p_.mic) loads[p_.mic_load] = p_.mic->get_instant_power(tick_end).total();

        const PowerTick tick = net.tick(tick_end, dt, loads);
        t_power = tick_end;

        const double secs = dt.seconds();
        s.battery_energy_j += tick.battery_w * secs;
        for (double w : tick.load_w) s.load_energy_j += w * secs;
        for (std::size_t c = 0; c < tick.converters.size(); ++c) {
            s.converters[c].energy_in_j += tick.converters[c].p_in * secs;
            s.converters[c].energy_out_j += tick.converters[c].p_out * secs;
            eta_time[c] += tick.converters[c].eta * secs;
        }
        ++s.power_ticks;

        const SimTime f = functional_time(t_power);
        const SimTime gap = f > t_power ? f - t_power : t_power - f;
        if (gap > s.max_lockstep_gap) s.max_lockstep_gap = gap;
        if (gap > k_.power_timestep && !(p_.core && p_.core->halted())) {
            throw Error("lockstep bound violated: functional " + std::to_string(f.ns) + " ns vs power " +
                        std::to_string(t_power.ns) + " ns");
        }

        if (h_.observer) h_.observer(tick, f);
        if (h_.trace && (tick_index + 1) % k_.trace_stride == 0) {
            TraceRecord r;
            r.t_ns = t_power.ns;
            r.core_state = state_tag;
            r.load_core_w = p_.core ? tick.load_w[p_.core_load] : 0.0;
            r.load_mic_w = p_.mic ? tick.load_w[p_.mic_load] : 0.0;
            r.bus_w = tick.bus_w;
            r.eta_batt_dcdc = tick.converters[s.source_converter].eta;
            r.eta_core_dcdc = s.core_converter == PowerNet::npos ? 1.0 : tick.converters[s.core_converter].eta;
            r.batt_i_a = tick.batt_i;
            r.batt_v = tick.batt_v;
            r.soc = tick.soc;
            h_.trace(r);
        }
        ++tick_index;

        if (tick.depleted) {
            cause = EndCause::BatteryDepleted;
            done = true;
        } else if (halted) {
            cause = EndCause::CoreHalted;
            done = true;
        }
    }

    s.end_time = t_power;
    s.end_cause = cause;
    s.final_soc = net.battery().soc;
    s.avg_battery_w = t_power.ns > 0 ? s.battery_energy_j / t_power.seconds() : 0.0;
    for (std::size_t c = 0; c < s.converters.size(); ++c) {
        s.converters[c].mean_eta = t_power.ns > 0 ? eta_time[c] / t_power.seconds() : 1.0;
    }
    s.core_dynamic_energy_j = p_.core ? p_.core->total_dynamic_energy() : 0.0;
    s.events_delivered = delivered_;
    return s;
}

}  // namespace

SimulationSummary run(Platform& platform, const KernelConfig& config, const RunHooks& hooks) {
    Loop loop(platform, config, hooks);
    return loop.run();
}

}  // namespace powervp
