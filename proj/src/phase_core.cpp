#include "powervp/phase_core.hpp"

#include "powervp/errors.hpp"

namespace powervp {

SimTime PhaseScript::tile_start(std::uint32_t tile) const {
    const unsigned __int128 c = compute_time().ns;
    return SimTime{static_cast<std::uint64_t>(c * tile / tiles)};
}

std::vector<std::string> PhaseScript::validate() const {
    std::vector<std::string> out;
    if (interval.ns == 0) out.emplace_back("interval must be > 0");
    if (taps == 0) out.emplace_back("taps must be >= 1");
    if (tiles == 0) out.emplace_back("tiles must be >= 1");
    if (per_tap.ns == 0) out.emplace_back("per_tap must be > 0");
    if (!(compute_time() < interval)) out.emplace_back("taps * per_tap must fit inside the interval");
    if (tiles > 0 && compute_time().ns < tiles) out.emplace_back("more tiles than nanoseconds of compute");
    if (tiles > 0 && spike.ns > compute_time().ns / tiles) {
        out.emplace_back("spike must not exceed the tile length");
    }
    if (spike_power_w < 0.0 || compute_power_w < 0.0 || wait_power_w < 0.0) {
        out.emplace_back("phase powers must be >= 0");
    }
    for (double w : leakage_w) {
        if (w < 0.0) out.emplace_back("leakage powers must be >= 0");
    }
    return out;
}

PhaseSegment phase_segment_at(const PhaseScript& s, SimTime t) {
    const std::uint64_t k = t.ns / s.interval.ns;
    const SimTime cycle_start{k * s.interval.ns};
    const SimTime cycle_end = cycle_start + s.interval;
    const SimTime off = t - cycle_start;
    const SimTime compute = s.compute_time();

    if (k == 0 || off >= compute) {
        const SimTime begin = k == 0 ? SimTime{} : cycle_start + compute;
        return {PowerState::SleepWait, s.wait_power_w, begin, cycle_end};
    }

    auto tile = static_cast<std::uint32_t>(static_cast<unsigned __int128>(off.ns) * s.tiles / compute.ns);
    while (tile + 1 < s.tiles && s.tile_start(tile + 1) <= off) ++tile;
    while (tile > 0 && s.tile_start(tile) > off) --tile;

    const SimTime tile_begin = cycle_start + s.tile_start(tile);
    const SimTime tile_end = cycle_start + (tile + 1 == s.tiles ? compute : s.tile_start(tile + 1));
    const SimTime spike_end = tile_begin + s.spike;
    if (cycle_start + off < spike_end) {
        return {PowerState::ClusterActive, s.spike_power_w, tile_begin, spike_end};
    }
    return {PowerState::ClusterActive, s.compute_power_w, spike_end, tile_end};
}

PhaseCore::PhaseCore(PhaseScript script) : script_(std::move(script)) {
    if (auto problems = script_.validate(); !problems.empty()) {
        for (auto& p : problems) p = "core.phase: " + p;
        throw ValidationError(std::move(problems));
    }
}

std::optional<SimTime> PhaseCore::step_until(SimTime t) {
    while (now_ < t) {
        const auto seg = phase_segment_at(script_, now_);
        const SimTime stop = min(seg.end, t);
        const double secs = (stop - now_).seconds();
        const double dyn = seg.dynamic_w * secs;
        const double leak = script_.leakage_w[static_cast<std::size_t>(seg.state)] * secs;
        dynamic_accum_ += dyn;
        leakage_accum_ += leak;
        total_dynamic_ += dyn;
        total_leakage_ += leak;
        last_state_ = seg.state;
        now_ = stop;
    }
    return phase_segment_at(script_, now_).end;
}

PowerSample PhaseCore::get_instant_power(SimTime window_end) {
    step_until(window_end);
    PowerSample sample;
    const double dt = (window_end - window_start_).seconds();
    if (dt > 0.0) {
        sample.dynamic_w = dynamic_accum_ / dt;
        sample.leakage_w = leakage_accum_ / dt;
    }
    sample.state_tag = to_string(last_state_);
    dynamic_accum_ = 0.0;
    leakage_accum_ = 0.0;
    window_start_ = window_end;
    return sample;
}

SimTime phase_step(const PhaseScript& script, SimTime until) {
    PhaseCore core(script);
    return *core.step_until(until);
}

}  // namespace powervp
