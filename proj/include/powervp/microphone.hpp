#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powervp/core.hpp"
#include "powervp/func_bus.hpp"
#include "powervp/power_net.hpp"

namespace powervp {

enum class SampleShape { Sine, Noise };

struct SamplePattern {
    SampleShape shape = SampleShape::Sine;
    std::uint64_t seed = 1;
    double amplitude = 8000.0;
    double frequency_hz = 440.0;
};

struct MicConfig {
    std::uint64_t sample_rate_hz = 16'000;
    std::uint32_t fifo_depth = 512;
    std::uint32_t buffer_len = 256;
    SamplePattern pattern;
    bool start_on_reset = true;
    double supply_v = 3.3;
    double idle_current_a = 120e-6;
    double active_current_a = 160e-6;

    std::vector<std::string> validate() const;
};

/// k-th sample (k >= 0) of the deterministic waveform, as 16-bit PCM.
std::int16_t mic_sample(const SamplePattern& pattern, std::uint64_t sample_rate_hz, std::uint64_t k);

/// Register offsets inside the microphone region.
inline constexpr std::uint32_t kMicData = 0x0;    ///< read: pop oldest sample (error when empty)
inline constexpr std::uint32_t kMicStatus = 0x4;  ///< read: FIFO fill level
inline constexpr std::uint32_t kMicCtrl = 0x8;    ///< write 1: start sampling, 0: stop; read: enabled flag
inline constexpr std::uint32_t kMicRegionSize = 0x10;

/// Functional + power model of the microphone. Samples are pushed lazily: every
/// entry point first catches the FIFO up to the given time. Sample k of a
/// sampling run started at s lands at s + ceil((k+1) * 1e9 / rate) ns.
class Microphone : public LoadModel {
public:
    explicit Microphone(MicConfig config);

    void start(SimTime at);
    void stop(SimTime at);
    bool sampling() const { return sampling_; }

    /// Pushes every sample due at or before `now`.
    void tick(SimTime now);

    /// Register access (offset-relative, as routed by the bus) at time `now`.
    BusResponse handle(const BusRequest& req, SimTime now);

    /// Time of the next data-ready notification (buffer_len samples since the
    /// last one), or infinity when stopped.
    SimTime next_data_ready() const;
    /// Bumped on every start/stop so stale notifications can be recognised.
    std::uint64_t generation() const { return generation_; }

    PowerSample get_instant_power(SimTime window_end) override;

    std::size_t fifo_fill() const { return fill_; }
    std::uint64_t overflow_count() const { return overflows_; }
    std::uint64_t samples_pushed() const { return pushed_; }
    std::vector<std::int16_t> fifo_contents() const;
    const Psm& psm() const { return psm_; }
    const MicConfig& config() const { return config_; }

private:
    SimTime sample_time(std::uint64_t k) const;
    void push(std::int16_t s);
    void account_energy(SimTime upto);

    MicConfig config_;
    Psm psm_;
    bool sampling_ = false;
    SimTime run_start_{};
    std::uint64_t run_samples_ = 0;  ///< samples pushed in the current run
    std::uint64_t pushed_ = 0;       ///< across all runs; indexes the waveform
    std::uint64_t generation_ = 0;

    std::vector<std::int16_t> ring_;
    std::size_t head_ = 0;
    std::size_t fill_ = 0;
    std::uint64_t overflows_ = 0;

    SimTime energy_time_{};
    SimTime window_start_{};
    double energy_accum_ = 0.0;
};

}  // namespace powervp
