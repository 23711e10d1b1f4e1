#include "powervp/microphone.hpp"

#include <cmath>
#include <numbers>

#include "powervp/errors.hpp"

namespace powervp {

std::vector<std::string> MicConfig::validate() const {
    std::vector<std::string> out;
    if (sample_rate_hz == 0) out.emplace_back("sample_rate_hz must be > 0");
    if (fifo_depth < 1) out.emplace_back("fifo_depth must be >= 1");
    if (buffer_len < 1) out.emplace_back("buffer_len must be >= 1");
    if (!(supply_v > 0.0)) out.emplace_back("supply_v must be > 0");
    if (!(idle_current_a >= 0.0) || !(active_current_a >= 0.0)) out.emplace_back("currents must be >= 0");
    if (!(pattern.amplitude >= 0.0 && pattern.amplitude <= 32767.0)) {
        out.emplace_back("pattern.amplitude must lie in [0, 32767]");
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::int16_t mic_sample(const SamplePattern& p, std::uint64_t rate, std::uint64_t k) {
    switch (p.shape) {
        case SampleShape::Sine: {
            // Phase reduced in integers first so long runs do not lose precision.
            const double cycles = p.frequency_hz * static_cast<double>(k % rate) / static_cast<double>(rate) +
                                  p.frequency_hz * static_cast<double>(k / rate);
            const double frac = cycles - std::floor(cycles);
            return static_cast<std::int16_t>(std::lround(p.amplitude * std::sin(2.0 * std::numbers::pi * frac)));
        }
        case SampleShape::Noise: {
            const auto r = splitmix64(p.seed ^ splitmix64(k));
            const double u = static_cast<double>(r >> 11) * 0x1.0p-53 * 2.0 - 1.0;
            return static_cast<std::int16_t>(std::lround(p.amplitude * u));
        }
    }
    return 0;
}

Microphone::Microphone(MicConfig config)
    : config_(std::move(config)),
      psm_({{"IDLE", config_.idle_current_a}, {"ACTIVE", config_.active_current_a}}, config_.supply_v, "IDLE") {
    if (auto problems = config_.validate(); !problems.empty()) {
        for (auto& p : problems) p = "mic: " + p;
        throw ValidationError(std::move(problems));
    }
    ring_.assign(config_.fifo_depth, 0);
    if (config_.start_on_reset) start(SimTime{});
}

SimTime Microphone::sample_time(std::uint64_t k) const {
    const unsigned __int128 num = static_cast<unsigned __int128>(k + 1) * 1'000'000'000u;
    const auto ns = static_cast<std::uint64_t>((num + config_.sample_rate_hz - 1) / config_.sample_rate_hz);
    return run_start_ + SimTime{ns};
}

void Microphone::account_energy(SimTime upto) {
    if (upto > energy_time_) {
        energy_accum_ += psm_.power() * (upto - energy_time_).seconds();
        energy_time_ = upto;
    }
}

void Microphone::start(SimTime at) {
    tick(at);
    if (sampling_) return;
    account_energy(at);
    sampling_ = true;
    run_start_ = at;
    run_samples_ = 0;
    ++generation_;
    psm_.set_state("ACTIVE");
}

void Microphone::stop(SimTime at) {
    tick(at);
    if (!sampling_) return;
    account_energy(at);
    sampling_ = false;
    ++generation_;
    psm_.set_state("IDLE");
}

void Microphone::push(std::int16_t s) {
    const std::size_t depth = ring_.size();
    if (fill_ == depth) {
        head_ = (head_ + 1) % depth;
        --fill_;
        ++overflows_;
    }
    ring_[(head_ + fill_) % depth] = s;
    ++fill_;
}

void Microphone::tick(SimTime now) {
    if (!sampling_) return;
    while (sample_time(run_samples_) <= now) {
        push(mic_sample(config_.pattern, config_.sample_rate_hz, pushed_));
        ++pushed_;
        ++run_samples_;
    }
}

SimTime Microphone::next_data_ready() const {
    if (!sampling_) return SimTime::infinity();
    const std::uint64_t next_multiple = (run_samples_ / config_.buffer_len + 1) * config_.buffer_len;
    return sample_time(next_multiple - 1);
}

BusResponse Microphone::handle(const BusRequest& req, SimTime now) {
    tick(now);
    if (req.width != 4) return BusResponse{0, true, 0};
    switch (req.address) {
        case kMicData: {
            if (req.write || fill_ == 0) return BusResponse{0, true, 0};
            const std::int16_t s = ring_[head_];
            head_ = (head_ + 1) % ring_.size();
            --fill_;
            return BusResponse{static_cast<std::uint32_t>(static_cast<std::int32_t>(s)), false, 0};
        }
        case kMicStatus:
            if (req.write) return BusResponse{0, true, 0};
            return BusResponse{static_cast<std::uint32_t>(fill_), false, 0};
        case kMicCtrl:
            if (!req.write) return BusResponse{sampling_ ? 1u : 0u, false, 0};
            if (req.data == 1) {
                start(now);
            } else if (req.data == 0) {
                stop(now);
            } else {
                return BusResponse{0, true, 0};
            }
            return BusResponse{};
        default:
            return BusResponse{0, true, 0};
    }
}

std::vector<std::int16_t> Microphone::fifo_contents() const {
    std::vector<std::int16_t> out;
    out.reserve(fill_);
    for (std::size_t k = 0; k < fill_; ++k) out.push_back(ring_[(head_ + k) % ring_.size()]);
    return out;
}

PowerSample Microphone::get_instant_power(SimTime window_end) {
    tick(window_end);
    account_energy(window_end);
    PowerSample s;
    if (window_end > window_start_) {
        s.dynamic_w = energy_accum_ / (window_end - window_start_).seconds();
        energy_accum_ = 0.0;
        window_start_ = window_end;
    }
    s.state_tag = psm_.state();
    return s;
}

}  // namespace powervp
