#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "powervp/firmware.hpp"
#include "powervp/iss.hpp"
#include "powervp/kernel.hpp"
#include "powervp/microphone.hpp"
#include "powervp/rv32.hpp"
#include "ref_rv32.hpp"

using namespace powervp;

namespace {

const std::string kDir = POWERVP_CONFIG_DIR;

// Straight C++ FIR over the same samples and coefficients.
std::vector<std::int32_t> fir_oracle(const std::vector<std::int32_t>& x, const std::vector<std::int32_t>& c) {
    std::vector<std::int32_t> y(x.size(), 0);
    for (std::size_t n = c.size() - 1; n < x.size(); ++n) {
        std::int32_t acc = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            acc = static_cast<std::int32_t>(static_cast<std::uint32_t>(acc) +
                                            static_cast<std::uint32_t>(c[k] * x[n - k]));
        }
        y[n] = acc >> 15;
    }
    return y;
}

}  // namespace

TEST_CASE("committed firmware images match the generator") {
    for (std::uint32_t taps : {40u, 20u}) {
        FirFirmwareParams p;
        p.taps = taps;
        CHECK(load_program_image(kDir + "/firmware/fir" + std::to_string(taps) + ".bin") == fir_firmware(p));
    }
}

TEST_CASE("coefficients sum to about one in Q15") {
    for (std::uint32_t taps : {1u, 20u, 40u}) {
        const auto c = fir_coefficients(taps);
        std::int64_t sum = 0;
        for (auto v : c) sum += v;
        CHECK(sum <= 32768);
        CHECK(sum > 32768 - static_cast<std::int64_t>(taps));
    }
}

TEST_CASE("FIR firmware on the full platform filters mic buffers") {
    SystemConfig c = default_config();
    c.core.kind = CoreKind::Iss;
    c.core.program = "unused";
    c.mic.mic.pattern.shape = SampleShape::Noise;
    c.kernel.horizon = SimTime::from_ms(100);

    FirFirmwareParams p;
    p.frames = 3;
    auto platform = build_platform(c, fir_firmware(p));
    const auto s = run(*platform, c.kernel);
    REQUIRE(s.end_cause == EndCause::CoreHalted);
    const Iss& iss = *platform->iss();
    CHECK(iss.reg(rv32::s8) == 3);
    // Third buffer: samples 512..767, finished shortly after 48 ms.
    CHECK(s.end_time > SimTime::from_ms(48));
    CHECK(s.end_time < SimTime::from_ms(49));

    std::vector<std::int32_t> x(p.buffer_len);
    for (std::uint32_t n = 0; n < p.buffer_len; ++n) {
        x[n] = mic_sample(c.mic.mic.pattern, c.mic.mic.sample_rate_hz, 2 * p.buffer_len + n);
        CHECK(static_cast<std::int32_t>(iss.read_word(p.buf_addr + 4 * n)) == x[n]);
    }
    const auto y = fir_oracle(x, fir_coefficients(p.taps));
    for (std::uint32_t n = p.taps - 1; n < p.buffer_len; ++n) {
        CHECK(static_cast<std::int32_t>(iss.read_word(p.out_addr + 4 * n)) == y[n]);
    }
    CHECK(iss.class_counts()[static_cast<std::size_t>(InstrClass::Mul)] == 3ull * (p.buffer_len - p.taps + 1) * p.taps);
}
