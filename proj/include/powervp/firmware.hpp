#pragma once

#include <cstdint>
#include <vector>

namespace powervp {

/// Mic-driven FIR loop for the ISS: sleep until a buffer is ready, copy it out of
/// the mic FIFO, filter it on the cluster, repeat.
struct FirFirmwareParams {
    std::uint32_t taps = 40;
    std::uint32_t buffer_len = 256;
    std::uint32_t frames = 0;  ///< 0 = run forever, otherwise EBREAK after this many buffers
    std::uint32_t mic_base = 0x1A10'0000;
    std::uint32_t pwrctl_base = 0x1A10'0100;
    std::uint32_t coef_addr = 0x8000;
    std::uint32_t buf_addr = 0x9000;
    std::uint32_t out_addr = 0xA000;
};

/// Q15 coefficients (triangular window, sums to about 1.0).
std::vector<std::int32_t> fir_coefficients(std::uint32_t taps);

/// Complete memory image: code at 0, coefficients at coef_addr. Register s8
/// counts finished frames; y[n] = (sum_k c[k] x[n-k]) >> 15 lands at
/// out_addr + 4n for n in [taps-1, buffer_len).
std::vector<std::uint32_t> fir_firmware(const FirFirmwareParams& params);

}  // namespace powervp
