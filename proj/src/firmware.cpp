#include "powervp/firmware.hpp"

#include <algorithm>
#include <stdexcept>

#include "powervp/iss.hpp"
#include "powervp/rv32.hpp"

namespace powervp {

std::vector<std::int32_t> fir_coefficients(std::uint32_t taps) {
    std::vector<std::int32_t> c(taps);
    std::int64_t weight_sum = 0;
    for (std::uint32_t k = 0; k < taps; ++k) {
        const std::uint32_t w = std::min(k + 1, taps - k);
        c[k] = static_cast<std::int32_t>(w);
        weight_sum += w;
    }
    for (auto& v : c) v = static_cast<std::int32_t>((std::int64_t{v} * 32768) / weight_sum);
    return c;
}

std::vector<std::uint32_t> fir_firmware(const FirFirmwareParams& p) {
    using namespace rv32;
    if (p.taps < 1 || p.taps > p.buffer_len) throw std::invalid_argument("fir firmware: need 1 <= taps <= buffer_len");

    Assembler a;
    a.li(s0, p.mic_base);
    a.li(s1, p.pwrctl_base);
    a.li(s2, p.coef_addr);
    a.li(s3, p.buf_addr);
    a.li(s4, p.out_addr);
    a.li(s5, p.taps);
    a.li(s6, p.buffer_len);
    a.li(s7, p.frames);
    a.emit(addi(s8, zero, 0));
    a.emit(addi(s9, zero, static_cast<std::int32_t>(PowerState::Active)));
    a.emit(addi(s10, zero, static_cast<std::int32_t>(PowerState::ClusterActive)));

    a.label("frame");
    a.emit(sw(zero, s1, kPwrCtlWfe));
    a.emit(addi(t0, s3, 0));
    a.emit(addi(t1, zero, 0));
    a.label("read");
    a.emit(lw(t2, s0, 0));  // mic DATA
    a.emit(sw(t2, t0, 0));
    a.emit(addi(t0, t0, 4));
    a.emit(addi(t1, t1, 1));
    a.bne(t1, s6, "read");

    a.emit(sw(s10, s1, kPwrCtlState));
    a.emit(addi(t1, s5, -1));
    a.label("outer");
    a.emit(addi(t2, zero, 0));
    a.emit(slli(t3, t1, 2));
    a.emit(add(t3, t3, s3));
    a.emit(addi(t4, s2, 0));
    a.emit(addi(t5, zero, 0));
    a.label("inner");
    a.emit(lw(a0, t4, 0));
    a.emit(lw(a1, t3, 0));
    a.emit(mul(a2, a0, a1));
    a.emit(add(t2, t2, a2));
    a.emit(addi(t4, t4, 4));
    a.emit(addi(t3, t3, -4));
    a.emit(addi(t5, t5, 1));
    a.bne(t5, s5, "inner");
    a.emit(srai(t2, t2, 15));
    a.emit(slli(a3, t1, 2));
    a.emit(add(a3, a3, s4));
    a.emit(sw(t2, a3, 0));
    a.emit(addi(t1, t1, 1));
    a.bne(t1, s6, "outer");

    a.emit(sw(s9, s1, kPwrCtlState));
    a.emit(addi(s8, s8, 1));
    a.beq(s7, zero, "frame");
    a.bne(s8, s7, "frame");
    a.emit(ebreak());

    auto image = a.finish();
    if (image.size() * 4 > p.coef_addr) throw std::invalid_argument("fir firmware: code overlaps coefficients");
    image.resize(p.coef_addr / 4, 0);
    for (auto c : fir_coefficients(p.taps)) image.push_back(static_cast<std::uint32_t>(c));
    return image;
}

}  // namespace powervp
