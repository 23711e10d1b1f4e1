#include "powervp/iss.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>

#include "powervp/errors.hpp"

namespace powervp {

const char* to_string(InstrClass c) {
    switch (c) {
        case InstrClass::Alu: return "Alu";
        case InstrClass::Mul: return "Mul";
        case InstrClass::Div: return "Div";
        case InstrClass::Load: return "Load";
        case InstrClass::Store: return "Store";
        case InstrClass::BranchTaken: return "BranchTaken";
        case InstrClass::BranchNotTaken: return "BranchNotTaken";
        case InstrClass::Jump: return "Jump";
        case InstrClass::System: return "System";
    }
    return "Unknown";
}

const char* config_key(InstrClass c) {
    switch (c) {
        case InstrClass::Alu: return "alu";
        case InstrClass::Mul: return "mul";
        case InstrClass::Div: return "div";
        case InstrClass::Load: return "load";
        case InstrClass::Store: return "store";
        case InstrClass::BranchTaken: return "branch_taken";
        case InstrClass::BranchNotTaken: return "branch_not_taken";
        case InstrClass::Jump: return "jump";
        case InstrClass::System: return "system";
    }
    return "unknown";
}

std::vector<std::string> IssConfig::validate() const {
    std::vector<std::string> out;
    if (clock_hz == 0) out.emplace_back("clock_hz must be > 0");
    for (std::size_t k = 0; k < kInstrClassCount; ++k) {
        const auto key = std::string(config_key(static_cast<InstrClass>(k)));
        if (cycles[k] < 1) out.push_back("cycles." + key + " must be >= 1");
        if (!(energy_j[k] >= 0.0)) out.push_back("energy_j." + key + " must be >= 0");
    }
    for (double w : leakage_w) {
        if (!(w >= 0.0)) out.emplace_back("leakage powers must be >= 0");
    }
    if (memory_size == 0 || memory_size % 4 != 0) out.emplace_back("memory_size must be a positive multiple of 4");
    if (mmio_size == 0) out.emplace_back("mmio_size must be > 0");
    if (memory_base % 4 != 0 || mmio_base % 4 != 0) out.emplace_back("region bases must be 4-byte aligned");
    const std::uint64_t mem_end = std::uint64_t{memory_base} + memory_size;
    const std::uint64_t io_end = std::uint64_t{mmio_base} + mmio_size;
    if (mem_end > 0x1'0000'0000ULL || io_end > 0x1'0000'0000ULL) out.emplace_back("regions must fit in 32 bits");
    if (memory_base < io_end && mmio_base < mem_end) out.emplace_back("memory and mmio regions overlap");
    return out;
}

namespace {

constexpr std::uint32_t bits(std::uint32_t w, int hi, int lo) { return (w >> lo) & ((1u << (hi - lo + 1)) - 1); }

constexpr std::int32_t sext(std::uint32_t v, int width) {
    const std::uint32_t m = 1u << (width - 1);
    return static_cast<std::int32_t>((v ^ m) - m);
}

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

}  // namespace

Iss::Iss(IssConfig config, std::span<const std::uint32_t> program) : config_(std::move(config)) {
    if (auto problems = config_.validate(); !problems.empty()) {
        for (auto& p : problems) p = "core.iss: " + p;
        throw ValidationError(std::move(problems));
    }
    if (program.size() * 4 > config_.memory_size) {
        throw ValidationError({"core.iss: program (" + std::to_string(program.size() * 4) +
                               " bytes) does not fit in memory"});
    }
    memory_.assign(config_.memory_size, 0);
    for (std::size_t k = 0; k < program.size(); ++k) {
        for (int b = 0; b < 4; ++b) memory_[k * 4 + b] = static_cast<std::uint8_t>(program[k] >> (8 * b));
    }
    pc_ = config_.memory_base;
}

void Iss::fault(FaultKind kind, const std::string& detail) const { throw CoreFault(kind, pc_, detail); }

bool Iss::in_memory(std::uint32_t addr, std::uint32_t width) const {
    return addr >= config_.memory_base &&
           std::uint64_t{addr} + width <= std::uint64_t{config_.memory_base} + config_.memory_size;
}

bool Iss::in_mmio(std::uint32_t addr, std::uint32_t width) const {
    return addr >= config_.mmio_base &&
           std::uint64_t{addr} + width <= std::uint64_t{config_.mmio_base} + config_.mmio_size;
}

std::uint32_t Iss::read_word(std::uint32_t address) const {
    if (address % 4 != 0 || !in_memory(address, 4)) throw Error("read_word outside memory: " + hex(address));
    const std::size_t o = address - config_.memory_base;
    return std::uint32_t{memory_[o]} | std::uint32_t{memory_[o + 1]} << 8 | std::uint32_t{memory_[o + 2]} << 16 |
           std::uint32_t{memory_[o + 3]} << 24;
}

void Iss::write_word(std::uint32_t address, std::uint32_t value) {
    if (address % 4 != 0 || !in_memory(address, 4)) throw Error("write_word outside memory: " + hex(address));
    const std::size_t o = address - config_.memory_base;
    for (int b = 0; b < 4; ++b) memory_[o + b] = static_cast<std::uint8_t>(value >> (8 * b));
}

SimTime Iss::time_from_cycles() const {
    const unsigned __int128 c = cycles_ - base_cycles_;
    const unsigned __int128 ns = (c * 1'000'000'000u + config_.clock_hz - 1) / config_.clock_hz;
    return base_time_ + SimTime{static_cast<std::uint64_t>(ns)};
}

void Iss::rebase_clock() {
    base_time_ = now_;
    base_cycles_ = cycles_;
}

void Iss::account_leakage(SimTime upto) {
    if (upto > leak_time_) {
        leak_accum_ += config_.leakage_w[static_cast<std::size_t>(state_)] * (upto - leak_time_).seconds();
        leak_time_ = upto;
    }
}

void Iss::retire(InstrClass c) {
    const auto k = static_cast<std::size_t>(c);
    cycles_ += config_.cycles[k];
    energy_accum_ += config_.energy_j[k];
    ++class_counts_[k];
    ++instret_;
}

void Iss::jump_to(std::uint32_t target) {
    if (target % 4 != 0) fault(FaultKind::MisalignedAccess, "jump target " + hex(target) + " not 4-byte aligned");
    next_pc_ = target;
}

std::uint32_t Iss::load(std::uint32_t addr, std::uint8_t width, bool sign_extend, std::uint32_t rd) {
    if (addr % width != 0) fault(FaultKind::MisalignedAccess, "load from " + hex(addr));
    if (in_memory(addr, width)) {
        const std::size_t o = addr - config_.memory_base;
        std::uint32_t v = 0;
        for (int b = 0; b < width; ++b) v |= std::uint32_t{memory_[o + b]} << (8 * b);
        if (sign_extend && width < 4) v = static_cast<std::uint32_t>(sext(v, width * 8));
        return v;
    }
    if (in_mmio(addr, width)) {
        if (!bus_port_) fault(FaultKind::BusError, "no bus attached for load from " + hex(addr));
        outstanding_ = Outstanding{true, rd, width, sign_extend};
        handle_bus_response(bus_port_(BusRequest{addr, false, 0, width, kOriginId}));
        return regs_[rd];
    }
    fault(FaultKind::AccessFault, "load from unmapped " + hex(addr));
}

void Iss::store(std::uint32_t addr, std::uint8_t width, std::uint32_t value) {
    if (addr % width != 0) fault(FaultKind::MisalignedAccess, "store to " + hex(addr));
    if (in_memory(addr, width)) {
        const std::size_t o = addr - config_.memory_base;
        for (int b = 0; b < width; ++b) memory_[o + b] = static_cast<std::uint8_t>(value >> (8 * b));
        return;
    }
    if (in_mmio(addr, width)) {
        if (!bus_port_) fault(FaultKind::BusError, "no bus attached for store to " + hex(addr));
        const std::uint32_t mask = width == 4 ? 0xffffffffu : (1u << (8 * width)) - 1;
        outstanding_ = Outstanding{false, 0, width, false};
        handle_bus_response(bus_port_(BusRequest{addr, true, value & mask, width, kOriginId}));
        return;
    }
    fault(FaultKind::AccessFault, "store to unmapped " + hex(addr));
}

void Iss::handle_bus_response(const BusResponse& resp) {
    if (!outstanding_) throw Error("bus response with no outstanding request");
    const Outstanding pending = *outstanding_;
    outstanding_.reset();
    if (resp.error) fault(FaultKind::BusError, "bus returned an error response");
    cycles_ += resp.latency;
    if (pending.load) {
        std::uint32_t v = resp.data;
        if (pending.width < 4) {
            v &= (1u << (8 * pending.width)) - 1;
            if (pending.sign_extend) v = static_cast<std::uint32_t>(sext(v, pending.width * 8));
        }
        set_reg(pending.rd, v);
    }
}

void Iss::execute_instruction(std::uint32_t w) {
    const std::uint32_t opcode = bits(w, 6, 0);
    const std::uint32_t rd = bits(w, 11, 7);
    const std::uint32_t funct3 = bits(w, 14, 12);
    const std::uint32_t rs1 = bits(w, 19, 15);
    const std::uint32_t rs2 = bits(w, 24, 20);
    const std::uint32_t funct7 = bits(w, 31, 25);
    const std::uint32_t a = regs_[rs1];
    const std::uint32_t b = regs_[rs2];
    const std::int32_t imm_i = sext(bits(w, 31, 20), 12);
    const std::int32_t imm_s = sext(bits(w, 31, 25) << 5 | bits(w, 11, 7), 12);
    const std::int32_t imm_b =
        sext(bits(w, 31, 31) << 12 | bits(w, 7, 7) << 11 | bits(w, 30, 25) << 5 | bits(w, 11, 8) << 1, 13);
    const std::int32_t imm_j =
        sext(bits(w, 31, 31) << 20 | bits(w, 19, 12) << 12 | bits(w, 20, 20) << 11 | bits(w, 30, 21) << 1, 21);
    auto illegal = [&]() { fault(FaultKind::IllegalInstruction, "word " + hex(w)); };

    next_pc_ = pc_ + 4;
    InstrClass cls = InstrClass::Alu;

    switch (opcode) {
        case 0x37:  // LUI
            set_reg(rd, w & 0xfffff000u);
            break;
        case 0x17:  // AUIPC
            set_reg(rd, pc_ + (w & 0xfffff000u));
            break;
        case 0x6f:  // JAL
            jump_to(pc_ + static_cast<std::uint32_t>(imm_j));
            set_reg(rd, pc_ + 4);
            cls = InstrClass::Jump;
            break;
        case 0x67:  // JALR
            if (funct3 != 0) illegal();
            jump_to((a + static_cast<std::uint32_t>(imm_i)) & ~1u);
            set_reg(rd, pc_ + 4);
            cls = InstrClass::Jump;
            break;
        case 0x63: {  // branches
            bool taken = false;
            switch (funct3) {
                case 0: taken = a == b; break;
                case 1: taken = a != b; break;
                case 4: taken = static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b); break;
                case 5: taken = static_cast<std::int32_t>(a) >= static_cast<std::int32_t>(b); break;
                case 6: taken = a < b; break;
                case 7: taken = a >= b; break;
                default: illegal();
            }
            if (taken) jump_to(pc_ + static_cast<std::uint32_t>(imm_b));
            cls = taken ? InstrClass::BranchTaken : InstrClass::BranchNotTaken;
            break;
        }
        case 0x03: {  // loads
            const std::uint32_t addr = a + static_cast<std::uint32_t>(imm_i);
            std::uint32_t v = 0;
            switch (funct3) {
                case 0: v = load(addr, 1, true, rd); break;
                case 1: v = load(addr, 2, true, rd); break;
                case 2: v = load(addr, 4, false, rd); break;
                case 4: v = load(addr, 1, false, rd); break;
                case 5: v = load(addr, 2, false, rd); break;
                default: illegal();
            }
            set_reg(rd, v);
            cls = InstrClass::Load;
            break;
        }
        case 0x23: {  // stores
            const std::uint32_t addr = a + static_cast<std::uint32_t>(imm_s);
            switch (funct3) {
                case 0: store(addr, 1, b); break;
                case 1: store(addr, 2, b); break;
                case 2: store(addr, 4, b); break;
                default: illegal();
            }
            cls = InstrClass::Store;
            break;
        }
        case 0x13: {  // OP-IMM
            const auto ui = static_cast<std::uint32_t>(imm_i);
            const std::uint32_t shamt = rs2;
            switch (funct3) {
                case 0: set_reg(rd, a + ui); break;
                case 2: set_reg(rd, static_cast<std::int32_t>(a) < imm_i ? 1 : 0); break;
                case 3: set_reg(rd, a < ui ? 1 : 0); break;
                case 4: set_reg(rd, a ^ ui); break;
                case 6: set_reg(rd, a | ui); break;
                case 7: set_reg(rd, a & ui); break;
                case 1:
                    if (funct7 != 0) illegal();
                    set_reg(rd, a << shamt);
                    break;
                case 5:
                    if (funct7 == 0x00) {
                        set_reg(rd, a >> shamt);
                    } else if (funct7 == 0x20) {
                        set_reg(rd, static_cast<std::uint32_t>(static_cast<std::int32_t>(a) >> shamt));
                    } else {
                        illegal();
                    }
                    break;
            }
            break;
        }
        case 0x33: {  // OP
            if (funct7 == 0x01) {
                const auto sa = static_cast<std::int64_t>(static_cast<std::int32_t>(a));
                const auto sb = static_cast<std::int64_t>(static_cast<std::int32_t>(b));
                const auto ua = static_cast<std::uint64_t>(a);
                const auto ub = static_cast<std::uint64_t>(b);
                const auto ia = static_cast<std::int32_t>(a);
                const auto ib = static_cast<std::int32_t>(b);
                cls = funct3 < 4 ? InstrClass::Mul : InstrClass::Div;
                switch (funct3) {
                    case 0: set_reg(rd, a * b); break;
                    case 1: set_reg(rd, static_cast<std::uint32_t>(static_cast<std::uint64_t>(sa * sb) >> 32)); break;
                    case 2:
                        set_reg(rd, static_cast<std::uint32_t>(
                                        static_cast<std::uint64_t>(sa * static_cast<std::int64_t>(ub)) >> 32));
                        break;
                    case 3: set_reg(rd, static_cast<std::uint32_t>((ua * ub) >> 32)); break;
                    case 4:
                        if (b == 0) {
                            set_reg(rd, 0xffffffffu);
                        } else if (ia == std::numeric_limits<std::int32_t>::min() && ib == -1) {
                            set_reg(rd, a);
                        } else {
                            set_reg(rd, static_cast<std::uint32_t>(ia / ib));
                        }
                        break;
                    case 5: set_reg(rd, b == 0 ? 0xffffffffu : a / b); break;
                    case 6:
                        if (b == 0) {
                            set_reg(rd, a);
                        } else if (ia == std::numeric_limits<std::int32_t>::min() && ib == -1) {
                            set_reg(rd, 0);
                        } else {
                            set_reg(rd, static_cast<std::uint32_t>(ia % ib));
                        }
                        break;
                    case 7: set_reg(rd, b == 0 ? a : a % b); break;
                }
                break;
            }
            if (funct7 != 0x00 && !(funct7 == 0x20 && (funct3 == 0 || funct3 == 5))) illegal();
            switch (funct3) {
                case 0: set_reg(rd, funct7 ? a - b : a + b); break;
                case 1: set_reg(rd, a << (b & 31)); break;
                case 2: set_reg(rd, static_cast<std::int32_t>(a) < static_cast<std::int32_t>(b) ? 1 : 0); break;
                case 3: set_reg(rd, a < b ? 1 : 0); break;
                case 4: set_reg(rd, a ^ b); break;
                case 5:
                    set_reg(rd, funct7 ? static_cast<std::uint32_t>(static_cast<std::int32_t>(a) >> (b & 31))
                                       : a >> (b & 31));
                    break;
                case 6: set_reg(rd, a | b); break;
                case 7: set_reg(rd, a & b); break;
            }
            break;
        }
        case 0x73:
            if (w != 0x00100073u) illegal();
            halted_ = true;
            cls = InstrClass::System;
            break;
        default:
            illegal();
    }

    // EBREAK stops the core without retiring: it costs no cycles or energy.
    if (halted_) return;
    retire(cls);
    pc_ = next_pc_;
}

std::optional<SimTime> Iss::step_until(SimTime t) {
    while (!halted_ && !waiting_ && now_ < t) {
        if (pc_ % 4 != 0) fault(FaultKind::MisalignedAccess, "pc not 4-byte aligned");
        if (!in_memory(pc_, 4)) fault(FaultKind::AccessFault, "instruction fetch outside memory");
        const std::size_t o = pc_ - config_.memory_base;
        const std::uint32_t word = std::uint32_t{memory_[o]} | std::uint32_t{memory_[o + 1]} << 8 |
                                   std::uint32_t{memory_[o + 2]} << 16 | std::uint32_t{memory_[o + 3]} << 24;
        execute_instruction(word);
        now_ = time_from_cycles();
    }
    if (halted_) return std::nullopt;
    if (waiting_) {
        if (now_ < t) {
            now_ = t;
            rebase_clock();
        }
        return SimTime::infinity();
    }
    return now_;
}

void Iss::notify_data_ready(SimTime at) {
    if (!waiting_) {
        pending_event_ = true;
        return;
    }
    if (now_ < at) {
        now_ = at;
        rebase_clock();
    }
    account_leakage(now_);
    waiting_ = false;
    state_ = requested_state_;
}

void Iss::wait_for_event() {
    if (pending_event_) {
        pending_event_ = false;
        return;
    }
    account_leakage(now_);
    waiting_ = true;
    state_ = PowerState::SleepWait;
}

void Iss::set_power_state(PowerState s) {
    requested_state_ = s;
    if (!waiting_) {
        account_leakage(now_);
        state_ = s;
    }
}

PowerSample Iss::get_instant_power(SimTime window_end) {
    account_leakage(max(now_, window_end));
    PowerSample sample;
    const double dt = (window_end - window_start_).seconds();
    if (window_end > window_start_) {
        sample.dynamic_w = energy_accum_ / dt;
        sample.leakage_w = leak_accum_ / dt;
        energy_accum_ = 0.0;
        leak_accum_ = 0.0;
        window_start_ = window_end;
    }
    sample.state_tag = to_string(state_);
    return sample;
}

BusHandler make_power_controller(Iss& core) {
    return [&core](const BusRequest& req) -> BusResponse {
        if (req.width != 4) return BusResponse{0, true, 0};
        switch (req.address) {
            case kPwrCtlState:
                if (!req.write) return BusResponse{static_cast<std::uint32_t>(core.power_state()), false, 0};
                if (req.data > 2) return BusResponse{0, true, 0};
                core.set_power_state(static_cast<PowerState>(req.data));
                return BusResponse{};
            case kPwrCtlWfe:
                if (!req.write) return BusResponse{0, true, 0};
                core.wait_for_event();
                return BusResponse{};
            default:
                return BusResponse{0, true, 0};
        }
    };
}

std::vector<std::uint32_t> load_program_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open program image '" + path + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 4 != 0) throw Error("program image '" + path + "' length is not a multiple of 4");
    std::vector<std::uint32_t> words(bytes.size() / 4);
    for (std::size_t k = 0; k < words.size(); ++k) {
        words[k] = std::uint32_t{bytes[4 * k]} | std::uint32_t{bytes[4 * k + 1]} << 8 |
                   std::uint32_t{bytes[4 * k + 2]} << 16 | std::uint32_t{bytes[4 * k + 3]} << 24;
    }
    return words;
}

void write_program_image(const std::string& path, std::span<const std::uint32_t> words) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write program image '" + path + "'");
    for (std::uint32_t w : words) {
        const char b[4] = {static_cast<char>(w), static_cast<char>(w >> 8), static_cast<char>(w >> 16),
                           static_cast<char>(w >> 24)};
        out.write(b, 4);
    }
    if (!out) throw Error("failed writing program image '" + path + "'");
}

double Iss::total_dynamic_energy() const {
    double e = 0.0;
    for (std::size_t k = 0; k < kInstrClassCount; ++k) e += static_cast<double>(class_counts_[k]) * config_.energy_j[k];
    return e;
}

}  // namespace powervp
