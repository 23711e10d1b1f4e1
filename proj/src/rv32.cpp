#include "powervp/rv32.hpp"

#include <stdexcept>

namespace powervp::rv32 {

namespace {

constexpr std::uint32_t kOpLui = 0x37;
constexpr std::uint32_t kOpAuipc = 0x17;
constexpr std::uint32_t kOpJal = 0x6f;
constexpr std::uint32_t kOpJalr = 0x67;
constexpr std::uint32_t kOpBranch = 0x63;
constexpr std::uint32_t kOpLoad = 0x03;
constexpr std::uint32_t kOpStore = 0x23;
constexpr std::uint32_t kOpImm = 0x13;
constexpr std::uint32_t kOpReg = 0x33;

std::uint32_t r_type(std::uint32_t funct7, Reg rs2, Reg rs1, std::uint32_t funct3, Reg rd, std::uint32_t op) {
    return (funct7 << 25) | (rs2 << 20) | (rs1 << 15) | (funct3 << 12) | (rd << 7) | op;
}

std::uint32_t i_type(std::int32_t imm, Reg rs1, std::uint32_t funct3, Reg rd, std::uint32_t op) {
    if (imm < -2048 || imm > 2047) throw std::out_of_range("I-type immediate out of range");
    return (static_cast<std::uint32_t>(imm) << 20) | (rs1 << 15) | (funct3 << 12) | (rd << 7) | op;
}

std::uint32_t s_type(std::int32_t imm, Reg rs2, Reg rs1, std::uint32_t funct3) {
    if (imm < -2048 || imm > 2047) throw std::out_of_range("S-type immediate out of range");
    const auto u = static_cast<std::uint32_t>(imm);
    return ((u >> 5 & 0x7f) << 25) | (rs2 << 20) | (rs1 << 15) | (funct3 << 12) | ((u & 0x1f) << 7) | kOpStore;
}

std::uint32_t b_type(std::int32_t offset, Reg rs2, Reg rs1, std::uint32_t funct3) {
    if (offset % 2 != 0 || offset < -4096 || offset > 4094) throw std::out_of_range("branch offset out of range");
    const auto u = static_cast<std::uint32_t>(offset);
    return ((u >> 12 & 1) << 31) | ((u >> 5 & 0x3f) << 25) | (rs2 << 20) | (rs1 << 15) | (funct3 << 12) |
           ((u >> 1 & 0xf) << 8) | ((u >> 11 & 1) << 7) | kOpBranch;
}

std::uint32_t j_type(std::int32_t offset, Reg rd) {
    if (offset % 2 != 0 || offset < -(1 << 20) || offset > (1 << 20) - 2) {
        throw std::out_of_range("jump offset out of range");
    }
    const auto u = static_cast<std::uint32_t>(offset);
    return ((u >> 20 & 1) << 31) | ((u >> 1 & 0x3ff) << 21) | ((u >> 11 & 1) << 20) | ((u >> 12 & 0xff) << 12) |
           (rd << 7) | kOpJal;
}

std::uint32_t shift_imm(std::uint32_t funct7, std::uint32_t shamt, Reg rs1, std::uint32_t funct3, Reg rd) {
    if (shamt > 31) throw std::out_of_range("shift amount out of range");
    return (funct7 << 25) | (shamt << 20) | (rs1 << 15) | (funct3 << 12) | (rd << 7) | kOpImm;
}

}  // namespace

std::uint32_t lui(Reg rd, std::uint32_t imm20) { return (imm20 << 12) | (rd << 7) | kOpLui; }
std::uint32_t auipc(Reg rd, std::uint32_t imm20) { return (imm20 << 12) | (rd << 7) | kOpAuipc; }
std::uint32_t jal(Reg rd, std::int32_t offset) { return j_type(offset, rd); }
std::uint32_t jalr(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 0, rd, kOpJalr); }

std::uint32_t beq(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 0); }
std::uint32_t bne(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 1); }
std::uint32_t blt(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 4); }
std::uint32_t bge(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 5); }
std::uint32_t bltu(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 6); }
std::uint32_t bgeu(Reg rs1, Reg rs2, std::int32_t o) { return b_type(o, rs2, rs1, 7); }

std::uint32_t lb(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 0, rd, kOpLoad); }
std::uint32_t lh(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 1, rd, kOpLoad); }
std::uint32_t lw(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 2, rd, kOpLoad); }
std::uint32_t lbu(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 4, rd, kOpLoad); }
std::uint32_t lhu(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 5, rd, kOpLoad); }
std::uint32_t sb(Reg rs2, Reg rs1, std::int32_t imm) { return s_type(imm, rs2, rs1, 0); }
std::uint32_t sh(Reg rs2, Reg rs1, std::int32_t imm) { return s_type(imm, rs2, rs1, 1); }
std::uint32_t sw(Reg rs2, Reg rs1, std::int32_t imm) { return s_type(imm, rs2, rs1, 2); }

std::uint32_t addi(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 0, rd, kOpImm); }
std::uint32_t slti(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 2, rd, kOpImm); }
std::uint32_t sltiu(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 3, rd, kOpImm); }
std::uint32_t xori(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 4, rd, kOpImm); }
std::uint32_t ori(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 6, rd, kOpImm); }
std::uint32_t andi(Reg rd, Reg rs1, std::int32_t imm) { return i_type(imm, rs1, 7, rd, kOpImm); }
std::uint32_t slli(Reg rd, Reg rs1, std::uint32_t sh) { return shift_imm(0x00, sh, rs1, 1, rd); }
std::uint32_t srli(Reg rd, Reg rs1, std::uint32_t sh) { return shift_imm(0x00, sh, rs1, 5, rd); }
std::uint32_t srai(Reg rd, Reg rs1, std::uint32_t sh) { return shift_imm(0x20, sh, rs1, 5, rd); }

std::uint32_t add(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 0, rd, kOpReg); }
std::uint32_t sub(Reg rd, Reg rs1, Reg rs2) { return r_type(0x20, rs2, rs1, 0, rd, kOpReg); }
std::uint32_t sll(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 1, rd, kOpReg); }
std::uint32_t slt(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 2, rd, kOpReg); }
std::uint32_t sltu(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 3, rd, kOpReg); }
std::uint32_t xor_(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 4, rd, kOpReg); }
std::uint32_t srl(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 5, rd, kOpReg); }
std::uint32_t sra(Reg rd, Reg rs1, Reg rs2) { return r_type(0x20, rs2, rs1, 5, rd, kOpReg); }
std::uint32_t or_(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 6, rd, kOpReg); }
std::uint32_t and_(Reg rd, Reg rs1, Reg rs2) { return r_type(0x00, rs2, rs1, 7, rd, kOpReg); }

std::uint32_t mul(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 0, rd, kOpReg); }
std::uint32_t mulh(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 1, rd, kOpReg); }
std::uint32_t mulhsu(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 2, rd, kOpReg); }
std::uint32_t mulhu(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 3, rd, kOpReg); }
std::uint32_t div(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 4, rd, kOpReg); }
std::uint32_t divu(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 5, rd, kOpReg); }
std::uint32_t rem(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 6, rd, kOpReg); }
std::uint32_t remu(Reg rd, Reg rs1, Reg rs2) { return r_type(0x01, rs2, rs1, 7, rd, kOpReg); }

std::uint32_t ebreak() { return 0x00100073; }
std::uint32_t ecall() { return 0x00000073; }

void Assembler::li(Reg rd, std::uint32_t value) {
    // addi sign-extends its immediate, so round the upper part.
    const std::uint32_t upper = (value + 0x800) >> 12;
    const auto lower = static_cast<std::int32_t>(value - (upper << 12));
    emit(lui(rd, upper & 0xfffff));
    emit(addi(rd, rd, lower));
}

void Assembler::label(const std::string& name) {
    if (!labels_.emplace(name, here()).second) throw std::logic_error("duplicate label " + name);
}

void Assembler::branch(std::uint32_t funct3, Reg rs1, Reg rs2, const std::string& target) {
    fixups_.push_back({words_.size(), target, false, funct3, rs1, rs2});
    emit(0);
}

void Assembler::jal(Reg rd, const std::string& target) {
    fixups_.push_back({words_.size(), target, true, 0, rd, zero});
    emit(0);
}

std::vector<std::uint32_t> Assembler::finish() const {
    auto out = words_;
    for (const auto& f : fixups_) {
        auto it = labels_.find(f.target);
        if (it == labels_.end()) throw std::logic_error("undefined label " + f.target);
        const auto offset = static_cast<std::int32_t>(it->second) - static_cast<std::int32_t>(f.index * 4);
        out[f.index] = f.is_jal ? j_type(offset, f.a) : b_type(offset, f.b, f.a, f.funct3);
    }
    return out;
}

}  // namespace powervp::rv32
