#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// RV32IM instruction encoders. Used to hand-assemble test programs and the
// shipped firmware images; the simulator itself only decodes.
namespace powervp::rv32 {

enum Reg : std::uint32_t {
    zero = 0, ra, sp, gp, tp, t0, t1, t2, s0, s1,
    a0, a1, a2, a3, a4, a5, a6, a7,
    s2, s3, s4, s5, s6, s7, s8, s9, s10, s11,
    t3, t4, t5, t6,
};

std::uint32_t lui(Reg rd, std::uint32_t imm20);
std::uint32_t auipc(Reg rd, std::uint32_t imm20);
std::uint32_t jal(Reg rd, std::int32_t offset);
std::uint32_t jalr(Reg rd, Reg rs1, std::int32_t imm);

std::uint32_t beq(Reg rs1, Reg rs2, std::int32_t offset);
std::uint32_t bne(Reg rs1, Reg rs2, std::int32_t offset);
std::uint32_t blt(Reg rs1, Reg rs2, std::int32_t offset);
std::uint32_t bge(Reg rs1, Reg rs2, std::int32_t offset);
std::uint32_t bltu(Reg rs1, Reg rs2, std::int32_t offset);
std::uint32_t bgeu(Reg rs1, Reg rs2, std::int32_t offset);

std::uint32_t lb(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t lh(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t lw(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t lbu(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t lhu(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t sb(Reg rs2, Reg rs1, std::int32_t imm);
std::uint32_t sh(Reg rs2, Reg rs1, std::int32_t imm);
std::uint32_t sw(Reg rs2, Reg rs1, std::int32_t imm);

std::uint32_t addi(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t slti(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t sltiu(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t xori(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t ori(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t andi(Reg rd, Reg rs1, std::int32_t imm);
std::uint32_t slli(Reg rd, Reg rs1, std::uint32_t shamt);
std::uint32_t srli(Reg rd, Reg rs1, std::uint32_t shamt);
std::uint32_t srai(Reg rd, Reg rs1, std::uint32_t shamt);

std::uint32_t add(Reg rd, Reg rs1, Reg rs2);
std::uint32_t sub(Reg rd, Reg rs1, Reg rs2);
std::uint32_t sll(Reg rd, Reg rs1, Reg rs2);
std::uint32_t slt(Reg rd, Reg rs1, Reg rs2);
std::uint32_t sltu(Reg rd, Reg rs1, Reg rs2);
std::uint32_t xor_(Reg rd, Reg rs1, Reg rs2);
std::uint32_t srl(Reg rd, Reg rs1, Reg rs2);
std::uint32_t sra(Reg rd, Reg rs1, Reg rs2);
std::uint32_t or_(Reg rd, Reg rs1, Reg rs2);
std::uint32_t and_(Reg rd, Reg rs1, Reg rs2);

std::uint32_t mul(Reg rd, Reg rs1, Reg rs2);
std::uint32_t mulh(Reg rd, Reg rs1, Reg rs2);
std::uint32_t mulhsu(Reg rd, Reg rs1, Reg rs2);
std::uint32_t mulhu(Reg rd, Reg rs1, Reg rs2);
std::uint32_t div(Reg rd, Reg rs1, Reg rs2);
std::uint32_t divu(Reg rd, Reg rs1, Reg rs2);
std::uint32_t rem(Reg rd, Reg rs1, Reg rs2);
std::uint32_t remu(Reg rd, Reg rs1, Reg rs2);

std::uint32_t ebreak();
std::uint32_t ecall();

/// Two-pass assembler for straight-line code with forward/backward labels.
class Assembler {
public:
    void emit(std::uint32_t word) { words_.push_back(word); }
    /// lui+addi pair (always two words so code size is layout independent).
    void li(Reg rd, std::uint32_t value);
    void label(const std::string& name);

    void beq(Reg rs1, Reg rs2, const std::string& target) { branch(0, rs1, rs2, target); }
    void bne(Reg rs1, Reg rs2, const std::string& target) { branch(1, rs1, rs2, target); }
    void blt(Reg rs1, Reg rs2, const std::string& target) { branch(4, rs1, rs2, target); }
    void bge(Reg rs1, Reg rs2, const std::string& target) { branch(5, rs1, rs2, target); }
    void bltu(Reg rs1, Reg rs2, const std::string& target) { branch(6, rs1, rs2, target); }
    void bgeu(Reg rs1, Reg rs2, const std::string& target) { branch(7, rs1, rs2, target); }
    void jal(Reg rd, const std::string& target);

    std::uint32_t here() const { return static_cast<std::uint32_t>(words_.size() * 4); }

    /// Resolves labels; throws std::logic_error on an undefined label or out-of-range offset.
    std::vector<std::uint32_t> finish() const;

private:
    struct Fixup {
        std::size_t index;
        std::string target;
        bool is_jal;
        std::uint32_t funct3;
        Reg a;
        Reg b;
    };
    void branch(std::uint32_t funct3, Reg rs1, Reg rs2, const std::string& target);

    std::vector<std::uint32_t> words_;
    std::map<std::string, std::uint32_t> labels_;
    std::vector<Fixup> fixups_;
};

}  // namespace powervp::rv32
