#include "powervp/errors.hpp"

#include <cstdio>

namespace powervp {

const char* to_string(FaultKind kind) {
    switch (kind) {
        case FaultKind::IllegalInstruction: return "IllegalInstruction";
        case FaultKind::MisalignedAccess: return "MisalignedAccess";
        case FaultKind::AccessFault: return "AccessFault";
        case FaultKind::BusError: return "BusError";
    }
    return "Unknown";
}

namespace {

std::string fault_message(FaultKind kind, std::uint32_t pc, const std::string& detail) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%08x", pc);
    return std::string("core fault ") + to_string(kind) + " at pc=" + buf + ": " + detail;
}

std::string join_violations(const std::vector<std::string>& violations) {
    std::string out = "invalid configuration (" + std::to_string(violations.size()) + " violation";
    out += violations.size() == 1 ? ")" : "s)";
    for (const auto& v : violations) out += "\n  " + v;
    return out;
}

}  // namespace

CoreFault::CoreFault(FaultKind kind, std::uint32_t pc, const std::string& detail)
    : Error(fault_message(kind, pc, detail)), kind_(kind), pc_(pc) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace powervp
