#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace powervp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchedulingInPast : public Error {
public:
    using Error::Error;
};

enum class FaultKind { IllegalInstruction, MisalignedAccess, AccessFault, BusError };

const char* to_string(FaultKind kind);

class CoreFault : public Error {
public:
    CoreFault(FaultKind kind, std::uint32_t pc, const std::string& detail);

    FaultKind kind() const { return kind_; }
    std::uint32_t pc() const { return pc_; }

private:
    FaultKind kind_;
    std::uint32_t pc_;
};

class PowerNetError : public Error {
public:
    using Error::Error;
};

/// Demand exceeds the battery's maximum transferable power voc^2 / (4 rs).
class MaxPowerExceeded : public PowerNetError {
public:
    using PowerNetError::PowerNetError;
};

class UnknownState : public Error {
public:
    using Error::Error;
};

class OverlapError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// All schema violations found in one pass, each prefixed with its field path.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

}  // namespace powervp
