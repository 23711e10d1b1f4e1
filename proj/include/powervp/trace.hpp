#pragma once

#include <cstdint>
#include <fstream>
#include <string>

namespace powervp {

/// One observation row; see kTraceHeader for the column order.
struct TraceRecord {
    std::uint64_t t_ns = 0;
    std::string core_state;
    double load_core_w = 0.0;
    double load_mic_w = 0.0;
    double bus_w = 0.0;
    double eta_batt_dcdc = 1.0;
    double eta_core_dcdc = 1.0;
    double batt_i_a = 0.0;
    double batt_v = 0.0;
    double soc = 0.0;
};

inline constexpr const char* kTraceHeader =
    "t_ns,core_state,load_core_w,load_mic_w,bus_w,eta_batt_dcdc,eta_core_dcdc,batt_i_a,batt_v,soc";

/// Shortest "%.9g"-equivalent rendering, locale independent.
std::string format_number(double v);

std::string format_trace_row(const TraceRecord& r);

/// CSV sink. The header is written on open, so an empty run yields a header-only file.
class TraceWriter {
public:
    explicit TraceWriter(const std::string& path);

    void write(const TraceRecord& r);
    /// Flushes and closes; throws Error with the path on I/O failure.
    void close();
    std::uint64_t rows() const { return rows_; }

private:
    std::string path_;
    std::ofstream out_;
    std::uint64_t rows_ = 0;
};

}  // namespace powervp
