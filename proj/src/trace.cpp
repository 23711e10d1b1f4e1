#include "powervp/trace.hpp"

#include <charconv>
#include <cmath>

#include "powervp/errors.hpp"

namespace powervp {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";  // folds -0
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string format_trace_row(const TraceRecord& r) {
    std::string line = std::to_string(r.t_ns);
    line += ',';
    line += r.core_state;
    for (double v : {r.load_core_w, r.load_mic_w, r.bus_w, r.eta_batt_dcdc, r.eta_core_dcdc, r.batt_i_a, r.batt_v,
                     r.soc}) {
        line += ',';
        line += format_number(v);
    }
    return line;
}

TraceWriter::TraceWriter(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error("cannot open trace file '" + path + "'");
    out_ << kTraceHeader << '\n';
}

void TraceWriter::write(const TraceRecord& r) {
    out_ << format_trace_row(r) << '\n';
    ++rows_;
    if (!out_) throw Error("write failed on trace file '" + path_ + "'");
}

void TraceWriter::close() {
    if (!out_.is_open()) return;
    out_.flush();
    out_.close();
    if (out_.fail()) throw Error("write failed on trace file '" + path_ + "'");
}

}  // namespace powervp
