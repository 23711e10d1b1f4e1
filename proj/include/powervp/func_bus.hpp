#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace powervp {

struct BusRequest {
    std::uint32_t address = 0;
    bool write = false;
    std::uint32_t data = 0;   ///< write payload
    std::uint8_t width = 4;   ///< 1, 2 or 4 bytes
    std::uint32_t origin = 0;
};

struct BusResponse {
    std::uint32_t data = 0;
    bool error = false;
    /// Latency in initiator clock cycles; the bus adds its own transfer latency on top of the target's.
    std::uint32_t latency = 0;
};

/// Target-side handler. Receives the offset relative to the region base in req.address.
using BusHandler = std::function<BusResponse(const BusRequest&)>;

struct Region {
    std::string id;
    std::uint32_t base = 0;
    std::uint32_t size = 0;
};

/// Address-decoded router between the single initiator (the core) and peripheral models.
class FuncBus {
public:
    explicit FuncBus(std::uint32_t latency_cycles = 10) : latency_cycles_(latency_cycles) {}

    /// Throws OverlapError if [base, base+size) intersects an existing region, and
    /// Error for zero size, misalignment or address-space wraparound.
    void register_peripheral(const std::string& id, std::uint32_t base, std::uint32_t size, BusHandler handler);

    /// Decodes and dispatches. Unmapped or region-straddling requests return error=true.
    BusResponse route(const BusRequest& req) const;

    /// Index into regions() of the region containing [address, address+width), or -1.
    int decode(std::uint32_t address, std::uint32_t width = 1) const;

    std::vector<Region> regions() const;
    std::uint32_t latency_cycles() const { return latency_cycles_; }

private:
    struct Entry {
        Region region;
        BusHandler handler;
    };
    std::vector<Entry> entries_;  ///< sorted by base
    std::uint32_t latency_cycles_;
};

}  // namespace powervp
