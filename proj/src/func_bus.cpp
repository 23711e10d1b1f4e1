#include "powervp/func_bus.hpp"

#include <algorithm>
#include <cstdio>

#include "powervp/errors.hpp"

namespace powervp {

namespace {

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

}  // namespace

void FuncBus::register_peripheral(const std::string& id, std::uint32_t base, std::uint32_t size,
                                  BusHandler handler) {
    if (size == 0) throw Error("region '" + id + "' has zero size");
    if (base % 4 != 0 || size % 4 != 0) throw Error("region '" + id + "' must be 4-byte aligned");
    const std::uint64_t end = std::uint64_t{base} + size;
    if (end > 0x1'0000'0000ULL) throw Error("region '" + id + "' wraps the address space");

    auto pos = std::lower_bound(entries_.begin(), entries_.end(), base,
                                [](const Entry& e, std::uint32_t b) { return e.region.base < b; });
    auto clash = [&](const Entry& e) {
        const std::uint64_t e_end = std::uint64_t{e.region.base} + e.region.size;
        return base < e_end && e.region.base < end;
    };
    if ((pos != entries_.end() && clash(*pos)) || (pos != entries_.begin() && clash(*(pos - 1)))) {
        const auto& other = (pos != entries_.end() && clash(*pos)) ? *pos : *(pos - 1);
        throw OverlapError("region '" + id + "' [" + hex(base) + ", +" + std::to_string(size) +
                           ") overlaps '" + other.region.id + "'");
    }
    entries_.insert(pos, Entry{Region{id, base, size}, std::move(handler)});
}

int FuncBus::decode(std::uint32_t address, std::uint32_t width) const {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), address,
                               [](std::uint32_t a, const Entry& e) { return a < e.region.base; });
    if (it == entries_.begin()) return -1;
    --it;
    const auto& r = it->region;
    if (std::uint64_t{address} + width > std::uint64_t{r.base} + r.size) return -1;
    return static_cast<int>(it - entries_.begin());
}

BusResponse FuncBus::route(const BusRequest& req) const {
    const int idx = decode(req.address, req.width);
    if (idx < 0) return BusResponse{0, true, latency_cycles_};
    const auto& e = entries_[static_cast<std::size_t>(idx)];
    BusRequest local = req;
    local.address = req.address - e.region.base;
    BusResponse resp = e.handler(local);
    resp.latency += latency_cycles_;
    return resp;
}

std::vector<Region> FuncBus::regions() const {
    std::vector<Region> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.region);
    return out;
}

}  // namespace powervp
