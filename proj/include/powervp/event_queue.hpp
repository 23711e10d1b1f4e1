#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "powervp/sim_time.hpp"

namespace powervp {

enum class ComponentId : std::uint32_t { Kernel = 0, Core = 1, Mic = 2, PowerNet = 3 };

struct Event {
    SimTime due;
    std::uint64_t seq = 0;
    ComponentId target = ComponentId::Kernel;
    std::uint64_t payload = 0;
};

/// Binary min-heap keyed on (due, seq). Equal due times pop in insertion order.
class EventQueue {
public:
    /// Assigns the next sequence number and inserts. Throws SchedulingInPast
    /// when due precedes the queue's current time.
    std::uint64_t schedule(SimTime due, ComponentId target, std::uint64_t payload = 0);

    /// Inserts an event with caller-provided seq; seq must be larger than any seen so far.
    void schedule(const Event& event);

    std::optional<Event> pop_next();
    const Event* peek() const { return heap_.empty() ? nullptr : &heap_.front(); }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    SimTime now() const { return now_; }
    /// Moves the queue clock forward without popping (global time advanced elsewhere).
    void advance_to(SimTime t);

private:
    std::vector<Event> heap_;
    std::uint64_t next_seq_ = 0;
    SimTime now_{};
};

}  // namespace powervp
