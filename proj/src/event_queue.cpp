#include "powervp/event_queue.hpp"

#include <algorithm>
#include <string>

#include "powervp/errors.hpp"

namespace powervp {

namespace {

// std::*_heap build a max-heap, so "less" here means "later".
bool later(const Event& a, const Event& b) {
    if (a.due != b.due) return a.due > b.due;
    return a.seq > b.seq;
}

}  // namespace

std::uint64_t EventQueue::schedule(SimTime due, ComponentId target, std::uint64_t payload) {
    Event e{due, next_seq_, target, payload};
    schedule(e);
    return e.seq;
}

void EventQueue::schedule(const Event& event) {
    if (event.due < now_) {
        throw SchedulingInPast("event due at " + std::to_string(event.due.ns) +
                               "ns precedes current time " + std::to_string(now_.ns) + "ns");
    }
    if (event.seq < next_seq_) {
        throw Error("event sequence numbers must strictly increase");
    }
    next_seq_ = event.seq + 1;
    heap_.push_back(event);
    std::push_heap(heap_.begin(), heap_.end(), later);
}

std::optional<Event> EventQueue::pop_next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Event e = heap_.back();
    heap_.pop_back();
    now_ = max(now_, e.due);
    return e;
}

void EventQueue::advance_to(SimTime t) { now_ = max(now_, t); }

}  // namespace powervp
