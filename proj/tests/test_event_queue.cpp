#include <algorithm>
#include <random>
#include <tuple>

#include "catch_amalgamated.hpp"
#include "powervp/errors.hpp"
#include "powervp/event_queue.hpp"

using namespace powervp;

TEST_CASE("equal due times pop in insertion order") {
    EventQueue q;
    q.schedule(SimTime{10}, ComponentId::Core);
    q.schedule(SimTime{5}, ComponentId::Mic);
    q.schedule(SimTime{10}, ComponentId::PowerNet);

    auto e = q.pop_next();
    REQUIRE(e);
    CHECK(e->due == SimTime{5});
    CHECK(e->seq == 1);
    e = q.pop_next();
    CHECK((e->due == SimTime{10} && e->seq == 0));
    e = q.pop_next();
    CHECK((e->due == SimTime{10} && e->seq == 2));
    CHECK_FALSE(q.pop_next());
}

TEST_CASE("empty queue yields nothing") {
    EventQueue q;
    CHECK(q.empty());
    CHECK(q.peek() == nullptr);
    CHECK_FALSE(q.pop_next().has_value());
}

TEST_CASE("random schedule pops in (due, seq) order") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> due(0, 200);  // narrow range forces many ties
    EventQueue q;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> oracle;
    for (int k = 0; k < 1000; ++k) {
        const auto d = due(rng);
        const auto seq = q.schedule(SimTime{d}, ComponentId::Kernel, static_cast<std::uint64_t>(k));
        oracle.emplace_back(d, seq);
    }
    std::sort(oracle.begin(), oracle.end());
    for (const auto& [d, seq] : oracle) {
        auto e = q.pop_next();
        REQUIRE(e);
        CHECK(e->due.ns == d);
        CHECK(e->seq == seq);
        CHECK(e->payload == seq);
    }
    CHECK(q.empty());
}

TEST_CASE("scheduling before the queue clock throws") {
    EventQueue q;
    q.schedule(SimTime{100}, ComponentId::Core);
    q.pop_next();
    CHECK(q.now() == SimTime{100});
    CHECK_THROWS_AS(q.schedule(SimTime{99}, ComponentId::Core), SchedulingInPast);
    CHECK_NOTHROW(q.schedule(SimTime{100}, ComponentId::Core));
}

TEST_CASE("caller-provided sequence numbers must increase") {
    EventQueue q;
    q.schedule(Event{SimTime{1}, 5, ComponentId::Mic, 0});
    CHECK_THROWS_AS(q.schedule(Event{SimTime{2}, 5, ComponentId::Mic, 0}), Error);
    CHECK(q.schedule(SimTime{3}, ComponentId::Mic) > 5);
}

TEST_CASE("advance_to moves the clock forward only") {
    EventQueue q;
    q.advance_to(SimTime{50});
    CHECK(q.now() == SimTime{50});
    CHECK_THROWS_AS(q.schedule(SimTime{10}, ComponentId::Core), SchedulingInPast);
}
