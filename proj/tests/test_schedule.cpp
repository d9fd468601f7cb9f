#include "twostage/schedule.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace twostage;

TEST_CASE("brickwall layers") {
    Schedule s = build_schedule(Geometry::Brickwall, Boundary::Open, 6);
    CHECK(s.time_step(0) == std::vector<GatePos>{{1, 2}, {3, 4}, {5, 6}});
    CHECK(s.time_step(1) == std::vector<GatePos>{{2, 3}, {4, 5}});
    CHECK(s.time_step(2) == s.time_step(0));

    Schedule p = build_schedule(Geometry::Brickwall, Boundary::Periodic, 4);
    CHECK(p.time_step(1) == std::vector<GatePos>{{2, 3}, {4, 1}});
}

TEST_CASE("staircase sweeps split into two time units each") {
    Schedule s = build_schedule(Geometry::Staircase, Boundary::Open, 4);
    CHECK(s.sweep() == std::vector<GatePos>{{1, 2}, {2, 3}, {3, 4}});
    CHECK(s.time_step(0) == std::vector<GatePos>{{1, 2}});
    CHECK(s.time_step(1) == std::vector<GatePos>{{2, 3}, {3, 4}});
    CHECK(s.time_step(2) == s.time_step(0));
    CHECK(s.time_step(3) == s.time_step(1));

    Schedule p = build_schedule(Geometry::Staircase, Boundary::Periodic, 4);
    CHECK(p.sweep() == std::vector<GatePos>{{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(p.time_step(0) == std::vector<GatePos>{{1, 2}, {2, 3}});
    CHECK(p.time_step(1) == std::vector<GatePos>{{3, 4}, {4, 1}});
    CHECK(p.flagged_unconventional);
    CHECK_FALSE(s.flagged_unconventional);
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(build_schedule(Geometry::Brickwall, Boundary::Open, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_schedule(Geometry::Brickwall, Boundary::Open, 2),
                    std::invalid_argument);
}
