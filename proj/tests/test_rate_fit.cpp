#include "twostage/rate_fit.hpp"

#include <cmath>
#include <vector>

#include <stdexcept>

#include "doctest.h"

using namespace twostage;

TEST_CASE("synthetic exponential recovers its rate exactly") {
    std::vector<double> z;
    for (int t = 0; t <= 20; ++t) z.push_back(std::pow(0.8, t));
    RateEstimate est = fit_rate(z, {0, 20});
    CHECK(est.rate == doctest::Approx(std::log2(1.25)).epsilon(1e-12));
    CHECK(est.residual < 1e-12);
    CHECK_FALSE(est.oscillating);
    CHECK(est.points_used == 21);
}

TEST_CASE("oscillating series is fitted on the magnitude") {
    std::vector<double> z;
    for (int t = 0; t <= 15; ++t) z.push_back(std::pow(-0.5, t));
    RateEstimate est = fit_rate(z, {0, 15});
    CHECK(est.rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.oscillating);
}

TEST_CASE("zero entries are skipped, not logged") {
    std::vector<double> z = {1.0, 0.5, 0.0, 0.125, 0.0625, 0.03125};
    RateEstimate est = fit_rate(z, {0, 5});
    CHECK(est.points_used == 5);
    CHECK(est.rate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate windows are rejected") {
    std::vector<double> zeros(10, 0.0);
    CHECK_THROWS_AS(fit_rate(zeros, {0, 9}), std::invalid_argument);
    std::vector<double> constant(10, 0.25);
    CHECK_THROWS_AS(fit_rate(constant, {0, 9}), std::invalid_argument);
    std::vector<double> two = {1.0, 0.5, 0.0, 0.0};
    CHECK_THROWS_AS(fit_rate(two, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate(two, {0, 9}), std::invalid_argument);
}

TEST_CASE("default windows follow the saturation time") {
    Schedule bw_pbc = build_schedule(Geometry::Brickwall, Boundary::Periodic, 12);
    TwoStageWindows w = default_windows(bw_pbc, 40);
    CHECK(w.t_sat == 3);
    CHECK(w.second.t_min == 5);
    CHECK(w.second.t_max == 40);

    Schedule bw_obc = build_schedule(Geometry::Brickwall, Boundary::Open, 14);
    TwoStageWindows w2 = default_windows(bw_obc, 60);
    CHECK(w2.t_sat == 7);
    CHECK(w2.first.t_min == 2);
    CHECK(w2.first.t_max == 5);
}
