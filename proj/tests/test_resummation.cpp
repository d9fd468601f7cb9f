#include "twostage/resummation.hpp"

#include <cmath>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "twostage/theory.hpp"

using namespace twostage;

namespace {

SpaceTimeTable diagonal_table(int L, int T, double a) {
    SpaceTimeTable t;
    t.L = L;
    t.T = T;
    t.pinning = Pinning::Magnon;
    t.z.assign(std::size_t(T + 1) * L, 0.0);
    for (int s = 0; s <= T && s + 1 <= L; ++s) t.at(s + 1, s) = std::pow(a, s);
    return t;
}

ReducedSeries series_of(std::vector<double> z) {
    ReducedSeries s;
    s.z = std::move(z);
    return s;
}

}  // namespace

TEST_CASE("space reduction methods") {
    SpaceTimeTable tab = diagonal_table(10, 8, 5.0 / 9.0);
    ReducedSeries sum = reduce_space(tab, Reduction::SumX);
    ReducedSeries mx = reduce_space(tab, Reduction::MaxX);
    ReducedSeries am = reduce_space(tab, Reduction::AbsMaxX);
    for (int t = 0; t <= 8; ++t) {
        double expect = std::pow(5.0 / 9.0, t);
        CHECK(sum.z[t] == doctest::Approx(expect).epsilon(1e-14));
        CHECK(mx.z[t] == doctest::Approx(expect).epsilon(1e-14));
        CHECK(am.z[t] == doctest::Approx(expect).epsilon(1e-14));
    }

    SpaceTimeTable neg = diagonal_table(10, 8, -0.5);
    ReducedSeries abs_sum = reduce_space(neg, Reduction::AbsSumX);
    ReducedSeries plain_sum = reduce_space(neg, Reduction::SumX);
    CHECK(abs_sum.z[3] == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(plain_sum.z[3] == doctest::Approx(-0.125).epsilon(1e-14));
}

TEST_CASE("irreducible weights of a pure exponential collapse to one step") {
    std::vector<double> z;
    for (int t = 0; t <= 10; ++t) z.push_back(std::pow(0.7, t));
    IrreducibleWeights w = solve_irreducible(series_of(z));
    CHECK(w.w[1] == doctest::Approx(0.7).epsilon(1e-14));
    for (int t = 2; t <= 10; ++t) CHECK(std::abs(w.w[t]) < 1e-14);
}

TEST_CASE("hand-computed two-step inversion") {
    IrreducibleWeights w = solve_irreducible(series_of({1.0, 0.5, 0.3}));
    CHECK(w.w[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w.w[2] == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("round trip reconstruction on random decaying series") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> base(0.2, 0.9), noise(-0.2, 0.2);
    for (int rep = 0; rep < 100; ++rep) {
        double a = base(rng);
        std::vector<double> z{1.0};
        for (int t = 1; t <= 24; ++t)
            z.push_back(std::pow(a, t) * (1.0 + noise(rng)));
        IrreducibleWeights w = solve_irreducible(series_of(z));
        std::vector<double> back = reconstruct_from_irreducible(w);
        for (int t = 0; t <= 24; ++t)
            CHECK(std::abs(back[t] - z[t]) <= 1e-10 * std::abs(z[t]));
    }
}

TEST_CASE("geometric generating function root") {
    IrreducibleWeights w;
    w.w = {0.0, 0.4};
    RootResult r = generating_root(w);
    REQUIRE(r.found);
    CHECK(r.x0 == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(r.rate == doctest::Approx(-std::log2(0.4)).epsilon(1e-10));
    CHECK(r.residual < 1e-10);
}

TEST_CASE("exactly exponential input recovers its rate at order two") {
    std::vector<double> z;
    for (int t = 0; t <= 12; ++t) z.push_back(std::pow(0.55, t));
    IrreducibleWeights w = solve_irreducible(series_of(z));
    RootResult r = generating_root(w);
    REQUIRE(r.found);
    CHECK(r.trace.front().order == 2);
    CHECK(std::abs(r.trace.front().rate - (-std::log2(0.55))) < 1e-10);
}

TEST_CASE("no root reported when the weights cannot decay") {
    IrreducibleWeights w;
    w.w = {0.0, 2.0};  // root at 0.5 < 1, outside the bracket
    RootResult r = generating_root(w);
    CHECK_FALSE(r.found);
}

TEST_CASE("resummed magnon rate approaches the analytic value") {
    for (int i = 1; i <= 9; ++i) {
        double az = i / 10.0;
        MagnonRateResult r = resummed_magnon_rate(GateFamily::xyz(1, 1, az), 16);
        REQUIRE(r.root.found);
        double expect = theory::r_mag_analytic(az);
        CHECK(std::abs(r.root.rate - expect) / expect < 0.05);
    }
    // the small-az family has the two ballistic branches with opposite signs
    CHECK(resummed_magnon_rate(GateFamily::xyz(1, 1, 0.1), 12).series_oscillates);
    CHECK_FALSE(resummed_magnon_rate(GateFamily::xyz(1, 1, 0.7), 12).series_oscillates);
}

TEST_CASE("irreducible weights of the magnon series decay fast") {
    const int L = 18, T = 16;
    Schedule sched = build_schedule(Geometry::Brickwall, Boundary::Open, L);
    SpaceTimeTable tab =
        pinned_table(Pinning::Magnon, sched, GateFamily::xyz(1, 1, 0.6), T);
    ReducedSeries zs = reduce_space(tab, Reduction::SumX);
    IrreducibleWeights w = solve_irreducible(zs);
    // W(t)/Z(t) shrinks once the mode settles; compare equal parities since
    // the ratio alternates in sign and size layer by layer
    double r4 = std::abs(w.w[4] / zs.z[4]);
    double r14 = std::abs(w.w[14] / zs.z[14]);
    CHECK(r14 < 0.5 * r4);
    for (int t = 6; t <= 16; ++t) CHECK(std::abs(w.w[t] / zs.z[t]) < 0.2);
}

TEST_CASE("reduction input validation") {
    SpaceTimeTable empty;
    CHECK_THROWS_AS(reduce_space(empty, Reduction::SumX), std::invalid_argument);
    CHECK_THROWS_AS(solve_irreducible(series_of({0.0, 1.0, 1.0})), std::invalid_argument);
    CHECK_THROWS_AS(solve_irreducible(series_of({1.0, 0.5})), std::invalid_argument);
}
