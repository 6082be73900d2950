#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fpgame/barrier.hpp>
#include <fpgame/operators.hpp>

using namespace fpgame;

TEST_CASE("feasible barrier exponent", "[barrier]") {
    // hand-checked against the growth condition and the r^2 window
    struct Row {
        double p, s, t0;
    };
    const Row rows[] = {{3.0, 0.75, 8.0}, {3.0, 0.9, 4.0}, {3.0, 0.6, 20.0}, {2.0, 0.75, 10.0}};
    for (const auto& r : rows) {
        const ConeSpec spec = calibrate_cone(2, r.p);
        const auto ker = make_kernel(2, r.s);
        const BarrierParams bp = compute_t0(spec, ker);
        REQUIRE(bp.t0 == Catch::Approx(r.t0));
        REQUIRE(barrier_growth_margin(bp.t0, r.p, 2) >= 0.0);
        const auto [lo, hi] = barrier_r2_window(bp.t0, r.p, r.s, 2);
        REQUIRE(lo <= hi);
        REQUIRE(bp.r_window * bp.r_window >= lo - 1e-15);
        REQUIRE(bp.r_window < 0.5);
    }
    const ConeSpec spec3 = calibrate_cone(3, 5.0);
    REQUIRE(compute_t0(spec3, make_kernel(3, 0.75)).t0 == Catch::Approx(8.0));
}

TEST_CASE("t0 grows as s falls toward 1/2", "[barrier]") {
    const ConeSpec spec = calibrate_cone(2, 2.0);
    double prev = 0.0;
    for (double s : {0.9, 0.75, 0.6}) {
        const double t0 = compute_t0(spec, make_kernel(2, s)).t0;
        REQUIRE(t0 >= prev);
        prev = t0;
    }
}

TEST_CASE("barrier operator values match the reference integrals", "[barrier][oracle]") {
    // adaptive scipy quad/dblquad of the second-difference form, tabulated
    // in scripts/reference_values.py (p = 3 cone); quadrature here is a fixed
    // panel rule, so 1 percent is the contract
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    struct Row {
        double t, R, ref;
    };
    const Row rows[] = {
        {9.0, 1.0, 195.274327947},
        {9.0, 2.0, 9.04952138562},
        {9.0, 5.0, 0.323398568683},
        {9.0, 10.0, 0.0282253192626},
        {8.0, 2.0, 4.76984859986},
    };
    for (const auto& r : rows) {
        const double got = barrier_lsp<2>(r.t, r.R, spec, ker);
        REQUIRE(std::abs(got - r.ref) <= 0.01 * std::abs(r.ref));
    }
    REQUIRE_THROWS_AS(barrier_lsp<2>(9.0, 0.5, spec, ker), std::invalid_argument);
}

TEST_CASE("positivity scan off the plateau", "[barrier]") {
    const ConeSpec spec = calibrate_cone(2, 2.0);
    const auto ker = make_kernel(2, 0.75);
    const auto rep = barrier_positivity<2>(9.0, {1.0, 2.0, 5.0, 10.0}, spec, ker);
    REQUIRE(rep.rows.size() == 4);
    REQUIRE(rep.min_scaled > 0.0);
    for (const auto& row : rep.rows) {
        REQUIRE(row.lsp > 0.0);
        REQUIRE(row.scaled ==
                Catch::Approx(std::pow(row.radius, 2.0 * ker.order + 9.0) * row.lsp));
    }
    // the plateau mass fixes the far field at |x|^{-N-2s}, so the
    // |x|^{-2s-t} scaling must blow up instead of settling
    REQUIRE(rep.max_scaled > 100.0 * rep.min_scaled);
}

TEST_CASE("discrete ring supersolution gain", "[barrier][slow]") {
    const Scheme<2> sch = make_scheme<2>(2.0, 0.75, 64);
    const auto rep =
        barrier_discrete_supersolution<2>(9.0, 2.0, {1.0 / 16.0}, sch, {1.0, 1.5, 2.0});
    REQUIRE(rep.all_hold);
    REQUIRE(rep.c_min > 0.0);
    REQUIRE(rep.violations.empty());
    for (const auto& row : rep.rows) {
        REQUIRE(row.gain > 0.0);
        REQUIRE(row.unit == Catch::Approx(std::pow(row.eps, 1.5) *
                                          std::pow(2.0, -1.5 - 9.0)));
        REQUIRE(row.c_fitted == Catch::Approx(row.gain / row.unit));
        REQUIRE(row.holds);
    }
}

TEST_CASE("solved annulus value dominates the barrier", "[barrier][slow]") {
    const Scheme<2> sch = make_solver_scheme<2>(2.0, 0.75, 16, 3, 3);
    const double gap = barrier_domination_gap<2>(8.0, 2.0, 0.25, 0.0625, sch);
    REQUIRE(gap >= 0.0);
}
