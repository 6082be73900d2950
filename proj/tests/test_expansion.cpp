#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fpgame/expansion.hpp>

using namespace fpgame;

TEST_CASE("error budget is positive and shrinks with eps", "[expansion]") {
    const auto tb = tilt_bump_probe();
    const double p = 3.0, s = 0.75;
    double prev_cone = std::numeric_limits<double>::infinity();
    double prev_comb = std::numeric_limits<double>::infinity();
    for (double eps : {0.125, 0.0625, 0.03125, 0.015625}) {
        const ErrorBudget b = error_budget(tb, p, s, eps);
        REQUIRE(b.bound_cone_average > 0.0);
        REQUIRE(b.bound_combined_average > 0.0);
        REQUIRE(b.kappa_eps >= 0.0);
        REQUIRE(b.m_eps >= b.kappa_eps);
        REQUIRE(b.bound_cone_average ==
                Catch::Approx(b.cone_local + b.cone_tail).epsilon(1e-14));
        REQUIRE(b.bound_cone_average < prev_cone);
        REQUIRE(b.bound_combined_average < prev_comb);
        prev_cone = b.bound_cone_average;
        prev_comb = b.bound_combined_average;
    }
}

TEST_CASE("budget rejects out-of-range inputs", "[expansion]") {
    const auto tb = tilt_bump_probe();
    REQUIRE_THROWS_AS(error_budget(tb, 3.0, 0.4, 0.1), std::domain_error);   // s <= 1/2
    REQUIRE_THROWS_AS(error_budget(tb, 1.5, 0.75, 0.1), std::domain_error);  // p < 2
    REQUIRE_THROWS_AS(error_budget(tb, 3.0, 0.75, 2.0 * tb.r_x),
                      std::domain_error);  // eps >= r_x
}

TEST_CASE("loglog slope recovers a power law", "[expansion]") {
    std::vector<double> xs, ys;
    for (double e : {0.5, 0.25, 0.125, 0.0625}) {
        xs.push_back(e);
        ys.push_back(3.7 * std::pow(e, 1.5));
    }
    REQUIRE(detail::loglog_slope(xs, ys) == Catch::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("cone expansion ladder stays inside the budget", "[expansion][slow]") {
    const auto tb = tilt_bump_probe();
    const auto sch = make_scheme<2>(3.0, 0.75, 128);
    const std::vector<double> ladder{0.125, 0.0625, 0.03125};
    const auto tab = verify_cone_expansion(tb, sch, ladder);
    REQUIRE(tab.rows.size() == ladder.size());
    REQUIRE(tab.all_within_budget);
    for (const auto& r : tab.rows) {
        REQUIRE(r.precondition_ok);
        REQUIRE(r.ratio <= 1.0);
    }
    REQUIRE(tab.order_estimate >= 0.4);
}

TEST_CASE("rows outside (0, r_x) are flagged, not scored", "[expansion]") {
    const auto tb = tilt_bump_probe();
    const auto sch = make_scheme<2>(3.0, 0.75, 64);
    const auto tab = verify_cone_expansion(tb, sch, {2.0 * tb.r_x});
    REQUIRE(tab.rows.size() == 1);
    REQUIRE_FALSE(tab.rows[0].precondition_ok);
    REQUIRE_FALSE(tab.rows[0].note.empty());
}

TEST_CASE("combined expansion ladder", "[expansion][slow]") {
    const auto tb = tilt_bump_probe();
    const auto sch = make_scheme<2>(3.0, 0.75, 128);
    const auto tab = verify_combined_expansion(tb, sch, {0.125, 0.0625, 0.03125});
    REQUIRE(tab.all_within_budget);
    // the fitted eps^{2s} coefficient should at least carry the right sign
    // and magnitude of the prediction
    REQUIRE(tab.expected_coefficient != 0.0);
    REQUIRE(tab.fitted_coefficient * tab.expected_coefficient > 0.0);
    REQUIRE(std::abs(tab.fitted_coefficient - tab.expected_coefficient) <=
            0.5 * std::abs(tab.expected_coefficient));
}

TEST_CASE("midrange identity on a pure quadratic", "[expansion]") {
    const Vec<2> b = unit_vec<2>(0);
    Mat<2> B = identity<2>();
    B[1][1] = -1.0;
    const auto qp = quadratic_probe<2>(b, B);
    const double p = 4.0;
    const auto tab = verify_midrange_identity(qp, p, {0.125, 0.0625, 0.03125, 0.015625});
    REQUIRE(tab.all_within_budget);
    for (const auto& r : tab.rows) {
        REQUIRE(r.precondition_ok);
        // pure quadratic: zero Hessian oscillation, so the bound is exactly
        // 4 eps^3 (p-2) |B|^2 / |b| and the residual sits far below it
        const double hessF = frobenius_norm(B);
        const double cap = 4.0 * std::pow(r.eps, 3.0) * (p - 2.0) * hessF * hessF / norm(b);
        REQUIRE(r.budget == Catch::Approx(cap).epsilon(1e-12));
        REQUIRE(r.lhs_error <= 1e-6 * cap);
    }
}

TEST_CASE("midrange identity input guards", "[expansion]") {
    const Vec<2> b = unit_vec<2>(0);
    const auto qp = quadratic_probe<2>(b, identity<2>());
    REQUIRE_THROWS_AS(verify_midrange_identity(qp, 1.5, {0.1}), std::domain_error);
    const auto flat = quadratic_probe<2>(zero_vec<2>(), identity<2>());
    REQUIRE_THROWS_AS(verify_midrange_identity(flat, 4.0, {0.1}), std::domain_error);
}
