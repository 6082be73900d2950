#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fpgame/dpp.hpp>

using namespace fpgame;

namespace {
DirichletProblem<2> ball_affine(double eps) {
    static const Scheme<2> sch = make_solver_scheme<2>(3.0, 0.75);
    return {ball_domain<2>(1.0), clamped_affine_boundary<2>(unit_vec<2>(0)), eps, sch};
}
}  // namespace

TEST_CASE("lattice operator rejects bad discretizations", "[dpp]") {
    const auto prob = ball_affine(0.25);
    REQUIRE_THROWS_AS(DppLattice<2>(prob, 0.2), std::invalid_argument);  // h > eps/4
    auto narrow = prob;
    narrow.scheme.far_radius = 1.0;  // below the diameter
    REQUIRE_THROWS_AS(DppLattice<2>(narrow, 0.0625), std::invalid_argument);
}

TEST_CASE("constant data solve in one step", "[dpp]") {
    const Scheme<2> sch = make_solver_scheme<2>(3.0, 0.75);
    DirichletProblem<2> prob{ball_domain<2>(1.0), constant_boundary<2>(4.0), 0.25, sch};
    const auto sol = solve_dpp(prob, 0.0625);
    REQUIRE(sol.converged);
    REQUIRE(sol.iterations <= 2);
    REQUIRE(sol.min_interior() == Catch::Approx(4.0).margin(1e-12));
    REQUIRE(sol.max_interior() == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("solution certificates on the affine ball problem", "[dpp][slow]") {
    const auto prob = ball_affine(0.25);
    const auto sol = solve_dpp(prob, 0.0625);
    REQUIRE(sol.converged);
    REQUIRE(sol.iterations <= sol.geometric_bound + 1);
    REQUIRE(sol.residual <= sol.stop_threshold);
    // discrete maximum principle against the datum range
    REQUIRE(sol.min_interior() >= prob.datum.lo - 1e-12);
    REQUIRE(sol.max_interior() <= prob.datum.hi + 1e-12);
    // Jacobi from the inf seed increases through the lattice
    REQUIRE(sol.monotone_nondecreasing);
    // odd symmetry of the datum forces u(0) ~ 0
    REQUIRE(std::abs(sol.value_at(zero_vec<2>())) <= 1e-6 * prob.datum.osc());

    // value_at reproduces nodes exactly and falls back to the datum outside
    const std::size_t i = sol.interior[sol.interior.size() / 2];
    REQUIRE(sol.value_at(sol.grid.point(i)) == Catch::Approx(sol.values[i]).margin(1e-14));
    const Vec<2> out{3.0, 0.0};
    REQUIRE(sol.value_at(out) == Catch::Approx(prob.datum(out)));
}

TEST_CASE("adding a constant to the data shifts the solution", "[dpp][slow]") {
    const auto prob = ball_affine(0.25);
    auto lifted = prob;
    const auto base_eval = prob.datum.eval;
    lifted.datum.eval = [base_eval](const Vec<2>& x) { return base_eval(x) + 1.0; };
    lifted.datum.lo += 1.0;
    lifted.datum.hi += 1.0;
    const auto a = solve_dpp(prob, 0.0625);
    const auto b = solve_dpp(lifted, 0.0625);
    double worst = 0.0;
    for (auto i : a.interior)
        worst = std::max(worst, std::abs(b.values[i] - a.values[i] - 1.0));
    // each run is certified within 1e-6 osc of its fixed point, and the two
    // fixed points differ by the constant exactly
    REQUIRE(worst <= 1e-6 * (prob.datum.osc() + lifted.datum.osc()) + 1e-12);
}

TEST_CASE("ordered data produce ordered solutions", "[dpp][slow]") {
    const auto prob = ball_affine(0.25);
    auto above = prob.datum;
    const auto base_eval = prob.datum.eval;
    above.eval = [base_eval](const Vec<2>& x) { return base_eval(x) + 0.5; };
    above.lo += 0.5;
    above.hi += 0.5;
    // each solve is certified within 1e-6 osc, so ordering can slip by the sum
    REQUIRE(monotonicity_check(prob, above, 0.0625, 2e-6 * above.osc()));
}

TEST_CASE("sweep flavors and restarts agree on the fixed point", "[dpp][slow]") {
    const auto prob = ball_affine(0.25);
    const DppLattice<2> op(prob, 0.0625);

    SolveOptions jac;
    const auto a = solve_dpp(op, jac);
    SolveOptions gs;
    gs.in_place = true;
    const auto b = solve_dpp(op, gs);
    SolveOptions sup;
    sup.start_from_sup = true;
    const auto c = solve_dpp(op, sup);
    REQUIRE(c.monotone_nonincreasing);

    double ab = 0.0, ac = 0.0;
    for (auto i : a.interior) {
        ab = std::max(ab, std::abs(a.values[i] - b.values[i]));
        ac = std::max(ac, std::abs(a.values[i] - c.values[i]));
    }
    const double tol = 2.0 * a.stop_threshold / (1.0 - a.q) + 1e-12;
    REQUIRE(ab <= tol);
    REQUIRE(ac <= tol);

    // warm start from the fixed point stops immediately
    SolveOptions warm;
    warm.warm_start = &a.values;
    const auto d = solve_dpp(op, warm);
    REQUIRE(d.iterations <= 2);

    std::vector<double> bad(3, 0.0);
    SolveOptions broken;
    broken.warm_start = &bad;
    REQUIRE_THROWS_AS(solve_dpp(op, broken), std::invalid_argument);
}

TEST_CASE("consecutive solutions tighten along the eps ladder", "[dpp][slow]") {
    const Scheme<2> sch = make_solver_scheme<2>(2.0, 0.75);
    const auto rows = convergence_study<2>(ball_domain<2>(1.0), harmonic_tail_boundary<2>(),
                                           sch, {0.5, 0.25, 0.125}, 1e-3);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[1].sup_diff < rows[0].sup_diff);
    for (const auto& r : rows) REQUIRE(r.residual >= 0.0);
}
