// Acceptance runner: thirteen numbered criteria, one verdict line each, with
// wall-clock budgets checked as part of the verdict. Sub-checks print
// indented underneath. Exit code is the number of unexpected failures; the
// barrier far-field scaling clause (inside C10) is a documented expected
// failure and does not gate, but it still prints FAIL with its analysis.
//
// Usage: acceptance [criterion numbers...]   e.g. `acceptance 1 4 10`

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <fpgame/fpgame.hpp>

using namespace fpgame;

namespace {

struct Clause {
    std::string text;
    bool pass = false;
    bool expected_fail = false;
};

struct Criterion {
    int id = 0;
    std::string title;
    double budget_seconds = 0.0;
    std::function<void(std::vector<Clause>&)> run;
};

double now_seconds() {
    using clk = std::chrono::steady_clock;
    static const clk::time_point t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

void check(std::vector<Clause>& cs, bool ok, std::string text) {
    cs.push_back({std::move(text), ok, false});
}

void check_expected_fail(std::vector<Clause>& cs, bool ok, std::string text) {
    cs.push_back({std::move(text), ok, true});
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------- C1
void c1(std::vector<Clause>& cs) {
    double worst = 0.0;
    for (int dim : {2, 3})
        for (double p : {2.0, 3.0, 5.0, 10.0}) {
            const ConeSpec spec = calibrate_cone(dim, p);
            worst = std::max(worst,
                             std::abs(cap_moment_ratio(dim, spec.aperture) - (p - 1.0)));
        }
    check(cs, worst <= 1e-10, "moment-ratio residual " + fmt(worst) + " <= 1e-10 on all 8");
    const double d2 = std::abs(aperture_for_exponent(2, 2.0) - pi / 2.0);
    const double d3 = std::abs(aperture_for_exponent(3, 2.0) - pi / 2.0);
    check(cs, d2 <= 1e-12 && d3 <= 1e-12,
          "p=2 aperture = pi/2 within 1e-12 (offsets " + fmt(d2) + ", " + fmt(d3) + ")");
}

// ---------------------------------------------------------------------- C2
void c2(std::vector<Clause>& cs) {
    const double s = 0.75, eps = 0.25;
    double worst_avg = 0.0, worst_trunc = 0.0;
    for (int dim : {2, 3})
        for (double p : {2.0, 3.0, 5.0, 10.0}) {
            const ConeSpec spec = calibrate_cone(dim, p);
            const auto ker = make_kernel(dim, s);
            const double target = 1.0 / (dim + p - 2.0);
            const double avg = cap_second_moment(spec) / spec.cap_measure;
            worst_avg = std::max(worst_avg, std::abs(avg - target) / target);

            const double closed = ker.norm_const * spec.cap_measure *
                                  std::pow(eps, 2.0 - 2.0 * s) /
                                  ((dim + p - 2.0) * (2.0 - 2.0 * s));
            double got = 0.0;
            if (dim == 2) {
                const auto q = cone_quadrature<2>(spec, ker, 0.0, eps);
                got = q.integrate([](const Vec<2>& z) { return z[1] * z[1]; });
            } else {
                const auto q = cone_quadrature<3>(spec, ker, 0.0, eps);
                got = q.integrate([](const Vec<3>& z) { return z[1] * z[1]; });
            }
            worst_trunc = std::max(worst_trunc, std::abs(got - closed) / closed);
        }
    check(cs, worst_avg <= 1e-8,
          "cap average second moment = 1/(N+p-2), worst rel " + fmt(worst_avg));
    check(cs, worst_trunc <= 1e-8,
          "truncated second moment matches the closed form, worst rel " + fmt(worst_trunc));
}

// ---------------------------------------------------------------------- C3
void c3(std::vector<Clause>& cs) {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    double worst_mass = 0.0;
    for (double a : {1.0, 0.25, 1.0 / 64.0}) {
        const auto q = cone_quadrature_panels<2>(spec, ker, dyadic_breaks(a, 8.0), 16, 32);
        const double exact = truncated_cone_mass(spec, ker, a);
        worst_mass = std::max(worst_mass, std::abs(q.total_weight() - exact) / exact);
    }
    check(cs, worst_mass <= 1e-10, "quadrature mass vs closed form, worst rel " + fmt(worst_mass));

    const std::size_t n = 1000000;
    const double s = ker.order;
    std::size_t cnt[3] = {0, 0, 0};
    const double radii[3] = {2.0, 4.0, 8.0};
    Rng rng(417);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = norm(sample_increment<2>(rng, spec, ker));
        for (int k = 0; k < 3; ++k) cnt[k] += r > radii[k];
    }
    bool tails_ok = true;
    std::string detail;
    for (int k = 0; k < 3; ++k) {
        const double th = std::pow(radii[k], -2.0 * s);
        const double sig = std::sqrt(th * (1.0 - th) / double(n));
        const double dev = std::abs(double(cnt[k]) / double(n) - th) / sig;
        tails_ok = tails_ok && dev <= 4.0;
        detail += (k ? ", " : "") + fmt(dev) + " sigma at R=" + fmt(radii[k]);
    }
    check(cs, tails_ok, "radial tails at 1e6 samples within 4 sigma (" + detail + ")");
}

// ---------------------------------------------------------------------- C4
void c4(std::vector<Clause>& cs) {
    // Monte Carlo estimate of int (1-cos z1)/|z|^{2+2s} dz by two-piece
    // radial importance sampling, inverted against the Gamma-function
    // formula for the normalizing constant
    const double s = 0.75;
    const std::size_t n_each = 5000000;
    Rng rng(20260815);
    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < n_each; ++i) {
        const double phi = 2.0 * pi * rng.uniform();
        const double w1 = std::cos(phi);
        // piece 1: r in (0,1], density (2-2s) r^{1-2s}
        const double r1 = std::pow(rng.uniform_pos(), 1.0 / (2.0 - 2.0 * s));
        acc1 += (1.0 - std::cos(r1 * w1)) / (r1 * r1);
        // piece 2: r in (1,inf), density 2s r^{-1-2s}
        const double r2 = std::pow(rng.uniform_pos(), -1.0 / (2.0 * s));
        acc2 += 1.0 - std::cos(r2 * w1);
    }
    const double I = (2.0 * pi / (2.0 - 2.0 * s)) * acc1 / double(n_each) +
                     (2.0 * pi / (2.0 * s)) * acc2 / double(n_each);
    const double mc = 1.0 / I;
    const double gamma_formula = make_kernel(2, s).norm_const;
    const double rel = std::abs(mc - gamma_formula) / gamma_formula;
    check(cs, rel <= 0.01, "cosine-integral MC inverse " + fmt(mc) + " vs Gamma formula " +
                               fmt(gamma_formula) + ", rel " + fmt(rel));
}

// ---------------------------------------------------------------------- C5
const std::vector<double>& ladder7() {
    static const std::vector<double> v{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64,
                                       1.0 / 128, 1.0 / 256, 1.0 / 512};
    return v;
}
constexpr double kTiltRef075 = 0.10514046142806215;  // scripts/reference_values.py
constexpr double kTiltRef090 = 0.087560967455705935;

void c5(std::vector<Clause>& cs) {
    const auto tb = tilt_bump_probe();
    const auto sch = make_scheme<2>(3.0, 0.75, 512);
    const auto tab = verify_cone_expansion(tb, sch, ladder7(), kTiltRef075);
    double worst = 0.0;
    for (const auto& r : tab.rows) worst = std::max(worst, r.ratio);
    check(cs, tab.all_within_budget,
          "cone defect within budget on all 7 eps, worst ratio " + fmt(worst));
    check(cs, tab.order_estimate >= 0.4,
          "defect order estimate " + fmt(tab.order_estimate) + " >= 0.4");
}

// ---------------------------------------------------------------------- C6
void c6(std::vector<Clause>& cs) {
    const auto tb = tilt_bump_probe();
    const auto sch = make_scheme<2>(3.0, 0.75, 512);
    const auto comb = verify_combined_expansion(tb, sch, ladder7(), kTiltRef075);
    double worst = 0.0;
    for (const auto& r : comb.rows) worst = std::max(worst, r.ratio);
    check(cs, comb.all_within_budget,
          "combined defect within budget on all 7 eps, worst ratio " + fmt(worst));
    check(cs, comb.order_estimate >= 0.4,
          "combined order estimate " + fmt(comb.order_estimate) + " >= 0.4");

    const auto sch9 = make_scheme<2>(3.0, 0.9, 512);
    const auto cone9 = verify_cone_expansion(tb, sch9, ladder7(), kTiltRef090);
    const auto comb9 = verify_combined_expansion(tb, sch9, ladder7(), kTiltRef090);
    int wins = 0, scored = 0;
    for (std::size_t i = 0; i < cone9.rows.size(); ++i) {
        if (!cone9.rows[i].precondition_ok || !comb9.rows[i].precondition_ok) continue;
        ++scored;
        wins += comb9.rows[i].lhs_error <= cone9.rows[i].lhs_error;
    }
    check(cs, wins >= 5 && scored == 7,
          "s=0.9: combined beats cone on " + std::to_string(wins) + " of " +
              std::to_string(scored) + " eps (need >= 5 of 7)");
}

// ---------------------------------------------------------------------- C7
void c7(std::vector<Clause>& cs) {
    const Vec<2> b = unit_vec<2>(0);
    Mat<2> B = identity<2>();
    B[1][1] = -1.0;
    const auto qp = quadratic_probe<2>(b, B);
    const double p = 4.0;
    const std::vector<double> eps{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
    const auto tab = verify_midrange_identity(qp, p, eps);
    const double hessF = frobenius_norm(B);
    bool caps_ok = true;
    double worst = 0.0;
    for (const auto& r : tab.rows) {
        const double cap = 4.0 * r.eps * r.eps * r.eps * (p - 2.0) * hessF * hessF / norm(b);
        caps_ok = caps_ok && std::abs(r.budget - cap) <= 1e-12 * cap;
        worst = std::max(worst, r.lhs_error / cap);
    }
    check(cs, caps_ok, "budget equals 4 eps^3 (p-2) |B|^2 / |b| exactly (zero Hessian osc)");
    check(cs, tab.all_within_budget, "midrange residual within the cap on all 5 eps, worst ratio " + fmt(worst));
}

// ---------------------------------------------------------------------- C8
void c8(std::vector<Clause>& cs) {
    const Scheme<2> sch = make_solver_scheme<2>(3.0, 0.75);
    DirichletProblem<2> prob{ball_domain<2>(1.0), clamped_affine_boundary<2>(unit_vec<2>(0)),
                             1.0 / 16.0, sch};
    const double osc = prob.datum.osc();
    const double h = prob.eps / 8.0;
    const DppLattice<2> op(prob, h);

    const auto sol = solve_dpp(op, SolveOptions{});
    check(cs, sol.converged && sol.residual <= 1e-6 * osc,
          "converged with residual " + fmt(sol.residual) + " <= 1e-6 osc = " + fmt(1e-6 * osc));
    check(cs, sol.min_interior() >= prob.datum.lo - 1e-12 &&
                  sol.max_interior() <= prob.datum.hi + 1e-12,
          "maximum principle: interior range [" + fmt(sol.min_interior()) + ", " +
              fmt(sol.max_interior()) + "] inside the datum range");
    check(cs, sol.monotone_nondecreasing, "Jacobi iterates from the inf seed are monotone");
    check(cs, sol.iterations <= sol.geometric_bound + 1,
          "iterations " + std::to_string(sol.iterations) + " <= geometric bound " +
              std::to_string(sol.geometric_bound) + " + 1");

    SolveOptions sup;
    sup.start_from_sup = true;
    const auto alt = solve_dpp(op, sup);
    double gap = 0.0;
    for (auto i : sol.interior) gap = std::max(gap, std::abs(sol.values[i] - alt.values[i]));
    check(cs, gap <= 2e-6 * osc,
          "restart from the sup seed lands within " + fmt(gap) + " <= 2e-6 osc");

    auto above = prob.datum;
    const auto base_eval = prob.datum.eval;
    above.eval = [base_eval](const Vec<2>& x) { return base_eval(x) + 0.5; };
    above.lo += 0.5;
    above.hi += 0.5;
    check(cs, monotonicity_check(prob, above, prob.eps / 4.0, 2e-6 * above.osc()),
          "solution map is monotone in F on an ordered datum pair");
}

// ---------------------------------------------------------------------- C9
void c9(std::vector<Clause>& cs) {
    const Scheme<2> sch = make_solver_scheme<2>(3.0, 0.75);
    DirichletProblem<2> prob{ball_domain<2>(1.0), clamped_affine_boundary<2>(unit_vec<2>(0)),
                             1.0 / 8.0, sch};
    const double osc = prob.datum.osc();
    const auto sol = solve_dpp(prob, prob.eps / 8.0);
    auto field = [&sol](const Vec<2>& x) { return sol.value_at(x); };
    const auto smax = greedy_strategy<2>(field, sch, prob.eps, true);
    const auto smin = greedy_strategy<2>(field, sch, prob.eps, false);

    const Vec<2> points[3] = {zero_vec<2>(), Vec<2>{0.3, 0.0}, Vec<2>{0.0, -0.5}};
    for (int k = 0; k < 3; ++k) {
        const auto est = estimate_value(prob, points[k], smax, smin, 100000, 4100 + k);
        const double dev = std::abs(est.mean - sol.value_at(points[k]));
        const double tol = 3.0 * est.se + 1e-2 * osc;
        check(cs, dev <= tol && est.truncation_rate < 1e-4,
              "greedy pair at (" + fmt(points[k][0]) + ", " + fmt(points[k][1]) + "): |" +
                  fmt(est.mean) + " - " + fmt(sol.value_at(points[k])) + "| = " + fmt(dev) +
                  " <= " + fmt(tol));
    }
}

// --------------------------------------------------------------------- C10
void c10(std::vector<Clause>& cs) {
    const ConeSpec spec = calibrate_cone(2, 3.0);
    const auto ker = make_kernel(2, 0.75);
    const BarrierParams bp = compute_t0(spec, ker);
    const double t = bp.t0 + 1.0;
    const auto rep = barrier_positivity<2>(t, {1.0, 2.0, 5.0, 10.0}, spec, ker);
    check(cs, rep.min_scaled > 0.0,
          "scaled barrier operator positive at |x| in {1,2,5,10}, min " + fmt(rep.min_scaled));

    const double variation = (rep.max_scaled - rep.min_scaled) / rep.max_scaled;
    check_expected_fail(
        cs, variation < 0.5,
        "scaled values vary by " + fmt(variation * 100.0) +
            " percent (< 50 wanted). Expected failure: the plateau carries fixed mass, so "
            "far from it the operator decays like |x|^{-N-2s}; multiplying by |x|^{2s+t} "
            "then grows like |x|^{t-N}, and no barrier of this family can satisfy the cap");

    const Scheme<2> sch = make_scheme<2>(2.0, 0.75, 64);
    const auto ring = barrier_discrete_supersolution<2>(t, 2.0, {1.0 / 32.0}, sch,
                                                        {1.0, 1.25, 1.5, 2.0, 3.0, 4.0});
    check(cs, ring.all_hold && ring.c_min > 0.0,
          "discrete ring gain >= c eps^{2s} R^{-2s-t} on the annulus, c_min " +
              fmt(ring.c_min));
}

// --------------------------------------------------------------------- C11
void c11(std::vector<Clause>& cs) {
    const Scheme<2> sch = make_solver_scheme<2>(2.0, 0.75);
    const auto grid = adversarial_grid<2>();
    const double k = 9.0, delta = 1.0;
    const auto over =
        overshoot_experiment<2>(sch, k, delta, delta / (8.0 * k), 100000, 7001, grid);
    bool all = true;
    double worst = 0.0;
    for (const auto& v : over) {
        all = all && v.verdict == "pass";
        worst = std::max(worst, v.empirical);
    }
    check(cs, all && over.size() == 9,
          "overshoot bound 0.125 holds for all 9 strategy pairs, worst empirical " +
              fmt(worst));

    const ConeSpec spec2 = calibrate_cone(2, 2.0);
    const double t0 = compute_t0(spec2, make_kernel(2, 0.75)).t0;
    const auto ann = annulus_exit_experiment<2>(sch, t0, 2.0, 4.0, 1.0 / 8.0, 100000, 7002,
                                                grid);
    bool ann_ok = true;
    double worst_ann = 0.0;
    for (const auto& v : ann) {
        ann_ok = ann_ok && v.verdict == "pass";
        worst_ann = std::max(worst_ann, v.empirical);
    }
    check(cs, ann_ok,
          "pull-inward keeps exits below theta(" + fmt(t0) + ",2,4) = " +
              fmt(theta_bound(t0, 2.0, 4.0)) + " against all adversaries, worst " +
              fmt(worst_ann));
}

// --------------------------------------------------------------------- C12
void c12(std::vector<Clause>& cs) {
    const auto sch = make_scheme<2>(3.0, 0.75, 512);
    std::vector<std::pair<std::string, SmoothProbe<2>>> probes;
    probes.emplace_back("tilt-bump", tilt_bump_probe());
    auto bp = bump_probe<2>(1.0, zero_vec<2>(), 0.5);
    bp.anchor = Vec<2>{0.25, 0.0};
    probes.emplace_back("off-center bump", bp);
    probes.emplace_back("gaussian", gaussian_probe<2>(Vec<2>{0.3, 0.2}));
    for (const auto& [name, probe] : probes) {
        const double ref = l_sp(probe, sch);
        const auto tr = l_tilde<2>(probe.value, probe.anchor, probe.r_x, sch);
        const double dev = std::abs(tr.value - ref);
        const double tol = 1e-4 * (1.0 + std::abs(ref));
        check(cs, dev <= tol,
              name + ": |l_tilde - l_sp| = " + fmt(dev) + " <= " + fmt(tol));
    }
}

// --------------------------------------------------------------------- C13
void c13(std::vector<Clause>& cs) {
    const Scheme<2> sch = make_solver_scheme<2>(2.0, 0.75);
    const std::vector<double> ladder{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
    const auto rows = convergence_study<2>(ball_domain<2>(1.0), harmonic_tail_boundary<2>(),
                                           sch, ladder, 1e-4);
    bool decreasing = true;
    std::string trend;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) decreasing = decreasing && rows[i].sup_diff < rows[i - 1].sup_diff;
        trend += (i ? " > " : "") + fmt(rows[i].sup_diff);
    }
    check(cs, rows.size() == 3 && decreasing,
          "consecutive sup differences decrease along eps = 2^-3..2^-6: " + trend);
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    std::vector<Criterion> all = {
        {1, "cone calibration", 1.0, c1},
        {2, "cap and truncated moments", 1.0, c2},
        {3, "measure mass and sampled tails", 30.0, c3},
        {4, "normalizing constant vs Monte Carlo", 60.0, c4},
        {5, "cone average expansion", 300.0, c5},
        {6, "combined average expansion", 300.0, c6},
        {7, "midrange identity", 60.0, c7},
        {8, "DPP solve certificates", 600.0, c8},
        {9, "greedy play matches the discrete value", 600.0, c9},
        {10, "barrier positivity, scaling, ring gain", 120.0, c10},
        {11, "exit probability bounds", 600.0, c11},
        {12, "critical-point operator agreement", 300.0, c12},
        {13, "epsilon ladder Cauchy trend", 1800.0, c13},
    };

    int unexpected = 0, expected = 0, passed = 0, ran = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        ++ran;
        std::vector<Clause> clauses;
        const double t0 = now_seconds();
        c.run(clauses);
        const double dt = now_seconds() - t0;

        bool ok = dt <= c.budget_seconds;
        bool only_expected_failed = true;
        for (const auto& cl : clauses) {
            if (cl.pass) continue;
            ok = false;
            if (!cl.expected_fail) only_expected_failed = false;
        }
        if (dt > c.budget_seconds) only_expected_failed = false;

        const char* tag = ok ? "PASS" : (only_expected_failed ? "FAIL (expected)" : "FAIL");
        std::printf("[%s] C%02d %s  (%.1fs, budget %.0fs)\n", tag, c.id, c.title.c_str(), dt,
                    c.budget_seconds);
        for (const auto& cl : clauses)
            std::printf("    [%s] %s\n", cl.pass ? "pass" : "FAIL", cl.text.c_str());
        std::fflush(stdout);

        if (ok)
            ++passed;
        else if (only_expected_failed)
            ++expected;
        else
            ++unexpected;
    }

    std::printf("%d/%d criteria pass", passed, ran);
    if (expected) std::printf(", %d expected failure%s", expected, expected > 1 ? "s" : "");
    if (unexpected) std::printf(", %d UNEXPECTED failure%s", unexpected, unexpected > 1 ? "s" : "");
    std::printf("\n");
    return unexpected ? 1 : 0;
}
