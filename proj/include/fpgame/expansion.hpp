#pragma once

// Quantitative error budgets for the eps-expansions of the truncated cone
// average and of the combined three-part average, plus the table drivers
// behind verify-expansion. A budget is a certified upper bound assembled
// from the probe's certificates (c_x, r_x, modulus of continuity, Hessian
// oscillation); the drivers measure the actual expansion defect on an eps
// ladder and report one row per eps.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgame/field.hpp"
#include "fpgame/operators.hpp"

namespace fpgame {

// one eps worth of budget bookkeeping; inputs are echoed so a row can be
// audited without re-deriving anything
struct ErrorBudget {
    double eps = 0.0;
    double s = 0.0;
    double p = 0.0;
    int dim = 0;
    double c_x = 0.0;
    double r_x = 0.0;
    double grad_norm = 0.0;

    double kappa_eps = 0.0;  // modulus feedback threshold, always in [0, 2]
    double m_eps = 0.0;      // displacement scale of near-extremal points, >= kappa_eps

    // cone average: local Taylor part plus the eps^{2s} tail bracket
    double cone_local = 0.0;
    double cone_tail = 0.0;
    double bound_cone_average = 0.0;

    // combined average: curvature tail, modulus tail, local Hessian
    // oscillation, gradient correction
    double comb_curvature = 0.0;
    double comb_modulus = 0.0;
    double comb_hessian_osc = 0.0;
    double comb_gradient = 0.0;
    double bound_combined_average = 0.0;
};

namespace detail {

// largest m in [0, 2] with m^2 <= gain * omega(m). A dyadic scan from the
// top locates the admissible region (guards mild non-monotonicity of the
// predicate), then bisection sharpens the edge far below 2^-20. For concave
// moduli, which is all the probe catalog uses, the admissible set is an
// interval and the result is exact to the bisection width.
inline double solve_kappa(double gain, const std::function<double(double)>& omega) {
    auto ok = [&](double m) { return m * m <= gain * omega(m); };
    if (ok(2.0)) return 2.0;
    const double step = 0x1p-12;
    double lo = 0.0;
    for (double m = 2.0 - step; m > 0.0; m -= step) {
        if (ok(m)) {
            lo = m;
            break;
        }
    }
    double hi = std::min(2.0, lo + step);
    for (int it = 0; it < 64 && hi - lo > 0x1p-40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

inline void require_budget_inputs(double r_x, double grad_norm, double p, double s,
                                  double eps, const char* who) {
    if (!(s > 0.5 && s < 1.0))
        throw std::domain_error(std::string(who) + ": s must lie in (1/2, 1)");
    if (p < 2.0) throw std::domain_error(std::string(who) + ": exponent below 2");
    if (!(eps > 0.0) || eps >= r_x)
        throw std::domain_error(std::string(who) + ": needs 0 < eps < r_x");
    if (grad_norm < 1e-14)
        throw std::domain_error(std::string(who) + ": gradient vanishes at the anchor");
}

}  // namespace detail

// threshold below which the modulus feedback inequality
//   m^2 <= (N+p-2)/(p-1) * 8 omega(m)/|grad| * (((2s-1)/(2s)) r^{-2s} + r^{1-2s})
//          / (eps^{1-2s} - r^{1-2s})
// still admits solutions; it feeds the displacement scale m_eps
template <std::size_t N>
double kappa_eps(const SmoothProbe<N>& probe, double p, double s, double eps) {
    const double gn = norm(probe.grad_at_anchor());
    detail::require_budget_inputs(probe.r_x, gn, p, s, eps, "kappa_eps");
    const double r = probe.r_x;
    const double split = std::pow(eps, 1.0 - 2.0 * s) - std::pow(r, 1.0 - 2.0 * s);
    const double gain = (double(N) + p - 2.0) / (p - 1.0) * (8.0 / gn) *
                        (((2.0 * s - 1.0) / (2.0 * s)) * std::pow(r, -2.0 * s) +
                         std::pow(r, 1.0 - 2.0 * s)) /
                        split;
    return detail::solve_kappa(gain, [&](double m) { return probe.modulus(m); });
}

// how far the near-extremal directions of the truncated cone average can
// drift from the gradient axis: a curvature-driven term capped against the
// modulus feedback threshold
template <std::size_t N>
double m_eps(const SmoothProbe<N>& probe, double p, double s, double eps) {
    const double gn = norm(probe.grad_at_anchor());
    detail::require_budget_inputs(probe.r_x, gn, p, s, eps, "m_eps");
    const double r = probe.r_x;
    const double split = std::pow(eps, 1.0 - 2.0 * s) - std::pow(r, 1.0 - 2.0 * s);
    const double drift = 16.0 * (double(N) + p - 2.0) / (p - 1.0) * (probe.c_x / gn) *
                         ((2.0 * s - 1.0) / (1.0 - s)) *
                         (std::pow(r, 2.0 - 2.0 * s) - std::pow(eps, 2.0 - 2.0 * s)) / split;
    return std::max(drift, kappa_eps(probe, p, s, eps));
}

// assemble both certified bounds at a single eps. The probe must carry a
// global modulus of continuity; when it does not track Hessian oscillation
// the sup-norm fallback 4 c_x is used for the local oscillation term.
template <std::size_t N>
ErrorBudget error_budget(const SmoothProbe<N>& probe, double p, double s, double eps) {
    ErrorBudget b;
    b.eps = eps;
    b.s = s;
    b.p = p;
    b.dim = int(N);
    b.c_x = probe.c_x;
    b.r_x = probe.r_x;
    b.grad_norm = norm(probe.grad_at_anchor());
    detail::require_budget_inputs(b.r_x, b.grad_norm, p, s, eps, "error_budget");

    b.kappa_eps = kappa_eps(probe, p, s, eps);
    const double r = b.r_x;
    const double split = std::pow(eps, 1.0 - 2.0 * s) - std::pow(r, 1.0 - 2.0 * s);
    const double shell = std::pow(r, 2.0 - 2.0 * s) - std::pow(eps, 2.0 - 2.0 * s);
    const double drift = 16.0 * (double(N) + p - 2.0) / (p - 1.0) * (b.c_x / b.grad_norm) *
                         ((2.0 * s - 1.0) / (1.0 - s)) * shell / split;
    b.m_eps = std::max(drift, b.kappa_eps);

    const double om = probe.modulus(b.m_eps);
    const double e2s = std::pow(eps, 2.0 * s);
    const double radii = std::pow(r, -2.0 * s) +
                         (2.0 * s / (2.0 * s - 1.0)) * std::pow(r, 1.0 - 2.0 * s);

    b.cone_local = (s / (1.0 - s)) * b.c_x * eps * eps;
    b.cone_tail = e2s * (4.0 * s * b.c_x * shell / (1.0 - s) * b.m_eps + radii * om);
    b.bound_cone_average = b.cone_local + b.cone_tail;

    const double K = double(N) + p - 2.0;
    const double D = K + 2.0 * s;
    const double osc = probe.hess_osc ? probe.hessian_oscillation(eps) : 4.0 * b.c_x;
    const double hessF = frobenius_norm(probe.hessian(probe.anchor));
    b.comb_curvature = (4.0 * s * K / D) * b.c_x * shell * e2s * b.m_eps;
    b.comb_modulus = ((1.0 - s) * K / D) * radii * e2s * om;
    b.comb_hessian_osc = (s * K / D) * eps * eps * osc;
    b.comb_gradient =
        p == 2.0 ? 0.0
                 : (2.0 * s * (p - 2.0) / D) * eps * eps * eps * hessF * hessF / b.grad_norm;
    b.bound_combined_average =
        b.comb_curvature + b.comb_modulus + b.comb_hessian_osc + b.comb_gradient;
    return b;
}

// one eps ladder entry of a verification table. order_estimate is the local
// slope against the previous usable row; the table also carries a global
// regression.
struct ExpansionRow {
    double eps = 0.0;
    double lhs_error = 0.0;
    double budget = 0.0;
    double ratio = 0.0;
    double order_estimate = std::numeric_limits<double>::quiet_NaN();
    bool precondition_ok = true;
    bool within_budget = true;
    std::string note;
};

struct ExpansionTable {
    std::vector<ExpansionRow> rows;
    double order_estimate = std::numeric_limits<double>::quiet_NaN();
    double reference = std::numeric_limits<double>::quiet_NaN();
    double slack = 0.0;  // quadrature allowance, reported next to the budget
    bool all_within_budget = true;
    // set by the combined driver: least squares fit of (average - u) against
    // eps^{2s}, to be compared with expected_coefficient
    double fitted_coefficient = std::numeric_limits<double>::quiet_NaN();
    double expected_coefficient = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

// local consecutive-row orders plus the global regression; rows with a
// failed precondition or a vanishing defect are left out
inline void attach_orders(ExpansionTable& tab) {
    std::vector<double> es, ls;
    double prev_e = 0.0, prev_l = 0.0;
    bool have_prev = false;
    for (auto& row : tab.rows) {
        if (!row.precondition_ok || !(row.lhs_error > 0.0)) continue;
        if (have_prev)
            row.order_estimate =
                std::log(row.lhs_error / prev_l) / std::log(row.eps / prev_e);
        prev_e = row.eps;
        prev_l = row.lhs_error;
        have_prev = true;
        es.push_back(row.eps);
        ls.push_back(row.lhs_error);
    }
    tab.order_estimate = loglog_slope(es, ls);
}

inline double budget_ratio(double lhs, double budget) {
    if (budget > 0.0) return lhs / budget;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

template <std::size_t N>
double quadrature_slack(const SmoothProbe<N>& probe) {
    const double base = std::isfinite(probe.sup_norm)
                            ? probe.sup_norm
                            : std::max(1.0, std::abs(probe.at_anchor()));
    return 1e-5 * base;
}

}  // namespace detail

// measure |A_eps u - u - (s / (C |A|)) eps^{2s} L| against the certified
// bound on an eps ladder. Pass l_reference to pin the expansion against an
// externally computed integral; by default the library's own quadrature of
// L_{s,p}[u] at the anchor is used.
template <std::size_t N>
ExpansionTable verify_cone_expansion(
    const SmoothProbe<N>& probe, const Scheme<N>& sch, const std::vector<double>& eps_list,
    double l_reference = std::numeric_limits<double>::quiet_NaN()) {
    const double s = sch.kernel.order;
    const double p = sch.cone.exponent;
    ExpansionTable tab;
    tab.reference = std::isnan(l_reference) ? l_sp(probe, sch) : l_reference;
    tab.slack = detail::quadrature_slack(probe);
    const double fac = s / (sch.kernel.norm_const * sch.cone.cap_measure);
    const double ux = probe.at_anchor();
    for (double eps : eps_list) {
        ExpansionRow row;
        row.eps = eps;
        if (!(eps > 0.0) || eps >= probe.r_x) {
            row.precondition_ok = false;
            row.within_budget = false;
            row.lhs_error = row.budget = row.ratio =
                std::numeric_limits<double>::quiet_NaN();
            row.note = "eps outside (0, r_x), budget undefined";
            tab.rows.push_back(row);
            continue;
        }
        const ErrorBudget bud = error_budget(probe, p, s, eps);
        const double a = a_epsilon(probe.value, probe.anchor, eps, sch).value;
        row.lhs_error =
            std::abs(a - ux - fac * std::pow(eps, 2.0 * s) * tab.reference);
        row.budget = bud.bound_cone_average;
        row.ratio = detail::budget_ratio(row.lhs_error, row.budget);
        row.within_budget = row.lhs_error <= row.budget + tab.slack;
        if (!row.within_budget) {
            tab.all_within_budget = false;
            row.note = "defect exceeds budget plus slack";
        }
        tab.rows.push_back(row);
    }
    detail::attach_orders(tab);
    return tab;
}

// same ladder for the combined average against the coefficient
// (1-s) s (N+p-2) / (C |A| (N+p-2+2s)). Rows violating the step condition
// eps |D2u(x)| <= |grad u(x)| are skipped with a diagnostic instead of being
// scored. Also fits the leading coefficient across the ladder.
template <std::size_t N>
ExpansionTable verify_combined_expansion(
    const SmoothProbe<N>& probe, const Scheme<N>& sch, const std::vector<double>& eps_list,
    double l_reference = std::numeric_limits<double>::quiet_NaN(),
    int interior_samples = 4096) {
    const double s = sch.kernel.order;
    const double p = sch.cone.exponent;
    const double K = double(N) + p - 2.0;
    ExpansionTable tab;
    tab.reference = std::isnan(l_reference) ? l_sp(probe, sch) : l_reference;
    tab.slack = detail::quadrature_slack(probe);
    const double fac =
        (1.0 - s) * s * K / (sch.kernel.norm_const * sch.cone.cap_measure * (K + 2.0 * s));
    tab.expected_coefficient = fac * tab.reference;
    const double ux = probe.at_anchor();
    const double gn = norm(probe.grad_at_anchor());
    const double hessF = frobenius_norm(probe.hessian(probe.anchor));
    double sxx = 0.0, sxy = 0.0;
    for (double eps : eps_list) {
        ExpansionRow row;
        row.eps = eps;
        const bool in_range = eps > 0.0 && eps < probe.r_x;
        if (!in_range || eps * hessF > gn) {
            row.precondition_ok = false;
            row.within_budget = false;
            row.lhs_error = row.budget = row.ratio =
                std::numeric_limits<double>::quiet_NaN();
            row.note = in_range ? "step condition eps|D2u| <= |grad| fails, row skipped"
                                : "eps outside (0, r_x), budget undefined";
            tab.rows.push_back(row);
            continue;
        }
        const ErrorBudget bud = error_budget(probe, p, s, eps);
        const double e2s = std::pow(eps, 2.0 * s);
        const double abar =
            abar_epsilon(probe.value, probe.anchor, eps, sch, interior_samples);
        row.lhs_error = std::abs(abar - ux - fac * e2s * tab.reference);
        row.budget = bud.bound_combined_average;
        row.ratio = detail::budget_ratio(row.lhs_error, row.budget);
        row.within_budget = row.lhs_error <= row.budget + tab.slack;
        if (!row.within_budget) {
            tab.all_within_budget = false;
            row.note = "defect exceeds budget plus slack";
        }
        sxx += e2s * e2s;
        sxy += e2s * (abar - ux);
        tab.rows.push_back(row);
    }
    if (sxx > 0.0) tab.fitted_coefficient = sxy / sxx;
    detail::attach_orders(tab);
    return tab;
}

// residual of the exact midrange identity
//   (p-2)(sup + inf) + 2(N+2) mean - 2(N+p) u(x) = eps^2 |grad|^{2-p} Dp u(x)
// over balls B_eps, against the bound
//   4 eps^3 (p-2) |D2u(x)|^2 / |grad| + eps^2 (N+p-2) osc(D2u, eps).
// The table's reference field reports Dp u(x). No kernel enters; the
// identity is purely local.
template <std::size_t N>
ExpansionTable verify_midrange_identity(const SmoothProbe<N>& probe, double p,
                                        const std::vector<double>& eps_list,
                                        int interior_samples = 4096) {
    if (p < 2.0) throw std::domain_error("verify_midrange_identity: exponent below 2");
    const Vec<N> g = probe.grad_at_anchor();
    const double gn = norm(g);
    if (gn < 1e-14)
        throw std::domain_error("verify_midrange_identity: gradient vanishes at the anchor");
    const Mat<N> B = probe.hessian(probe.anchor);
    const double hessF = frobenius_norm(B);
    const Vec<N> ghat = normalized(g);
    const double along = dot(matvec(B, ghat), ghat);
    const double delta_p = std::pow(gn, p - 2.0) * (trace(B) + (p - 2.0) * along);

    ExpansionTable tab;
    tab.reference = delta_p;
    tab.slack = detail::quadrature_slack(probe);
    const double ux = probe.at_anchor();
    for (double eps : eps_list) {
        ExpansionRow row;
        row.eps = eps;
        if (!(eps > 0.0) || eps * hessF > gn) {
            row.precondition_ok = false;
            row.within_budget = false;
            row.lhs_error = row.budget = row.ratio =
                std::numeric_limits<double>::quiet_NaN();
            row.note = "step condition eps|D2u| <= |grad| fails, row skipped";
            tab.rows.push_back(row);
            continue;
        }
        const auto ext = ball_extrema<N>(probe.value, probe.anchor, eps, interior_samples);
        const double mean = ball_mean<N>(probe.value, probe.anchor, eps);
        row.lhs_error = std::abs((p - 2.0) * (ext.sup + ext.inf) +
                                 2.0 * (double(N) + 2.0) * mean -
                                 2.0 * (double(N) + p) * ux -
                                 eps * eps * std::pow(gn, 2.0 - p) * delta_p);
        const double osc = probe.hess_osc ? probe.hessian_oscillation(eps) : 4.0 * probe.c_x;
        row.budget = 4.0 * eps * eps * eps * (p - 2.0) * hessF * hessF / gn +
                     eps * eps * (double(N) + p - 2.0) * osc;
        row.ratio = detail::budget_ratio(row.lhs_error, row.budget);
        row.within_budget = row.lhs_error <= row.budget + tab.slack;
        if (!row.within_budget) {
            tab.all_within_budget = false;
            row.note = "residual exceeds budget plus slack";
        }
        tab.rows.push_back(row);
    }
    detail::attach_orders(tab);
    return tab;
}

}  // namespace fpgame
