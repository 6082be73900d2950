#pragma once

// barrier family f_t(x) = min{2^t, |x|^{-t}} and its supersolution estimates:
// the feasibility threshold t0, strict positivity of L_{s,p}[f_t] outside the
// unit ball, and the discrete A_eps counterpart on [1, R].

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgame/dpp.hpp"
#include "fpgame/field.hpp"
#include "fpgame/gauss.hpp"
#include "fpgame/operators.hpp"

namespace fpgame {

struct BarrierParams {
    double t = 0.0;         // exponent in use (>= t0)
    double t0 = 0.0;        // feasibility threshold found on the search grid
    double r_window = 0.0;  // admissible auxiliary radius, r < 1/2
    double margin_growth = 0.0;  // slack in the growth condition at t0
    double window_width = 0.0;   // length of the admissible r^2 interval
};

// growth condition: (t+2)/2 * (p-1)/(N+p-2) >= 2
inline double barrier_growth_margin(double t, double p, int dim) {
    return 0.5 * (t + 2.0) * (p - 1.0) / (double(dim) + p - 2.0) - 2.0;
}

// admissible r^2 interval [lo, hi]; feasible when lo <= hi and lo < 1/4
inline std::pair<double, double> barrier_r2_window(double t, double p, double s, int dim) {
    const double lo =
        16.0 * (2.0 - 2.0 * s) * (double(dim) + p - 2.0) / (s * (p - 1.0) * t * (t + 2.0));
    const double hi = (2.0 - s) / ((2.0 - 2.0 * s) * (t + 4.0));
    return {lo, hi};
}

// smallest t on the half-integer grid satisfying both conditions with a
// common r < 1/2
inline BarrierParams compute_t0(const ConeSpec& spec, const FractionalKernel& kernel,
                                double t_cap = 64.0) {
    const double p = spec.exponent;
    const double s = kernel.order;
    for (double t = 0.5; t <= t_cap + 1e-9; t += 0.5) {
        if (barrier_growth_margin(t, p, spec.dim) < 0.0) continue;
        const auto [lo, hi] = barrier_r2_window(t, p, s, spec.dim);
        const double top = std::min(hi, 0.25 * (1.0 - 1e-12));
        if (lo > top) continue;
        BarrierParams bp;
        bp.t0 = t;
        bp.t = t;
        bp.r_window = std::sqrt(0.5 * (lo + top));
        bp.margin_growth = barrier_growth_margin(t, p, spec.dim);
        bp.window_width = top - lo;
        return bp;
    }
    throw std::runtime_error("compute_t0: no feasible t up to the search cap");
}

// ---------------------------------------------------------------------------
// L_{s,p}[f_t] at x = R e1, R >= 1. By rotation invariance the cone axis is
// -e1 (the gradient direction). The plateau ball B_{1/2} subtends the angle
// asin(1/(2R)) on the forward rays, so the quadrature uses polar panels
// aligned with that silhouette and radial panels bracketing the shell
// distances R -+ 1/2 where the integrand loses smoothness.

namespace detail {

// paired second difference along the direction at polar angle phi from the
// inward axis; even in phi, so integration runs over [0, alpha]
template <std::size_t N>
double barrier_pair(double t, double R, double r, double cphi, double sphi) {
    Vec<N> fwd = zero_vec<N>();
    fwd[0] = R - r * cphi;
    fwd[1] = r * sphi;
    Vec<N> bwd = zero_vec<N>();
    bwd[0] = R + r * cphi;
    bwd[1] = -r * sphi;
    return radial_power_value<N>(fwd, t) + radial_power_value<N>(bwd, t) -
           2.0 * std::pow(R, -t);
}

inline std::vector<double> barrier_radial_breaks(double R, double r_in) {
    std::vector<double> b{r_in};
    for (double c : {0.5 * (r_in + R - 1.0), R - 1.0, R - 0.75, R - 0.6, R - 0.5, R - 0.4,
                     R - 0.3, R - 0.2, R - 0.1, R, R + 0.1, R + 0.2, R + 0.3, R + 0.4, R + 0.5,
                     R + 0.6, R + 0.75, R + 1.0, 1.5 * R, 2.0 * R, 3.0 * R, 4.0 * R, 6.0 * R,
                     8.0 * R})
        if (c > r_in * (1.0 + 1e-12)) b.push_back(c);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double u, double v) { return v - u < 1e-9 * v; }),
            b.end());
    return b;
}

inline std::vector<double> barrier_polar_breaks(double R, double alpha) {
    const double phi_star = std::asin(std::min(1.0, 0.5 / R));
    std::vector<double> b{0.0};
    for (double f : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0}) {
        const double a = f * phi_star;
        if (a < alpha * (1.0 - 1e-12)) b.push_back(a);
    }
    b.push_back(alpha);
    return b;
}

}  // namespace detail

// the full pair-difference integral over the inward cone; N = 2 uses the
// mirror symmetry, N = 3 the axial symmetry, so one polar loop serves both
template <std::size_t N>
double barrier_lsp(double t, double R, const ConeSpec& spec, const FractionalKernel& kernel,
                   int radial_order = 16, int polar_order = 12) {
    static_assert(N == 2 || N == 3);
    if (R < 1.0) throw std::invalid_argument("barrier_lsp: need R >= 1 (off the plateau)");
    const double s = kernel.order;
    const double C = kernel.norm_const;
    const double alpha = spec.aperture;
    const double r_in = 0.5 * (R - 0.5) > 0.05 ? 0.5 * (R - 0.5) : 0.05;

    // polar rule: feature-aligned panels, jacobian 2 (mirror) or 2 pi sin
    std::vector<double> phic, phis, phiw;
    {
        const auto pb = detail::barrier_polar_breaks(R, alpha);
        for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
            const GaussRule g = gauss_legendre(polar_order, pb[j], pb[j + 1]);
            for (std::size_t i = 0; i < g.x.size(); ++i) {
                phic.push_back(std::cos(g.x[i]));
                phis.push_back(std::sin(g.x[i]));
                phiw.push_back(g.w[i] * (N == 2 ? 2.0 : 2.0 * pi * std::sin(g.x[i])));
            }
        }
    }
    auto shell = [&](double r) {
        double a = 0.0;
        for (std::size_t j = 0; j < phiw.size(); ++j)
            a += phiw[j] * detail::barrier_pair<N>(t, R, r, phic[j], phis[j]);
        return a;
    };

    double acc = 0.0;

    // tip [0, r_in]: with v = r^{2-2s}, r^{-1-2s} dr = r^{-2} dv / (2-2s);
    // the pairing is O(r^2) so the transformed integrand stays bounded
    {
        const GaussRule g = gauss_legendre(radial_order, 0.0, std::pow(r_in, 2.0 - 2.0 * s));
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double r = std::pow(g.x[i], 1.0 / (2.0 - 2.0 * s));
            acc += g.w[i] / ((2.0 - 2.0 * s) * r * r) * shell(r);
        }
    }

    // feature panels bracketing the plateau shell
    const auto rb = detail::barrier_radial_breaks(R, r_in);
    for (std::size_t k = 0; k + 1 < rb.size(); ++k) {
        const GaussRule g = gauss_legendre(radial_order, rb[k], rb[k + 1]);
        for (std::size_t i = 0; i < g.x.size(); ++i)
            acc += g.w[i] * std::pow(g.x[i], -1.0 - 2.0 * s) * shell(g.x[i]);
    }

    // tail: with v = r^{-2s}, r^{-1-2s} dr = -dv / (2s)
    {
        const GaussRule g = gauss_legendre(radial_order, 0.0, std::pow(rb.back(), -2.0 * s));
        for (std::size_t i = 0; i < g.x.size(); ++i)
            acc += g.w[i] / (2.0 * s) * shell(std::pow(g.x[i], -1.0 / (2.0 * s)));
    }
    return C * acc;
}

struct BarrierPositivityRow {
    double radius = 0.0;
    double lsp = 0.0;     // L_{s,p}[f_t](radius * e1)
    double scaled = 0.0;  // radius^{2s+t} * lsp
};

struct BarrierPositivityReport {
    std::vector<BarrierPositivityRow> rows;
    double min_scaled = 0.0;
    double max_scaled = 0.0;
};

template <std::size_t N>
BarrierPositivityReport barrier_positivity(double t, const std::vector<double>& radii,
                                           const ConeSpec& spec,
                                           const FractionalKernel& kernel) {
    BarrierPositivityReport rep;
    rep.min_scaled = std::numeric_limits<double>::infinity();
    rep.max_scaled = -std::numeric_limits<double>::infinity();
    for (double R : radii) {
        BarrierPositivityRow row;
        row.radius = R;
        row.lsp = barrier_lsp<N>(t, R, spec, kernel);
        row.scaled = std::pow(R, 2.0 * kernel.order + t) * row.lsp;
        rep.min_scaled = std::min(rep.min_scaled, row.scaled);
        rep.max_scaled = std::max(rep.max_scaled, row.scaled);
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// discrete counterpart: A_eps f_t - f_t >= c eps^{2s} R^{-2s-t} on [1, R]

struct SupersolutionRow {
    double radius = 0.0;
    double eps = 0.0;
    double gain = 0.0;       // A_eps f_t - f_t
    double unit = 0.0;       // eps^{2s} R^{-2s-t}
    double c_fitted = 0.0;   // gain / unit
    bool holds = false;      // gain strictly positive
};

struct SupersolutionReport {
    std::vector<SupersolutionRow> rows;
    double c_min = 0.0;  // fitted constant: min of gain/unit over the table
    bool all_hold = false;
    std::vector<double> violations;  // eps values with some negative gain
};

template <std::size_t N>
SupersolutionReport barrier_discrete_supersolution(double t, double R,
                                                   const std::vector<double>& eps_list,
                                                   const Scheme<N>& sch,
                                                   const std::vector<double>& radii) {
    SupersolutionReport rep;
    rep.c_min = std::numeric_limits<double>::infinity();
    rep.all_hold = true;
    auto ft = [t](const Vec<N>& y) { return radial_power_value<N>(y, t); };
    for (double eps : eps_list) {
        const ConeAverager<N> avg(sch, eps);
        bool violated = false;
        for (double radius : radii) {
            if (radius < 1.0) continue;  // the claim starts at the unit sphere
            SupersolutionRow row;
            row.radius = radius;
            row.eps = eps;
            const Vec<N> x = radius * unit_vec<N>(0);
            row.gain = a_epsilon_with(avg, ft, x, sch).value - radial_power_value<N>(x, t);
            row.unit = std::pow(eps, 2.0 * sch.kernel.order) *
                       std::pow(R, -2.0 * sch.kernel.order - t);
            row.c_fitted = row.gain / row.unit;
            row.holds = row.gain > 0.0;
            rep.c_min = std::min(rep.c_min, row.c_fitted);
            rep.all_hold = rep.all_hold && row.holds;
            violated = violated || !row.holds;
            rep.rows.push_back(row);
        }
        if (violated) rep.violations.push_back(eps);
    }
    return rep;
}

// Prop 8.4(i) in discrete form: the fixed point on the annulus with datum f_t
// dominates f_t on interior lattice nodes; returns the worst signed excess
template <std::size_t N>
double barrier_domination_gap(double t, double outer, double eps, double h,
                              const Scheme<N>& sch) {
    DirichletProblem<N> prob{annulus_domain<N>(1.0, outer), radial_power_boundary<N>(t), eps,
                             sch};
    const auto sol = solve_dpp(prob, h);
    double worst = std::numeric_limits<double>::infinity();
    for (auto i : sol.interior) {
        const Vec<N> x = sol.grid.point(i);
        worst = std::min(worst, sol.values[i] - radial_power_value<N>(x, t));
    }
    return worst;
}

}  // namespace fpgame
