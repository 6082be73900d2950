#pragma once

// deterministic small-dimension optimizers: golden section on an interval,
// Nelder-Mead simplex, Halton low-discrepancy sampling, and the combined
// scan-plus-polish extrema search over a closed ball

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fpgame/core.hpp"
#include "fpgame/sphere.hpp"

namespace fpgame {

// radical-inverse sequence; bases 2,3,5 for the ball scans
inline double halton(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t n = i + 1; n > 0; n /= base) {
        f /= base;
        r += f * double(n % base);
    }
    return r;
}

// argmin of f on [a, b]; unimodal assumed but a flat or noisy f just lands
// somewhere in the bracket, which the scan callers tolerate
template <class F>
double golden_min(F&& f, double a, double b, int iters = 100) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iters && b - a > 1e-14 * (1.0 + std::abs(a)); ++k) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// standard Nelder-Mead (reflect 1, expand 2, contract 1/2, shrink 1/2) on a
// fixed iteration budget; deterministic given the start simplex
template <std::size_t D, class F>
Vec<D> nelder_mead(F&& f, std::array<Vec<D>, D + 1> simplex, int iters = 200) {
    std::array<double, D + 1> fv{};
    for (std::size_t i = 0; i <= D; ++i) fv[i] = f(simplex[i]);
    std::array<std::size_t, D + 1> idx{};
    for (std::size_t i = 0; i <= D; ++i) idx[i] = i;

    for (int it = 0; it < iters; ++it) {
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t lo = idx[0], hi = idx[D], nh = idx[D - 1];

        Vec<D> centroid = zero_vec<D>();
        for (std::size_t i = 0; i <= D; ++i)
            if (i != hi) centroid = centroid + simplex[i];
        centroid = (1.0 / D) * centroid;

        const Vec<D> refl = centroid + (centroid - simplex[hi]);
        const double fr = f(refl);
        if (fr < fv[lo]) {
            const Vec<D> exp_ = centroid + 2.0 * (centroid - simplex[hi]);
            const double fe = f(exp_);
            if (fe < fr) {
                simplex[hi] = exp_;
                fv[hi] = fe;
            } else {
                simplex[hi] = refl;
                fv[hi] = fr;
            }
        } else if (fr < fv[nh]) {
            simplex[hi] = refl;
            fv[hi] = fr;
        } else {
            const Vec<D> con = centroid + 0.5 * (simplex[hi] - centroid);
            const double fc = f(con);
            if (fc < fv[hi]) {
                simplex[hi] = con;
                fv[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= D; ++i) {
                    if (i == lo) continue;
                    simplex[i] = simplex[lo] + 0.5 * (simplex[i] - simplex[lo]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= D; ++i)
        if (fv[i] < fv[best]) best = i;
    return simplex[best];
}

template <std::size_t N>
struct BallExtrema {
    double sup = 0.0, inf = 0.0;
    Vec<N> arg_sup{}, arg_inf{};
};

namespace detail {

template <std::size_t N>
Vec<N> clamp_to_ball(const Vec<N>& x, const Vec<N>& c, double radius) {
    const Vec<N> d = x - c;
    const double r = norm(d);
    if (r <= radius) return x;
    return c + (radius / r) * d;
}

template <std::size_t N, class F>
Vec<N> polish_max(F&& u, const Vec<N>& c, double radius, const Vec<N>& start, int iters) {
    auto neg = [&](const Vec<N>& x) { return -u(clamp_to_ball<N>(x, c, radius)); };
    std::array<Vec<N>, N + 1> simplex;
    simplex[0] = start;
    for (std::size_t i = 0; i < N; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += 0.08 * radius;
    }
    return clamp_to_ball<N>(nelder_mead<N>(neg, simplex, iters), c, radius);
}

}  // namespace detail

// sup and inf of u over the closed ball B_radius(c): a boundary scan with a
// one-dimensional polish (smooth u with a gradient puts extrema there), an
// interior Halton scan, then a clamped Nelder-Mead from the best candidates
template <std::size_t N, class F>
BallExtrema<N> ball_extrema(F&& u, const Vec<N>& c, double radius, int interior_samples = 2048,
                            int polish_iters = 160) {
    static_assert(N == 2 || N == 3, "ball extrema implemented for N = 2, 3");
    BallExtrema<N> out;
    Vec<N> best_hi{}, best_lo{};
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    auto feed = [&](const Vec<N>& x) {
        const double v = u(x);
        if (v > hi) {
            hi = v;
            best_hi = x;
        }
        if (v < lo) {
            lo = v;
            best_lo = x;
        }
    };

    feed(c);
    if constexpr (N == 2) {
        const int mb = 512;
        int qh = 0, ql = 0;
        double bh = -std::numeric_limits<double>::infinity();
        double bl = std::numeric_limits<double>::infinity();
        for (int q = 0; q < mb; ++q) {
            const double a = 2.0 * pi * q / mb;
            const Vec<2> x{c[0] + radius * std::cos(a), c[1] + radius * std::sin(a)};
            const double v = u(x);
            if (v > bh) {
                bh = v;
                qh = q;
            }
            if (v < bl) {
                bl = v;
                ql = q;
            }
            feed(x);
        }
        auto bnd = [&](double a) {
            return u(Vec<2>{c[0] + radius * std::cos(a), c[1] + radius * std::sin(a)});
        };
        const double step = 2.0 * pi / mb;
        const double ah = golden_min([&](double a) { return -bnd(a); },
                                     2.0 * pi * qh / mb - step, 2.0 * pi * qh / mb + step);
        const double al = golden_min(bnd, 2.0 * pi * ql / mb - step, 2.0 * pi * ql / mb + step);
        feed(Vec<2>{c[0] + radius * std::cos(ah), c[1] + radius * std::sin(ah)});
        feed(Vec<2>{c[0] + radius * std::cos(al), c[1] + radius * std::sin(al)});
        for (int i = 0; i < interior_samples; ++i) {
            const double r = radius * std::sqrt(halton(i, 2));
            const double a = 2.0 * pi * halton(i, 3);
            feed(Vec<2>{c[0] + r * std::cos(a), c[1] + r * std::sin(a)});
        }
    } else {
        const SphereGrid<3> g = fibonacci_grid(512);
        for (const auto& d : g.dirs) feed(c + radius * d);
        for (int i = 0; i < interior_samples; ++i) {
            const double r = radius * std::cbrt(halton(i, 2));
            const double z = 1.0 - 2.0 * halton(i, 3);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = 2.0 * pi * halton(i, 5);
            feed(c + r * Vec<3>{z, rho * std::cos(phi), rho * std::sin(phi)});
        }
    }

    feed(detail::polish_max<N>(u, c, radius, best_hi, polish_iters));
    feed(detail::polish_max<N>([&](const Vec<N>& x) { return -u(x); }, c, radius, best_lo,
                               polish_iters));
    out.sup = hi;
    out.inf = lo;
    out.arg_sup = best_hi;
    out.arg_inf = best_lo;
    return out;
}

}  // namespace fpgame
