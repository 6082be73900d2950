#pragma once

// cone averaging operators, the gradient-aligned second-difference integral,
// its rotation-based counterpart for vanishing gradients, and the combined
// average mixing in local ball statistics

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpgame/cone.hpp"
#include "fpgame/core.hpp"
#include "fpgame/field.hpp"
#include "fpgame/measure.hpp"
#include "fpgame/optimize.hpp"
#include "fpgame/sphere.hpp"

namespace fpgame {

// everything the continuum operators need: cone geometry, kernel, direction
// grid and quadrature orders
template <std::size_t N>
struct Scheme {
    ConeSpec cone;
    FractionalKernel kernel;
    SphereGrid<N> grid;
    int radial_order = 48;   // near rule
    int panel_order = 16;    // far rule, per radial panel
    double far_radius = 8.0; // dyadic panels out to here, then one tail panel
    int polar_order = 32;
    int azimuth_order = 32;  // N = 3 only
    bool polish = false;     // golden refinement of the best directions (N = 2)

    ConeQuadrature<N> far_rule(double a) const {
        return cone_quadrature_panels<N>(cone, kernel, dyadic_breaks(a, far_radius),
                                         panel_order, polar_order, azimuth_order);
    }
    ConeQuadrature<N> near_rule(double b) const {
        return cone_quadrature<N>(cone, kernel, 0.0, b, radial_order, polar_order,
                                  azimuth_order);
    }
};

template <std::size_t N>
Scheme<N> make_scheme(double p, double s, int grid_size = 512) {
    Scheme<N> sch;
    sch.cone = calibrate_cone(int(N), p);
    sch.kernel = make_kernel(int(N), s);
    sch.grid = direction_grid<N>(grid_size);
    return sch;
}

// normalized averages over eps-truncated cones; one base rule around e1 is
// shared by every direction through rotation
template <std::size_t N>
class ConeAverager {
  public:
    ConeAverager(const Scheme<N>& sch, double eps)
        : base_(sch.far_rule(eps)), mass_(base_.total_weight()) {}

    template <class F>
    double operator()(F&& u, const Vec<N>& x, const Vec<N>& dir) const {
        const Rotation<N> rot = rotation_between<N>(unit_vec<N>(0), dir);
        double acc = 0.0;
        for (std::size_t i = 0; i < base_.nodes.size(); ++i)
            acc += base_.weights[i] * u(x + rot.apply(base_.nodes[i]));
        return acc / mass_;
    }

    double mass() const { return mass_; }
    const ConeQuadrature<N>& rule() const { return base_; }

  private:
    ConeQuadrature<N> base_;
    double mass_;
};

template <std::size_t N>
struct DirectionalAverage {
    double value = 0.0;  // (sup + inf) / 2 over directions
    double sup_avg = 0.0, inf_avg = 0.0;
    Vec<N> sup_dir{}, inf_dir{};
    std::size_t sup_index = 0, inf_index = 0;  // grid indices before polish
};

// variant reusing a prebuilt averager; the experiment loops hit many x
template <std::size_t N, class F>
DirectionalAverage<N> a_epsilon_with(const ConeAverager<N>& avg, F&& u, const Vec<N>& x,
                                     const Scheme<N>& sch) {
    DirectionalAverage<N> out;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < sch.grid.size(); ++q) {
        const double v = avg(u, x, sch.grid[q]);
        if (v > hi) {
            hi = v;
            out.sup_index = q;
        }
        if (v < lo) {
            lo = v;
            out.inf_index = q;
        }
    }
    out.sup_dir = sch.grid[out.sup_index];
    out.inf_dir = sch.grid[out.inf_index];

    if constexpr (N == 2) {
        if (sch.polish) {
            const double step = 2.0 * pi / double(sch.grid.size());
            auto along = [&](double a) {
                return avg(u, x, Vec<2>{std::cos(a), std::sin(a)});
            };
            const double ah = golden_min([&](double a) { return -along(a); },
                                         step * double(out.sup_index) - step,
                                         step * double(out.sup_index) + step, 60);
            const double al =
                golden_min(along, step * double(out.inf_index) - step,
                           step * double(out.inf_index) + step, 60);
            const Vec<2> dh{std::cos(ah), std::sin(ah)}, dl{std::cos(al), std::sin(al)};
            const double vh = along(ah), vl = along(al);
            if (vh > hi) {
                hi = vh;
                out.sup_dir = dh;
            }
            if (vl < lo) {
                lo = vl;
                out.inf_dir = dl;
            }
        }
    }
    out.sup_avg = hi;
    out.inf_avg = lo;
    out.value = 0.5 * (hi + lo);
    return out;
}

template <std::size_t N, class F>
DirectionalAverage<N> a_epsilon(F&& u, const Vec<N>& x, double eps, const Scheme<N>& sch) {
    const ConeAverager<N> avg(sch, eps);
    return a_epsilon_with(avg, u, x, sch);
}

// unnormalized form: sup_y of the eps-truncated forward integral plus inf_y
// of the same; equals 2 mass (a_eps - u(x))
template <std::size_t N, class F>
double l_epsilon(F&& u, const Vec<N>& x, double eps, const Scheme<N>& sch) {
    const ConeAverager<N> avg(sch, eps);
    const auto da = a_epsilon_with(avg, u, x, sch);
    return 2.0 * avg.mass() * (da.value - u(x));
}

// full-cone second-difference integral along the gradient direction at the
// probe anchor, split at r_x: the near rule absorbs the quadratic vanishing
// of the symmetric bracket, the far rule the heavy tail
template <std::size_t N>
double l_sp(const SmoothProbe<N>& probe, const Scheme<N>& sch) {
    const Vec<N> g = probe.grad_at_anchor();
    if (norm(g) < 1e-14)
        throw std::domain_error("l_sp: gradient vanishes at the anchor, use l_tilde");
    const Vec<N> axis = normalized(g);
    const Vec<N>& x = probe.anchor;
    const double ux = probe.at_anchor();
    const Rotation<N> rot = rotation_between<N>(unit_vec<N>(0), axis);
    const auto near = sch.near_rule(probe.r_x);
    const auto far = sch.far_rule(probe.r_x);
    double acc = 0.0;
    for (const auto* rule : {&near, &far})
        for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
            const Vec<N> z = rot.apply(rule->nodes[i]);
            acc += rule->weights[i] * (probe.value(x + z) + probe.value(x - z) - 2.0 * ux);
        }
    return acc;
}

// the geometric fractional p-Laplacian at the probe anchor
template <std::size_t N>
double delta_ps(const SmoothProbe<N>& probe, const Scheme<N>& sch) {
    const double s = sch.kernel.order;
    return (2.0 - 2.0 * s) / sch.kernel.norm_const *
           (double(N) + sch.cone.exponent - 2.0) / sch.cone.cap_measure * l_sp(probe, sch);
}

template <std::size_t N>
struct TildeResult {
    double value = 0.0;
    Vec<N> y{}, y_tilde{};
    std::size_t y_index = 0, y_tilde_index = 0;
};

// sup over y, inf over y~ of the twisted full-cone integral. By rotation
// invariance of the measure it splits into a forward part F(y) and a
// backward part G(y~). Each part alone diverges at the tip in the continuum;
// a fixed-order rule assigns both the same large tip term, which cancels
// exactly in F + G when the two optima land on the same direction, which is
// how the principal-value pairing reappears. Keep split_radius equal to the
// probe's r_x when comparing against l_sp so the node sets coincide.
template <std::size_t N, class F>
TildeResult<N> l_tilde(F&& u, const Vec<N>& x, double split_radius, const Scheme<N>& sch) {
    const auto near = sch.near_rule(split_radius);
    const auto far = sch.far_rule(split_radius);
    const double ux = u(x);
    TildeResult<N> out;
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < sch.grid.size(); ++q) {
        const Rotation<N> rot = rotation_between<N>(unit_vec<N>(0), sch.grid[q]);
        double fwd = 0.0, bwd = 0.0;
        for (const auto* rule : {&near, &far})
            for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
                const Vec<N> z = rot.apply(rule->nodes[i]);
                fwd += rule->weights[i] * (u(x + z) - ux);
                bwd += rule->weights[i] * (u(x - z) - ux);
            }
        if (fwd > hi) {
            hi = fwd;
            out.y_index = q;
        }
        if (bwd < lo) {
            lo = bwd;
            out.y_tilde_index = q;
        }
    }
    out.y = sch.grid[out.y_index];
    out.y_tilde = sch.grid[out.y_tilde_index];
    out.value = hi + lo;
    return out;
}

// mean of u over B_eps(x): equal-area radial substitution times a periodic
// angular rule (exact for the low harmonics that dominate smooth data)
template <std::size_t N, class F>
double ball_mean(F&& u, const Vec<N>& x, double eps, int radial_order = 24,
                 int angular_order = 64) {
    static_assert(N == 2 || N == 3, "ball mean implemented for N = 2, 3");
    double acc = 0.0;
    if constexpr (N == 2) {
        const GaussRule g = gauss_legendre(radial_order, 0.0, 1.0);
        for (int i = 0; i < radial_order; ++i) {
            const double r = eps * std::sqrt(g.x[i]);
            double ring = 0.0;
            for (int k = 0; k < angular_order; ++k) {
                const double a = 2.0 * pi * (k + 0.5) / angular_order;
                ring += u(Vec<2>{x[0] + r * std::cos(a), x[1] + r * std::sin(a)});
            }
            acc += g.w[i] * ring / angular_order;
        }
    } else {
        const GaussRule g = gauss_legendre(radial_order, 0.0, 1.0);
        const GaussRule gc = gauss_legendre(radial_order, -1.0, 1.0);
        for (int i = 0; i < radial_order; ++i) {
            const double r = eps * std::cbrt(g.x[i]);
            double shell = 0.0;
            for (int j = 0; j < radial_order; ++j) {
                const double c = gc.x[j], sn = std::sqrt(std::max(0.0, 1.0 - c * c));
                double ring = 0.0;
                for (int k = 0; k < angular_order; ++k) {
                    const double a = 2.0 * pi * (k + 0.5) / angular_order;
                    ring += u(x + r * Vec<3>{c, sn * std::cos(a), sn * std::sin(a)});
                }
                shell += gc.w[j] * ring / angular_order;
            }
            acc += g.w[i] * shell / 2.0;
        }
    }
    return acc;
}

// convex mix of the cone average, the ball midrange and the ball mean; the
// weights make the local terms pick up the missing part of the operator as
// s approaches 1
template <std::size_t N, class F>
double abar_epsilon(F&& u, const Vec<N>& x, double eps, const Scheme<N>& sch,
                    int interior_samples = 4096) {
    const double s = sch.kernel.order;
    const double p = sch.cone.exponent;
    const double den = double(N) + p - 2.0 + 2.0 * s;
    const double w1 = (1.0 - s) * (double(N) + p - 2.0) / den;
    const double w2 = s * (p - 2.0) / den;
    const double w3 = s * (double(N) + 2.0) / den;
    const auto da = a_epsilon(u, x, eps, sch);
    const auto ext = ball_extrema<N>(u, x, eps, interior_samples);
    return w1 * da.value + w2 * 0.5 * (ext.sup + ext.inf) + w3 * ball_mean<N>(u, x, eps);
}

}  // namespace fpgame
