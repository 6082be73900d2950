#pragma once
// The singular measure dmu = C(N,s) |z|^{-N-2s} dz: normalizing constant,
// truncated-cone masses, deterministic product quadrature over truncated
// cones, and exact inverse-CDF sampling on the unit-truncated cone.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpgame/cone.hpp"
#include "fpgame/core.hpp"
#include "fpgame/gauss.hpp"
#include "fpgame/rng.hpp"

namespace fpgame {

// C(N,s) = 4^s s Gamma(N/2 + s) / (pi^{N/2} Gamma(1 - s)).
// Equivalently the reciprocal of int (1 - cos<z,e1>) |z|^{-N-2s} dz,
// which the tests cross-check by Monte Carlo.
inline double normalizing_constant(int N, double s) {
    if (!(N >= 2)) throw std::invalid_argument("normalizing_constant: need N >= 2");
    if (!(s > 0.5 && s < 1.0)) throw std::domain_error("normalizing_constant: need s in (1/2, 1)");
    return std::pow(4.0, s) * s * std::tgamma(0.5 * N + s) /
           (std::pow(pi, 0.5 * N) * std::tgamma(1.0 - s));
}

struct FractionalKernel {
    int dim = 2;
    double order = 0.75;      // s
    double norm_const = 0.0;  // C(N,s)
};

inline FractionalKernel make_kernel(int N, double s) {
    return {N, s, normalizing_constant(N, s)};
}

// mu(T^{a,b}) = C(N,s) |A_p| (a^{-2s} - b^{-2s}) / (2s), with b^{-2s} = 0
// for b = inf. Unbounded near the tip: a = 0 has infinite mass.
inline double truncated_cone_mass(const ConeSpec& spec, const FractionalKernel& kernel, double a,
                                  double b = std::numeric_limits<double>::infinity()) {
    if (!(a > 0.0)) throw std::domain_error("truncated_cone_mass: infinite mass for a <= 0");
    if (!(b >= a)) throw std::invalid_argument("truncated_cone_mass: need a <= b");
    const double s = kernel.order;
    const double tb = std::isinf(b) ? 0.0 : std::pow(b, -2.0 * s);
    return kernel.norm_const * spec.cap_measure * (std::pow(a, -2.0 * s) - tb) / (2.0 * s);
}

// Product quadrature nodes z_i with weights w_i such that
// int_{T^{a,b}(e1)} f dmu ~ sum_i w_i f(z_i).
//
// Far rule (a > 0): radial substitution t = r^{-2s} flattens the radial
// density, so Gauss-Legendre on (b^{-2s}, a^{-2s}) is exact for radial
// constants; b = inf needs no truncation. Weights sum to mu(T^{a,b}).
//
// Near rule (a = 0, b finite): the mass diverges but second-moment
// integrands do not. Substituting t = r^{2-2s} in int (f/r^2) r^{1-2s} dr
// gives weights exact for f with f/|z|^2 radially constant (in particular
// all quadratics <z,v>^2). Weight sums then have no meaning as a mass.
template <std::size_t N>
struct ConeQuadrature {
    std::vector<Vec<N>> nodes;
    std::vector<double> weights;
    double a = 0.0, b = 0.0;
    int radial_order = 0, polar_order = 0, azimuth_order = 0;
    bool near_field = false;

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }

    double total_weight() const {
        double acc = 0.0;
        for (double w : weights) acc += w;
        return acc;
    }
};

namespace detail {

// Unit directions on the cap around e1 with weights summing to |A_p|.
// N=2: Gauss on the polar angle, mirrored across the axis. N=3: Gauss in
// cos(theta) (flattens the sin weight) times a uniform periodic azimuth.
template <std::size_t N>
std::vector<std::pair<Vec<N>, double>> cap_rule(const ConeSpec& spec, int polar_order,
                                                int azimuth_order) {
    static_assert(N == 2 || N == 3, "cap quadrature implemented for N = 2, 3");
    std::vector<std::pair<Vec<N>, double>> out;
    if constexpr (N == 2) {
        const GaussRule g = gauss_legendre(polar_order, 0.0, spec.aperture);
        out.reserve(2 * polar_order);
        for (int j = 0; j < polar_order; ++j) {
            const double c = std::cos(g.x[j]), s = std::sin(g.x[j]);
            out.push_back({Vec<2>{c, s}, g.w[j]});
            out.push_back({Vec<2>{c, -s}, g.w[j]});
        }
    } else {
        const GaussRule g = gauss_legendre(polar_order, std::cos(spec.aperture), 1.0);
        out.reserve(polar_order * azimuth_order);
        const double wphi = 2.0 * pi / azimuth_order;
        for (int j = 0; j < polar_order; ++j) {
            const double c = g.x[j], s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int k = 0; k < azimuth_order; ++k) {
                const double phi = wphi * (k + 0.5);
                out.push_back({Vec<3>{c, s * std::cos(phi), s * std::sin(phi)}, g.w[j] * wphi});
            }
        }
    }
    return out;
}

}  // namespace detail

template <std::size_t N>
inline ConeQuadrature<N> cone_quadrature(const ConeSpec& spec, const FractionalKernel& kernel,
                                         double a, double b, int radial_order = 48,
                                         int polar_order = 32, int azimuth_order = 32) {
    if (spec.dim != int(N) || kernel.dim != int(N))
        throw std::invalid_argument("cone_quadrature: dimension mismatch");
    if (!(a >= 0.0 && b > a)) throw std::invalid_argument("cone_quadrature: need 0 <= a < b");
    const double s = kernel.order;
    ConeQuadrature<N> q;
    q.a = a;
    q.b = b;
    q.radial_order = radial_order;
    q.polar_order = polar_order;
    q.azimuth_order = azimuth_order;
    q.near_field = (a == 0.0);

    // radial nodes r_i with weights v_i: far rule approximates
    // int f(r) r^{-1-2s} dr by sum v_i f(r_i); near rule approximates it
    // by sum v_i f(r_i) / r_i^2 with the 1/r^2 folded into v_i.
    std::vector<double> rad_r(radial_order), rad_v(radial_order);
    if (!q.near_field) {
        const double ta = std::pow(a, -2.0 * s);
        const double tb = std::isinf(b) ? 0.0 : std::pow(b, -2.0 * s);
        const GaussRule g = gauss_legendre(radial_order, tb, ta);
        for (int i = 0; i < radial_order; ++i) {
            rad_r[i] = std::pow(g.x[i], -1.0 / (2.0 * s));
            rad_v[i] = g.w[i] / (2.0 * s);
        }
    } else {
        if (std::isinf(b)) throw std::domain_error("cone_quadrature: infinite mass for a = 0, b = inf");
        const GaussRule g = gauss_legendre(radial_order, 0.0, std::pow(b, 2.0 - 2.0 * s));
        for (int i = 0; i < radial_order; ++i) {
            rad_r[i] = std::pow(g.x[i], 1.0 / (2.0 - 2.0 * s));
            rad_v[i] = g.w[i] / ((2.0 - 2.0 * s) * rad_r[i] * rad_r[i]);
        }
    }

    const auto cap = detail::cap_rule<N>(spec, polar_order, azimuth_order);
    q.nodes.reserve(rad_r.size() * cap.size());
    q.weights.reserve(rad_r.size() * cap.size());
    for (int i = 0; i < radial_order; ++i)
        for (const auto& [theta, wtheta] : cap) {
            q.nodes.push_back(rad_r[i] * theta);
            q.weights.push_back(kernel.norm_const * rad_v[i] * wtheta);
        }
    return q;
}

// Same rule moved to the cone around axis y = R e1.
template <std::size_t N>
inline ConeQuadrature<N> rotated(ConeQuadrature<N> q, const Rotation<N>& rot) {
    for (auto& z : q.nodes) z = rot.apply(z);
    return q;
}

// Dyadic radial breakpoints a, 2a, 4a, ... capped at far_radius; a single
// tail panel past the last break is implied by the panel rule below.
inline std::vector<double> dyadic_breaks(double a, double far_radius) {
    if (!(a > 0.0)) throw std::invalid_argument("dyadic_breaks: need a > 0");
    std::vector<double> b{a};
    while (b.back() < far_radius) b.push_back(std::min(2.0 * b.back(), far_radius));
    return b;
}

// Composite far rule: Gauss in t = r^{-2s} on every panel (r_k, r_{k+1}),
// plus the tail panel (r_K, inf). A single Gauss rule from a places most
// radial nodes within a few multiples of a; the panels keep resolution at
// every dyadic scale, which data with features far from the tip need.
// Weights still sum to the exact truncated-cone mass.
template <std::size_t N>
inline ConeQuadrature<N> cone_quadrature_panels(const ConeSpec& spec,
                                                const FractionalKernel& kernel,
                                                const std::vector<double>& breaks,
                                                int panel_order = 16, int polar_order = 32,
                                                int azimuth_order = 32) {
    if (spec.dim != int(N) || kernel.dim != int(N))
        throw std::invalid_argument("cone_quadrature_panels: dimension mismatch");
    if (breaks.empty() || !(breaks.front() > 0.0))
        throw std::invalid_argument("cone_quadrature_panels: need ascending breaks, first > 0");
    const double s = kernel.order;
    ConeQuadrature<N> q;
    q.a = breaks.front();
    q.b = std::numeric_limits<double>::infinity();
    q.radial_order = panel_order * int(breaks.size());
    q.polar_order = polar_order;
    q.azimuth_order = azimuth_order;
    q.near_field = false;

    std::vector<double> rad_r, rad_v;
    rad_r.reserve(q.radial_order);
    rad_v.reserve(q.radial_order);
    auto add_panel = [&](double t_lo, double t_hi) {
        const GaussRule g = gauss_legendre(panel_order, t_lo, t_hi);
        for (int i = 0; i < panel_order; ++i) {
            rad_r.push_back(std::pow(g.x[i], -1.0 / (2.0 * s)));
            rad_v.push_back(g.w[i] / (2.0 * s));
        }
    };
    add_panel(0.0, std::pow(breaks.back(), -2.0 * s));  // tail to infinity
    for (std::size_t k = breaks.size() - 1; k > 0; --k) {
        if (!(breaks[k] > breaks[k - 1]))
            throw std::invalid_argument("cone_quadrature_panels: breaks not ascending");
        add_panel(std::pow(breaks[k], -2.0 * s), std::pow(breaks[k - 1], -2.0 * s));
    }

    const auto cap = detail::cap_rule<N>(spec, polar_order, azimuth_order);
    q.nodes.reserve(rad_r.size() * cap.size());
    q.weights.reserve(rad_r.size() * cap.size());
    for (std::size_t i = 0; i < rad_r.size(); ++i)
        for (const auto& [theta, wtheta] : cap) {
            q.nodes.push_back(rad_r[i] * theta);
            q.weights.push_back(kernel.norm_const * rad_v[i] * wtheta);
        }
    return q;
}

// One draw from mu restricted to T^{1,inf}(e1), normalized. Radius by
// inverse CDF of the density ~ r^{-1-2s} on [1, inf); direction uniform
// w.r.t. surface measure on the cap (polar angle via inverse CDF of
// sin^{N-2}, azimuth uniform). Draw order: radius, polar, azimuth.
template <std::size_t N>
inline Vec<N> sample_increment(Rng& rng, const ConeSpec& spec, const FractionalKernel& kernel) {
    static_assert(N == 2 || N == 3, "sampling implemented for N = 2, 3");
    const double r = std::pow(rng.uniform_pos(), -1.0 / (2.0 * kernel.order));
    if constexpr (N == 2) {
        const double psi = rng.uniform(-spec.aperture, spec.aperture);
        return Vec<2>{r * std::cos(psi), r * std::sin(psi)};
    } else {
        const double c = 1.0 - rng.uniform() * (1.0 - std::cos(spec.aperture));
        const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = rng.uniform(0.0, 2.0 * pi);
        return Vec<3>{r * c, r * sn * std::cos(phi), r * sn * std::sin(phi)};
    }
}

}  // namespace fpgame
