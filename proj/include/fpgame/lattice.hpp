#pragma once

// bounded domains, uniform lattices with multilinear interpolation, and the
// exterior-data catalog used by the Dirichlet solver and the game

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpgame/core.hpp"
#include "fpgame/field.hpp"

namespace fpgame {

template <std::size_t N>
struct Domain {
    std::string name;
    std::function<bool(const Vec<N>&)> inside;
    Vec<N> lo{};  // bounding box, strictly containing the closure of D
    Vec<N> hi{};
    double diameter = 0.0;

    bool operator()(const Vec<N>& x) const { return inside(x); }
};

template <std::size_t N>
Domain<N> ball_domain(double radius = 1.0) {
    Domain<N> d;
    d.name = "ball";
    d.inside = [radius](const Vec<N>& x) { return norm(x) < radius; };
    for (std::size_t i = 0; i < N; ++i) {
        d.lo[i] = -radius;
        d.hi[i] = radius;
    }
    d.diameter = 2.0 * radius;
    return d;
}

template <std::size_t N>
Domain<N> annulus_domain(double inner, double outer) {
    if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("annulus_domain: need 0 < inner < outer");
    Domain<N> d;
    d.name = "annulus";
    d.inside = [inner, outer](const Vec<N>& x) {
        const double r = norm(x);
        return inner < r && r < outer;
    };
    for (std::size_t i = 0; i < N; ++i) {
        d.lo[i] = -outer;
        d.hi[i] = outer;
    }
    d.diameter = 2.0 * outer;
    return d;
}

template <std::size_t N>
Domain<N> box_domain(double halfwidth) {
    Domain<N> d;
    d.name = "box";
    d.inside = [halfwidth](const Vec<N>& x) {
        for (std::size_t i = 0; i < N; ++i)
            if (std::abs(x[i]) >= halfwidth) return false;
        return true;
    };
    for (std::size_t i = 0; i < N; ++i) {
        d.lo[i] = -halfwidth;
        d.hi[i] = halfwidth;
    }
    d.diameter = 2.0 * halfwidth * std::sqrt(double(N));
    return d;
}

// unit-ball interior minus a solid cone notched into it: the apex sits on the
// sphere at radius*e1 and the cone opens inward with the given half-angle.
// The apex is a boundary point satisfying the external cone condition by
// construction.
template <std::size_t N>
Domain<N> notched_ball_domain(double radius = 1.0, double notch_angle = 0.5) {
    Domain<N> d;
    d.name = "ball-with-notch";
    const double ca = std::cos(notch_angle);
    d.inside = [radius, ca](const Vec<N>& x) {
        if (norm(x) >= radius) return false;
        Vec<N> v = x;
        v[0] -= radius;  // from the apex
        const double nv = norm(v);
        if (nv == 0.0) return false;
        return -v[0] < ca * nv;  // outside the cone around -e1
    };
    for (std::size_t i = 0; i < N; ++i) {
        d.lo[i] = -radius;
        d.hi[i] = radius;
    }
    d.diameter = 2.0 * radius;
    return d;
}

// exterior data: a globally evaluable function together with certified
// bounds over R^N \ D; osc() feeds tolerances and the contraction bound
template <std::size_t N>
struct BoundaryDatum {
    std::string name;
    std::function<double(const Vec<N>&)> eval;
    double lo = 0.0;
    double hi = 0.0;

    double operator()(const Vec<N>& x) const { return eval(x); }
    double osc() const { return hi - lo; }
};

template <std::size_t N>
BoundaryDatum<N> constant_boundary(double c) {
    return {"constant", [c](const Vec<N>&) { return c; }, c, c};
}

// <slope, x> inside the clamp radius, radially frozen past it; affine where
// it matters, bounded where the tail quadrature needs it
template <std::size_t N>
BoundaryDatum<N> clamped_affine_boundary(const Vec<N>& slope, double offset = 0.0,
                                         double clamp_radius = 4.0) {
    const double reach = norm(slope) * clamp_radius;
    BoundaryDatum<N> b;
    b.name = "clamped-affine";
    b.eval = [slope, offset, clamp_radius](const Vec<N>& x) {
        const double r = norm(x);
        const double scale = r > clamp_radius ? clamp_radius / r : 1.0;
        return scale * dot(slope, x) + offset;
    };
    b.lo = offset - reach;
    b.hi = offset + reach;
    return b;
}

// x1 / max(|x|^2, 1): harmonic away from the unit ball, bounded by 1
template <std::size_t N>
BoundaryDatum<N> harmonic_tail_boundary() {
    BoundaryDatum<N> b;
    b.name = "harmonic-tail";
    b.eval = [](const Vec<N>& x) {
        const double r2 = dot(x, x);
        return x[0] / std::max(r2, 1.0);
    };
    b.lo = -1.0;
    b.hi = 1.0;
    return b;
}

template <std::size_t N>
BoundaryDatum<N> radial_power_boundary(double t) {
    BoundaryDatum<N> b;
    b.name = "radial-power";
    b.eval = [t](const Vec<N>& x) { return radial_power_value<N>(x, t); };
    b.lo = 0.0;
    b.hi = std::pow(2.0, t);
    return b;
}

// uniform lattice over an axis-aligned box; spacing must tile the box exactly
template <std::size_t N>
struct Lattice {
    Vec<N> origin{};
    double h = 1.0;
    std::array<std::size_t, N> shape{};  // nodes per axis

    std::size_t size() const {
        std::size_t n = 1;
        for (std::size_t i = 0; i < N; ++i) n *= shape[i];
        return n;
    }

    std::size_t flat(const std::array<std::size_t, N>& c) const {
        std::size_t idx = 0;
        for (std::size_t i = N; i-- > 0;) idx = idx * shape[i] + c[i];
        return idx;  // axis 0 fastest
    }

    Vec<N> point(std::size_t idx) const {
        Vec<N> x;
        for (std::size_t i = 0; i < N; ++i) {
            x[i] = origin[i] + double(idx % shape[i]) * h;
            idx /= shape[i];
        }
        return x;
    }

    bool contains(const Vec<N>& x) const {
        for (std::size_t i = 0; i < N; ++i) {
            const double t = (x[i] - origin[i]) / h;
            if (t < 0.0 || t > double(shape[i] - 1)) return false;
        }
        return true;
    }

    // base corner + multilinear coefficients of the cell holding x; x must be
    // inside the box (cells are clamped at the far faces)
    void cell(const Vec<N>& x, std::size_t& base, std::array<double, (1u << N)>& w) const {
        std::array<std::size_t, N> c;
        Vec<N> f;
        for (std::size_t i = 0; i < N; ++i) {
            double t = (x[i] - origin[i]) / h;
            t = std::min(std::max(t, 0.0), double(shape[i] - 1));
            std::size_t ci = std::min(std::size_t(t), shape[i] - 2);
            c[i] = ci;
            f[i] = t - double(ci);
        }
        base = flat(c);
        for (std::size_t m = 0; m < (1u << N); ++m) {
            double cw = 1.0;
            for (std::size_t i = 0; i < N; ++i)
                cw *= (m >> i) & 1u ? f[i] : 1.0 - f[i];
            w[m] = cw;
        }
    }

    // flat-index offsets of the 2^N cell corners
    std::array<std::size_t, (1u << N)> corner_offsets() const {
        std::array<std::size_t, (1u << N)> off;
        std::array<std::size_t, N> stride;
        std::size_t s = 1;
        for (std::size_t i = 0; i < N; ++i) {
            stride[i] = s;
            s *= shape[i];
        }
        for (std::size_t m = 0; m < (1u << N); ++m) {
            std::size_t o = 0;
            for (std::size_t i = 0; i < N; ++i)
                if ((m >> i) & 1u) o += stride[i];
            off[m] = o;
        }
        return off;
    }
};

template <std::size_t N>
Lattice<N> make_lattice(const Vec<N>& lo, const Vec<N>& hi, double h) {
    Lattice<N> g;
    g.origin = lo;
    g.h = h;
    for (std::size_t i = 0; i < N; ++i) {
        const double span = (hi[i] - lo[i]) / h;
        const double r = std::round(span);
        if (std::abs(span - r) > 1e-9 * std::max(1.0, std::abs(span)))
            throw std::invalid_argument("make_lattice: spacing does not tile the box");
        g.shape[i] = std::size_t(r) + 1;
        if (g.shape[i] < 2) throw std::invalid_argument("make_lattice: degenerate axis");
    }
    return g;
}

// nodal values over a lattice with multilinear interpolation
template <std::size_t N>
struct LatticeField {
    Lattice<N> grid;
    std::vector<double> values;

    double value_at(const Vec<N>& x) const {
        std::size_t base;
        std::array<double, (1u << N)> w;
        grid.cell(x, base, w);
        const auto off = grid.corner_offsets();
        double v = 0.0;
        for (std::size_t m = 0; m < (1u << N); ++m) v += w[m] * values[base + off[m]];
        return v;
    }
};

}  // namespace fpgame
