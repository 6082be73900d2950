#pragma once

// direction grids on the unit sphere for the sup/inf searches

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpgame/core.hpp"

namespace fpgame {

template <std::size_t N>
struct SphereGrid {
    std::vector<Vec<N>> dirs;

    std::size_t size() const { return dirs.size(); }
    const Vec<N>& operator[](std::size_t i) const { return dirs[i]; }
};

// m even, angles 2 pi q / m starting at zero: contains e1 and is closed
// under negation (q -> q + m/2), which the affine-cancellation tests rely on
inline SphereGrid<2> circle_grid(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("circle_grid: need even m >= 2");
    SphereGrid<2> g;
    g.dirs.reserve(m);
    for (int q = 0; q < m; ++q) {
        const double a = 2.0 * pi * q / m;
        g.dirs.push_back(Vec<2>{std::cos(a), std::sin(a)});
    }
    return g;
}

// spherical Fibonacci generators plus exact antipodes (2k points total),
// so negation maps the grid onto itself here too
inline SphereGrid<3> fibonacci_grid(int k) {
    if (k < 1) throw std::invalid_argument("fibonacci_grid: need k >= 1");
    SphereGrid<3> g;
    g.dirs.reserve(2 * k);
    const double ga = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < k; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / (2.0 * k);  // stay off the poles
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = ga * i;
        const Vec<3> d{z, r * std::cos(phi), r * std::sin(phi)};
        g.dirs.push_back(d);
        g.dirs.push_back(-d);
    }
    return g;
}

template <std::size_t N>
SphereGrid<N> direction_grid(int m) {
    static_assert(N == 2 || N == 3, "direction grids implemented for N = 2, 3");
    if constexpr (N == 2)
        return circle_grid(m);
    else
        return fibonacci_grid((m + 1) / 2);
}

// grid direction closest to v (largest inner product); ties to lowest index
template <std::size_t N>
std::size_t nearest_index(const SphereGrid<N>& g, const Vec<N>& v) {
    std::size_t best = 0;
    double bd = dot(g.dirs[0], v);
    for (std::size_t i = 1; i < g.dirs.size(); ++i) {
        const double d = dot(g.dirs[i], v);
        if (d > bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

}  // namespace fpgame
