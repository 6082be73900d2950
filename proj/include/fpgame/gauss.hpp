#pragma once

// Gauss-Legendre rules of arbitrary order, computed once via Newton iteration
// on the Legendre polynomial (Golub-Welsch is overkill at these orders).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace fpgame {

struct GaussRule {
    std::vector<double> x;  // nodes on (-1, 1)
    std::vector<double> w;  // weights, sum to 2
};

// n-point rule on (-1,1); nodes accurate to ~1 ulp for n up to a few hundred
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order < 1");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th root (descending order)
        double t = pi * (i + 0.75) / (n + 0.5);
        double x = std::cos(t);
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            // evaluate P_n and P_n' by upward recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

// same rule mapped to (a, b)
inline GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule r = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * r.x[i];
        r.w[i] *= half;
    }
    return r;
}

template <class F>
inline double integrate(const GaussRule& r, F&& f) {
    double s = 0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}

}  // namespace fpgame
