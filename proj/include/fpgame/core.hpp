#pragma once

// Small fixed-dimension linear algebra used throughout. Dimensions are
// compile-time (N = 2 or 3 in practice) and everything stays on the stack.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpgame {

inline constexpr double pi = std::numbers::pi;

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
using Mat = std::array<std::array<double, N>, N>;

template <std::size_t N>
constexpr Vec<N> zero_vec() {
    Vec<N> v{};
    return v;
}

template <std::size_t N>
constexpr Vec<N> unit_vec(int axis) {
    Vec<N> v{};
    v[axis] = 1.0;
    return v;
}

template <std::size_t N>
inline double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t N>
inline double norm(const Vec<N>& a) {
    return std::sqrt(dot(a, a));
}

template <std::size_t N>
inline Vec<N> operator+(Vec<N> a, const Vec<N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <std::size_t N>
inline Vec<N> operator-(Vec<N> a, const Vec<N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
    return a;
}

template <std::size_t N>
inline Vec<N> operator*(double c, Vec<N> a) {
    for (std::size_t i = 0; i < N; ++i) a[i] *= c;
    return a;
}

template <std::size_t N>
inline Vec<N> operator-(Vec<N> a) {
    for (std::size_t i = 0; i < N; ++i) a[i] = -a[i];
    return a;
}

template <std::size_t N>
inline Vec<N> normalized(const Vec<N>& a) {
    double n = norm(a);
    if (n == 0) throw std::invalid_argument("normalized: zero vector");
    return (1.0 / n) * a;
}

template <std::size_t N>
inline Vec<N> matvec(const Mat<N>& m, const Vec<N>& v) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i] += m[i][j] * v[j];
    return r;
}

template <std::size_t N>
inline Mat<N> matmul(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <std::size_t N>
constexpr Mat<N> identity() {
    Mat<N> m{};
    for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
    return m;
}

// Frobenius norm; used where a matrix-size bound is needed (always an
// upper bound for the spectral norm, so safe inside error budgets).
template <std::size_t N>
inline double frobenius_norm(const Mat<N>& m) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
}

template <std::size_t N>
inline double trace(const Mat<N>& m) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) s += m[i][i];
    return s;
}

// angle between two unit vectors, clamped against rounding
template <std::size_t N>
inline double angle_between(const Vec<N>& a, const Vec<N>& b) {
    double c = dot(a, b) / (norm(a) * norm(b));
    c = std::fmax(-1.0, std::fmin(1.0, c));
    return std::acos(c);
}

inline double sqr(double x) { return x * x; }

// surface measure of the unit sphere S^{d-1} in R^d
inline double sphere_area(int d) {
    if (d < 1) throw std::invalid_argument("sphere_area: dimension < 1");
    // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2); d = 1 gives the two-point sphere
    return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace fpgame
