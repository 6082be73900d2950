#pragma once
// Cone geometry: aperture calibration from the moment-ratio equation,
// spherical-cap measures and moments, cone membership, and the
// orientation-preserving rotations that move one cone axis onto another.

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fpgame/core.hpp"
#include "fpgame/gauss.hpp"

namespace fpgame {

// Moment ratio of the spherical cap of half-angle alpha around e1:
//   Q(alpha) = int_{A(alpha)} <z,e1>^2 dsigma / int_{A(alpha)} <z,e2>^2 dsigma.
// Polar reduction: numerator weight cos^2(t) sin^{N-2}(t), denominator
// weight sin^N(t)/(N-1); the common |S^{N-2}| factor cancels.
// Q is strictly decreasing on (0, pi/2] with Q(pi/2) = 1 and Q -> inf at 0.
inline double cap_moment_ratio(int N, double alpha, int order = 64) {
    if (!(N >= 2)) throw std::invalid_argument("cap_moment_ratio: need N >= 2");
    if (!(alpha > 0.0 && alpha < pi)) throw std::invalid_argument("cap_moment_ratio: need alpha in (0, pi)");
    const GaussRule g = gauss_legendre(order, 0.0, alpha);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < order; ++i) {
        const double t = g.x[i], w = g.w[i];
        const double st = std::sin(t), ct = std::cos(t);
        const double sp = std::pow(st, N - 2);
        num += w * ct * ct * sp;
        den += w * st * st * sp / (N - 1);
    }
    return num / den;
}

// Surface measure of the cap {|z| = 1, angle(e1, z) < alpha}:
//   |A(alpha)| = |S^{N-2}| int_0^alpha sin^{N-2}(t) dt.
inline double cap_measure(int N, double alpha, int order = 64) {
    if (!(N >= 2)) throw std::invalid_argument("cap_measure: need N >= 2");
    if (!(alpha > 0.0 && alpha <= pi)) throw std::invalid_argument("cap_measure: need alpha in (0, pi]");
    if (N == 2) return 2.0 * alpha;
    if (N == 3) return 2.0 * pi * (1.0 - std::cos(alpha));
    const GaussRule g = gauss_legendre(order, 0.0, alpha);
    double v = 0.0;
    for (int i = 0; i < order; ++i) v += g.w[i] * std::pow(std::sin(g.x[i]), N - 2);
    return sphere_area(N - 1) * v;
}

struct ConeSpec {
    int dim = 2;             // ambient dimension N
    double exponent = 2.0;   // p in [2, inf)
    double aperture = 0.0;   // alpha_p in (0, pi/2]
    double cap_measure = 0.0;
    double calibration_tol = 0.0;
};

// Solve Q(alpha) = p - 1 by bisection. Q is continuous and strictly
// decreasing on the bracket, so the root is unique.
inline double aperture_for_exponent(int N, double p, double tol = 1e-12) {
    if (!(N >= 2)) throw std::invalid_argument("aperture_for_exponent: need N >= 2");
    if (!(p >= 2.0)) throw std::invalid_argument("aperture_for_exponent: need p >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("aperture_for_exponent: need tol > 0");
    const double target = p - 1.0;
    double lo = 1e-6, hi = pi / 2.0;
    // the right endpoint solves exactly when p = 2 (hemisphere symmetry)
    if (std::abs(cap_moment_ratio(N, hi) - target) <= tol) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double q = cap_moment_ratio(N, mid);
        if (std::abs(q - target) <= tol) return mid;
        if (q > target)
            lo = mid;  // Q too big: widen the cap
        else
            hi = mid;
    }
    std::ostringstream msg;
    msg << "aperture_for_exponent: no convergence for N=" << N << " p=" << p
        << ", final bracket [" << lo << ", " << hi << "]";
    throw std::runtime_error(msg.str());
}

inline ConeSpec calibrate_cone(int N, double p, double tol = 1e-12) {
    ConeSpec spec;
    spec.dim = N;
    spec.exponent = p;
    spec.aperture = aperture_for_exponent(N, p, tol);
    spec.cap_measure = cap_measure(N, spec.aperture);
    spec.calibration_tol = tol;
    return spec;
}

// int_{A_p} <z,e2>^2 dsigma by quadrature; equals |A_p| / (N + p - 2)
// for a calibrated cap.
inline double cap_second_moment(const ConeSpec& spec, int order = 64) {
    const GaussRule g = gauss_legendre(order, 0.0, spec.aperture);
    double v = 0.0;
    for (int i = 0; i < order; ++i) {
        const double st = std::sin(g.x[i]);
        v += g.w[i] * std::pow(st, spec.dim) / (spec.dim - 1);
    }
    return sphere_area(spec.dim - 1) * v;
}

// Mean axial component over the cap: fint_{A_p} <z,e1> dsigma.
// Closed forms: N=2 sin(a)/a, N=3 (1+cos(a))/2.
inline double cap_mean_axis(const ConeSpec& spec, int order = 64) {
    if (spec.dim == 2) return std::sin(spec.aperture) / spec.aperture;
    if (spec.dim == 3) return 0.5 * (1.0 + std::cos(spec.aperture));
    const GaussRule g = gauss_legendre(order, 0.0, spec.aperture);
    double v = 0.0;
    for (int i = 0; i < order; ++i)
        v += g.w[i] * std::cos(g.x[i]) * std::pow(std::sin(g.x[i]), spec.dim - 2);
    return sphere_area(spec.dim - 1) * v / spec.cap_measure;
}

// z lies in the open truncated cone around axis y: angle(y,z) < alpha_p
// and a < |z| < b (both strict).
template <std::size_t N>
inline bool in_cone(const Vec<N>& z, const Vec<N>& y, const ConeSpec& spec, double a,
                    double b = std::numeric_limits<double>::infinity()) {
    const double r = norm(z);
    if (!(r > a && r < b)) return false;
    return angle_between(y, z) < spec.aperture;
}

template <std::size_t N>
struct Rotation {
    Mat<N> matrix;
    Vec<N> apply(const Vec<N>& v) const { return matvec(matrix, v); }
};

namespace detail {

// Planar rotation taking unit y to unit yt, identity on the orthogonal
// complement of span{y, yt}. Requires the pair to be non-antipodal.
template <std::size_t N>
Mat<N> planar_rotation(const Vec<N>& y, const Vec<N>& yt) {
    const double c = dot(y, yt);
    Vec<N> w = yt - c * y;  // component of yt orthogonal to y
    const double wn = norm(w);
    Mat<N> m = identity<N>();
    if (wn < 1e-15) return m;  // yt == y
    w = (1.0 / wn) * w;
    const double s = wn;  // sin of the rotation angle, >= 0
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            m[i][j] += (c - 1.0) * (y[i] * y[j] + w[i] * w[j]) + s * (w[i] * y[j] - y[i] * w[j]);
    return m;
}

}  // namespace detail

// Orientation-preserving rotation with R y = yt, acting in span{y, yt}
// only. For (near-)antipodal pairs the plane is not determined; we route
// through a deterministic intermediate axis: the coordinate axis least
// aligned with y (lowest index on ties), projected orthogonal to y.
template <std::size_t N>
inline Rotation<N> rotation_between(const Vec<N>& y, const Vec<N>& yt) {
    if (std::abs(norm(y) - 1.0) > 1e-12 || std::abs(norm(yt) - 1.0) > 1e-12)
        throw std::invalid_argument("rotation_between: inputs must be unit vectors");
    const double c = dot(y, yt);
    if (c > -1.0 + 1e-9) return {detail::planar_rotation(y, yt)};
    int axis = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (std::abs(y[i]) < std::abs(y[axis])) axis = i;
    Vec<N> m = unit_vec<N>(axis) - y[axis] * y;
    m = normalized(m);
    return {matmul(detail::planar_rotation(m, yt), detail::planar_rotation(y, m))};
}

}  // namespace fpgame
