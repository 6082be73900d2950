#pragma once

// bounded data fields and smooth test probes shared by the operator,
// solver and game modules

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "core.hpp"

namespace fpgame {

// bounded Borel function together with a finite sup bound; the bound is part
// of the value because tail estimates and stopping rules consume it
template <std::size_t N>
struct Field {
  std::function<double(const Vec<N>&)> eval;
  double sup_bound = 0.0;

  double operator()(const Vec<N>& x) const { return eval(x); }
};

// quintic smoothstep, C^2 on the whole line: 0 below 0, 1 above 1
inline double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double smoothstep_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}

inline double smoothstep_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 60.0 * t * (2.0 * t - 1.0) * (t - 1.0);
}

// test function with exact derivatives, studied around an anchor point.
// r_x and c_x certify |u(anchor+z) - u(anchor) - <grad,z>| <= c_x|z|^2 for
// |z| <= r_x; omega is a global modulus of continuity when available.
template <std::size_t N>
struct SmoothProbe {
  Vec<N> anchor{};
  std::function<double(const Vec<N>&)> value;
  std::function<Vec<N>(const Vec<N>&)> gradient;  // valid on the r_x ball
  std::function<Mat<N>(const Vec<N>&)> hessian;   // valid on the r_x ball
  double r_x = 1.0;
  double c_x = 0.0;       // half of the Hessian sup over the r_x ball
  double sup_norm = 1.0;  // +inf for probes that are not bounded
  std::function<double(double)> omega;     // optional
  std::function<double(double)> hess_osc;  // sup_{B_eps}|D2u(y)-D2u(anchor)|, optional

  double at_anchor() const { return value(anchor); }
  Vec<N> grad_at_anchor() const { return gradient(anchor); }

  double modulus(double m) const {
    if (!omega) throw std::logic_error("probe has no global modulus of continuity");
    return omega(m);
  }

  double hessian_oscillation(double eps) const {
    if (!hess_osc) throw std::logic_error("probe does not track Hessian oscillation");
    return hess_osc(eps);
  }

  Field<N> as_field() const {
    if (!std::isfinite(sup_norm))
      throw std::logic_error("unbounded probe cannot serve as datum");
    return Field<N>{value, sup_norm};
  }
};

namespace detail {

// radial profile amplitude*(1 - S(r/rho)): a C^2 bump supported in B_rho
struct BumpProfile {
  double amplitude;
  double rho;

  double value(double r) const { return amplitude * (1.0 - smoothstep(r / rho)); }
  double d1(double r) const { return -(amplitude / rho) * smoothstep_d1(r / rho); }
  double d2(double r) const {
    return -(amplitude / (rho * rho)) * smoothstep_d2(r / rho);
  }
  // d1(r)/r stays finite at r = 0 since S'(t) ~ 30 t^2
  double d1_over_r(double r) const {
    const double t = r / rho;
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return -(amplitude / (rho * rho)) * 30.0 * t * (1.0 - t) * (1.0 - t);
  }
};

// gradient of g(|x-c|): g'(r) * (x-c)/r, with the removable limit at r = 0
template <std::size_t N>
Vec<N> radial_gradient(const Vec<N>& offset, double r, double d1) {
  Vec<N> g = zero_vec<N>();
  if (r == 0.0) return g;
  for (std::size_t i = 0; i < N; ++i) g[i] = d1 * offset[i] / r;
  return g;
}

// Hessian of g(|x-c|): g''(r) on the ray, g'(r)/r on the orthogonal complement
template <std::size_t N>
Mat<N> radial_hessian(const Vec<N>& offset, double r, double d2, double d1_over_r) {
  Mat<N> h{};
  if (r == 0.0) {
    // both eigenvalues coincide in the limit; for the bump profile they are 0
    for (std::size_t i = 0; i < N; ++i) h[i][i] = d1_over_r;
    return h;
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double proj = offset[i] * offset[j] / (r * r);
      h[i][j] = d2 * proj + d1_over_r * ((i == j ? 1.0 : 0.0) - proj);
    }
  return h;
}

}  // namespace detail

// ------------------------------------------------------------------ probes

// linear probe: zero curvature, exact modulus
template <std::size_t N>
SmoothProbe<N> affine_probe(const Vec<N>& slope, double offset = 0.0,
                            const Vec<N>& anchor = zero_vec<N>()) {
  SmoothProbe<N> p;
  p.anchor = anchor;
  p.value = [slope, offset](const Vec<N>& x) { return dot(slope, x) + offset; };
  p.gradient = [slope](const Vec<N>&) { return slope; };
  p.hessian = [](const Vec<N>&) { return Mat<N>{}; };
  p.r_x = 2.0;
  p.c_x = 0.0;
  p.sup_norm = std::numeric_limits<double>::infinity();
  const double lip = norm(slope);
  p.omega = [lip](double m) { return lip * m; };
  p.hess_osc = [](double) { return 0.0; };
  return p;
}

// x1 tilted by a far cutoff, plus a small bump placed off the axis but inside
// the calibrated cone for p = 3. Identically x1 on B_0.2, so the anchor at the
// origin has gradient e1 and zero curvature constant.
struct TiltBumpParams {
  double amplitude = 0.8;
  Vec<2> center{0.30, 0.15};
  double rho = 0.13;
};

inline SmoothProbe<2> tilt_bump_probe(const TiltBumpParams& tb = {}) {
  const detail::BumpProfile bump{tb.amplitude, tb.rho};
  const Vec<2> c = tb.center;

  // cutoff psi(r): 1 on [0,1], 1 - S(r-1) on [1,2], 0 beyond
  auto psi = [](double r) { return 1.0 - smoothstep(r - 1.0); };
  auto psi_d1 = [](double r) { return -smoothstep_d1(r - 1.0); };
  auto psi_d2 = [](double r) { return -smoothstep_d2(r - 1.0); };

  SmoothProbe<2> p;
  p.anchor = zero_vec<2>();
  p.value = [bump, c, psi](const Vec<2>& x) {
    const double r = norm(x);
    return psi(r) * x[0] + bump.value(norm(x - c));
  };
  p.gradient = [bump, c, psi, psi_d1](const Vec<2>& x) {
    const double r = norm(x);
    Vec<2> g = zero_vec<2>();
    g[0] = psi(r);
    if (r > 0.0 && r < 2.0) {
      const double w = psi_d1(r) * x[0] / r;
      g[0] += w * x[0];
      g[1] += w * x[1];
    }
    const Vec<2> d = x - c;
    const double rb = norm(d);
    g = g + detail::radial_gradient<2>(d, rb, bump.d1(rb));
    return g;
  };
  p.hessian = [bump, c, psi_d1, psi_d2](const Vec<2>& x) {
    const double r = norm(x);
    Mat<2> h{};
    if (r > 0.0 && r < 2.0) {
      const double a = psi_d2(r), b = psi_d1(r);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          const double proj = x[i] * x[j] / (r * r);
          h[i][j] = x[0] * (a * proj + (b / r) * ((i == j ? 1.0 : 0.0) - proj));
        }
      // cross terms from d/dx of psi'(r) x0 x/r against e1
      for (std::size_t i = 0; i < 2; ++i) {
        h[0][i] += b * x[i] / r;
        h[i][0] += b * x[i] / r;
      }
    }
    const Vec<2> d = x - c;
    const double rb = norm(d);
    const Mat<2> hb =
        detail::radial_hessian<2>(d, rb, bump.d2(rb), bump.d1_over_r(rb));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) h[i][j] += hb[i][j];
    return h;
  };
  // bump support B_rho(c) stays clear of B_0.2 when |c| - rho > 0.2
  p.r_x = 0.2;
  p.c_x = 0.0;
  p.sup_norm = 1.15 + tb.amplitude;  // max of r*psi(r) is about 1.13
  // global Lipschitz constant: tilt part 4.75 (=1+2*max S'), bump part A*1.875/rho
  const double lip = 4.75 + 1.875 * tb.amplitude / tb.rho;
  const double sup2 = 2.0 * p.sup_norm;
  p.omega = [lip, sup2](double m) { return std::min(lip * m, sup2); };
  p.hess_osc = [](double eps) {
    if (eps > 0.2) throw std::domain_error("Hessian oscillation tracked only on B_0.2");
    return 0.0;
  };
  return p;
}

// quadratic probe <b,x-a> + (1/2)<B(x-a),x-a> + c0; constant Hessian, so the
// oscillation term vanishes identically. No global modulus.
template <std::size_t N>
SmoothProbe<N> quadratic_probe(const Vec<N>& slope, const Mat<N>& curv,
                               double offset = 0.0,
                               const Vec<N>& anchor = zero_vec<N>()) {
  SmoothProbe<N> p;
  p.anchor = anchor;
  p.value = [slope, curv, offset, anchor](const Vec<N>& x) {
    const Vec<N> d = x - anchor;
    return dot(slope, d) + 0.5 * dot(matvec(curv, d), d) + offset;
  };
  p.gradient = [slope, curv, anchor](const Vec<N>& x) {
    return slope + matvec(curv, x - anchor);
  };
  p.hessian = [curv](const Vec<N>&) { return curv; };
  p.r_x = 1.0;
  p.c_x = 0.5 * frobenius_norm(curv);
  p.sup_norm = std::numeric_limits<double>::infinity();
  p.hess_osc = [](double) { return 0.0; };
  return p;
}

// pure radial bump, anchored half a radius off its center so the gradient at
// the anchor is nonzero
template <std::size_t N>
SmoothProbe<N> bump_probe(double amplitude, const Vec<N>& center, double rho) {
  const detail::BumpProfile bump{amplitude, rho};
  SmoothProbe<N> p;
  p.anchor = center + (0.5 * rho) * unit_vec<N>(0);
  p.value = [bump, center](const Vec<N>& x) { return bump.value(norm(x - center)); };
  p.gradient = [bump, center](const Vec<N>& x) {
    const Vec<N> d = x - center;
    const double r = norm(d);
    return detail::radial_gradient<N>(d, r, bump.d1(r));
  };
  p.hessian = [bump, center](const Vec<N>& x) {
    const Vec<N> d = x - center;
    const double r = norm(d);
    return detail::radial_hessian<N>(d, r, bump.d2(r), bump.d1_over_r(r));
  };
  p.r_x = 0.5 * rho;
  // eigenvalues of the radial Hessian are bounded by A*max(|S''|, S'/t)/rho^2
  // with max|S''| = 10/sqrt(3) < 5.78
  p.c_x = 0.5 * 5.7735026918962584 * amplitude / (rho * rho);
  p.sup_norm = amplitude;
  const double lip = 1.875 * amplitude / rho;
  const double sup2 = 2.0 * amplitude;
  p.omega = [lip, sup2](double m) { return std::min(lip * m, sup2); };
  return p;
}

// |x|^2 damped to zero at radius rho; gradient vanishes at the anchor, which
// is the degenerate case the rotation-based operator variant exists for
template <std::size_t N>
SmoothProbe<N> quadratic_cutoff_probe(double rho) {
  SmoothProbe<N> p;
  p.anchor = zero_vec<N>();
  p.value = [rho](const Vec<N>& x) {
    const double r = norm(x);
    return r * r * (1.0 - smoothstep(r / rho));
  };
  // radial derivative phi(r)*r with phi(r) = 2(1-S(t)) - t S'(t), t = r/rho
  auto phi = [rho](double r) {
    const double t = r / rho;
    return 2.0 * (1.0 - smoothstep(t)) - t * smoothstep_d1(t);
  };
  p.gradient = [phi](const Vec<N>& x) {
    const double f = phi(norm(x));
    Vec<N> g = zero_vec<N>();
    for (std::size_t i = 0; i < N; ++i) g[i] = f * x[i];
    return g;
  };
  p.hessian = [phi, rho](const Vec<N>& x) {
    const double r = norm(x);
    const double f = phi(r);
    Mat<N> h{};
    for (std::size_t i = 0; i < N; ++i) h[i][i] = f;
    if (r > 0.0 && r < rho) {
      const double t = r / rho;
      const double dphi =
          -(3.0 * smoothstep_d1(t) + t * smoothstep_d2(t)) / rho;
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) h[i][j] += dphi * x[i] * x[j] / r;
    }
    return h;
  };
  p.r_x = rho;
  p.c_x = 7.65;  // |phi| <= 3.875 and |phi'| r <= 11.4, both crude sups
  p.sup_norm = 0.13 * rho * rho;
  const double lip = 0.45 * rho;
  const double sup2 = 2.0 * p.sup_norm;
  p.omega = [lip, sup2](double m) { return std::min(lip * m, sup2); };
  return p;
}

// isotropic Gaussian exp(-|x-c|^2/2); Hessian norm is globally below 1
template <std::size_t N>
SmoothProbe<N> gaussian_probe(const Vec<N>& anchor = zero_vec<N>(),
                              const Vec<N>& center = zero_vec<N>()) {
  SmoothProbe<N> p;
  p.anchor = anchor;
  p.value = [center](const Vec<N>& x) {
    const Vec<N> d = x - center;
    return std::exp(-0.5 * dot(d, d));
  };
  p.gradient = [center](const Vec<N>& x) {
    const Vec<N> d = x - center;
    return (-std::exp(-0.5 * dot(d, d))) * d;
  };
  p.hessian = [center](const Vec<N>& x) {
    const Vec<N> d = x - center;
    const double g = std::exp(-0.5 * dot(d, d));
    Mat<N> h{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        h[i][j] = g * (d[i] * d[j] - (i == j ? 1.0 : 0.0));
    return h;
  };
  p.r_x = 1.0;
  p.c_x = 0.5;
  p.sup_norm = 1.0;
  const double lip = std::exp(-0.5);
  p.omega = [lip](double m) { return std::min(lip * m, 2.0); };
  return p;
}

// barrier family min{2^t, |x|^{-t}}: radially decreasing, Lipschitz with
// constant t 2^{t+1}, smooth outside B_{1/2}
template <std::size_t N>
double radial_power_value(const Vec<N>& x, double t) {
  const double r = norm(x);
  if (r <= 0.5) return std::pow(2.0, t);
  return std::pow(r, -t);
}

template <std::size_t N>
SmoothProbe<N> radial_power_probe(double t, const Vec<N>& anchor) {
  const double ra = norm(anchor);
  if (ra <= 0.5)
    throw std::invalid_argument("radial power probe needs an anchor outside B_1/2");
  SmoothProbe<N> p;
  p.anchor = anchor;
  p.value = [t](const Vec<N>& x) { return radial_power_value<N>(x, t); };
  p.gradient = [t](const Vec<N>& x) {
    const double r = norm(x);
    if (r <= 0.5) return zero_vec<N>();
    return (-t * std::pow(r, -t - 2.0)) * x;
  };
  p.hessian = [t](const Vec<N>& x) {
    Mat<N> h{};
    const double r = norm(x);
    if (r <= 0.5) return h;
    const double s1 = -t * std::pow(r, -t - 2.0);
    const double s2 = t * (t + 2.0) * std::pow(r, -t - 4.0);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        h[i][j] = s2 * x[i] * x[j] + (i == j ? s1 : 0.0);
    return h;
  };
  p.r_x = 0.5 * (ra - 0.5);
  // Hessian sup over the r_x ball, attained at the inner radius
  const double rmin = ra - p.r_x;
  p.c_x = 0.5 * (t * (t + 2.0) * std::pow(rmin, -t - 2.0));
  p.sup_norm = std::pow(2.0, t);
  const double lip = t * std::pow(2.0, t + 1.0);
  const double sup2 = 2.0 * p.sup_norm;
  p.omega = [lip, sup2](double m) { return std::min(lip * m, sup2); };
  return p;
}

// ------------------------------------------------------------------- data

template <std::size_t N>
Field<N> constant_datum(double c) {
  return Field<N>{[c](const Vec<N>&) { return c; }, std::abs(c)};
}

// affine inside B_R, radially clamped outside; bounded and uniformly
// continuous, affine on the region any interior game can reach in one hop
template <std::size_t N>
Field<N> clamped_affine_datum(const Vec<N>& slope, double offset,
                              double clamp_radius) {
  auto eval = [slope, offset, clamp_radius](const Vec<N>& x) {
    const double r = norm(x);
    const double scale = r <= clamp_radius ? 1.0 : clamp_radius / r;
    return scale * dot(slope, x) + offset;
  };
  return Field<N>{eval, norm(slope) * clamp_radius + std::abs(offset)};
}

// x1/|x|^2 outside the unit ball, linear x1 inside; bounded by 1
template <std::size_t N>
Field<N> harmonic_tail_datum() {
  auto eval = [](const Vec<N>& x) {
    const double r2 = std::max(dot(x, x), 1.0);
    return x[0] / r2;
  };
  return Field<N>{eval, 1.0};
}

template <std::size_t N>
Field<N> radial_power_datum(double t) {
  return Field<N>{[t](const Vec<N>& x) { return radial_power_value<N>(x, t); },
                  std::pow(2.0, t)};
}

}  // namespace fpgame
