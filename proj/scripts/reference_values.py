#!/usr/bin/env python3
"""Independent reference quadratures for the cone-integral test suite.

Every value printed here is frozen into the C++ tests. The integrals are
computed with generic adaptive/Gauss quadrature in polar coordinates, with
no code shared with the library under test.
"""

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.special import gamma, j0

# calibrated cone half-angle for N=2, p=3 (bisection on the moment ratio)
def aperture(N, p, lo=1e-6, hi=np.pi / 2):
    xs, ws = leggauss(200)

    def Q(a):
        t = 0.5 * a * (xs + 1.0)
        w = 0.5 * a * ws
        num = np.sum(w * np.cos(t) ** 2 * np.sin(t) ** (N - 2))
        den = np.sum(w * np.sin(t) ** N) / (N - 1)
        return num / den

    f = lambda a: Q(a) - (p - 1)
    assert f(lo) > 0 > f(hi) or p == 2
    if p == 2:
        return np.pi / 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def norm_const(N, s):
    return 4.0**s * s * gamma(N / 2 + s) / (np.pi ** (N / 2) * gamma(1 - s))


def smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


ALPHA_23 = aperture(2, 3)
print(f"aperture(2,3) = {ALPHA_23:.12f}")


# ---------------------------------------------------------------------------
# tilt+bump probe at the origin: the tilt is odd so the symmetric second
# difference integrates to zero, leaving the bump lump, whose support lies
# strictly inside the cone around e1. The integral is smooth (support is
# well separated from the origin).

def lsp_tilt_bump(s, A=0.8, c=(0.30, 0.15), rho=0.13, n_sig=400, n_phi=800):
    c = np.asarray(c)
    xs, ws = leggauss(n_sig)
    sig = 0.5 * rho * (xs + 1.0)
    wsig = 0.5 * rho * ws
    phi = (np.arange(n_phi) + 0.5) * 2 * np.pi / n_phi
    wphi = 2 * np.pi / n_phi
    pts = c[None, None, :] + sig[:, None, None] * np.stack(
        [np.cos(phi), np.sin(phi)], axis=-1)[None, :, :]
    r2 = np.sum(pts * pts, axis=-1)
    integ = (1.0 - smoothstep(sig / rho))[:, None] * r2 ** (-(2 + 2 * s) / 2)
    inner = np.sum(integ, axis=1) * wphi
    return A * norm_const(2, s) * np.sum(wsig * sig * inner)


for s in (0.75, 0.9):
    v1 = lsp_tilt_bump(s, n_sig=200, n_phi=400)
    v2 = lsp_tilt_bump(s, n_sig=400, n_phi=800)
    v3 = lsp_tilt_bump(s, n_sig=800, n_phi=1600)
    print(f"lsp_tilt_bump(s={s}) = {v3:.17g}   (refinement drift {abs(v2-v1):.2e}, {abs(v3-v2):.2e})")


# ---------------------------------------------------------------------------
# generic second-difference cone integral at x0 with axis direction ax,
# radial adaptive quadrature per angle plus analytic constant tail

def lsp_polar(u, x0, ax_angle, s, alpha, r_support, u_x0, singular_pts=(),
              n_psi=300):
    C = norm_const(2, s)
    xs, ws = leggauss(n_psi)
    psi = ax_angle + alpha * xs
    wpsi = alpha * ws
    total = 0.0
    Rcut = r_support
    for a, w in zip(psi, wpsi):
        d = np.array([np.cos(a), np.sin(a)])

        def rad(r):
            z = r * d
            return (u(x0 + z) + u(x0 - z) - 2 * u_x0) * r ** (-1 - 2 * s)

        pts = [p for p in singular_pts if 0 < p < Rcut]
        val, err = quad(rad, 0.0, Rcut, points=pts or None, limit=400)
        total += w * val
    # beyond Rcut the bracket is exactly -2 u(x0)
    tail_angle = np.sum(wpsi)
    total += tail_angle * (-2 * u_x0) * Rcut ** (-2 * s) / (2 * s)
    return C * total


def bump_val(x, A=1.0, rho=0.5):
    r = np.linalg.norm(x, axis=-1) if x.ndim > 1 else np.linalg.norm(x)
    return A * (1.0 - smoothstep(r / rho))


# pure bump of radius 0.5 at the origin, probed at (0.25, 0); gradient points
# along -e1 so the cone axis is pi... gradient is -3.75 e1, axis = pi
x0 = np.array([0.25, 0.0])
u_x0 = bump_val(x0)
v = lsp_polar(bump_val, x0, np.pi, 0.75, ALPHA_23, 0.75 + 1e-9, u_x0,
              singular_pts=[0.25, 0.75], n_psi=300)
v_hi = lsp_polar(bump_val, x0, np.pi, 0.75, ALPHA_23, 0.75 + 1e-9, u_x0,
                 singular_pts=[0.25, 0.75], n_psi=600)
print(f"lsp_bump(s=0.75) at (0.25,0) = {v_hi:.17g}   (drift {abs(v_hi-v):.2e})")


# ---------------------------------------------------------------------------
# barrier family f_t = min(2^t, |x|^-t) probed along the axis; the inward
# cone passes near the origin where f is capped, giving the big positive lump

def ft(x, t):
    r = np.linalg.norm(x, axis=-1) if x.ndim > 1 else np.linalg.norm(x)
    return min(2.0**t, r ** (-t)) if np.isscalar(r) else np.minimum(2.0**t, r ** (-t))


def lsp_ft(R, t, s=0.75, n_psi=400):
    x0 = np.array([R, 0.0])
    u_x0 = ft(x0, t)
    C = norm_const(2, s)
    xs, ws = leggauss(n_psi)
    psi = np.pi + ALPHA_23 * xs
    wpsi = ALPHA_23 * ws
    total = 0.0
    Rcut = 4.0 * R + 8.0
    for a, w in zip(psi, wpsi):
        d = np.array([np.cos(a), np.sin(a)])

        def rad(r):
            z = r * d
            return (ft(x0 + z, t) + ft(x0 - z, t) - 2 * u_x0) * r ** (-1 - 2 * s)

        # the forward ray passes closest to the origin near r = R/|cos a|
        pts = sorted({min(R / abs(np.cos(a)), Rcut * 0.999), R, 2 * R})
        val, err = quad(rad, 0.0, Rcut, points=pts, limit=800)
        total += w * val
    # past Rcut: f(x0 +/- z) <= (r - R)^{-t}, bounded by a negligible remainder
    tail_angle = np.sum(wpsi)
    total += tail_angle * (-2 * u_x0) * Rcut ** (-2 * s) / (2 * s)
    rem = tail_angle * 2 * quad(lambda r: (r - R) ** (-t) * r ** (-1 - 2 * s),
                                Rcut, np.inf)[0]
    return C * total, C * rem


print("# f_t barrier, t = 9, s = 0.75, p = 3 (weight |x|^(2s+t))")
for R in (1.0, 2.0, 5.0, 10.0):
    val, rem = lsp_ft(R, 9.0)
    print(f"lsp_f9(R={R:g}) = {val:.12g}   scaled = {val * R**10.5:.12g}   tail_bound = {rem:.2e}")

# also t = t0 = 8 at R = 2 for the supersolution check
val8, rem8 = lsp_ft(2.0, 8.0)
print(f"lsp_f8(R=2) = {val8:.12g}   (tail bound {rem8:.2e})")


# ---------------------------------------------------------------------------
# fractional Laplacian of the standard Gaussian via the Hankel transform,
# N = 2: (-Lap)^s g(x) = int_0^inf r^(2s+1) exp(-r^2/2) J0(r|x|) dr

def frac_lap_gaussian(s, xnorm):
    f = lambda r: r ** (2 * s + 1) * np.exp(-0.5 * r * r) * j0(r * xnorm)
    val, err = quad(f, 0.0, 50.0, limit=400)
    return val, err


xn = np.hypot(0.3, 0.2)
v, e = frac_lap_gaussian(0.75, xn)
print(f"(-Lap)^0.75 gaussian at |x|={xn:.17g}: {v:.17g} (err {e:.1e})")
rho_factor = (2 - 2 * 0.75) * 2 / (np.pi * norm_const(2, 0.75))
print(f"rho(2,0.75) = {rho_factor:.17g}")
print(f"expected delta_ps value = {-rho_factor * v:.17g}")
