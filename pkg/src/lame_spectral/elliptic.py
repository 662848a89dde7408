"""Elliptic-function numerics in double precision.

Jacobi functions and Z come from nome-series theta functions after
reducing the argument into the period rectangle.  The monodromy oracle
integrates the Jacobi-form equation directly and uses scipy's ellipj for
the potential, so it shares no code with the theta layer.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special


class EllipticError(ValueError):
    pass


def agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-16 * abs(a):
            break
        a, b = (a + b) / 2, math.sqrt(a * b)
    return (a + b) / 2


def complete_K(m: float) -> float:
    """K(m) = pi / (2 agm(1, sqrt(1 - m)))."""
    m = float(m)
    if not 0 <= m < 1:
        raise EllipticError("complete_K needs 0 <= m < 1")
    return math.pi / (2 * agm(1.0, math.sqrt(1 - m)))


@dataclass(frozen=True)
class ThetaContext:
    m: float
    K: float
    Kp: float
    q: float
    # theta constants theta_2(0), theta_3(0), theta_4(0)
    t2: float
    t3: float
    t4: float

    @staticmethod
    def build(m) -> "ThetaContext":
        m = float(m)
        if not 0 < m < 1:
            raise EllipticError("numerics support real 0 < m < 1")
        K, Kp = complete_K(m), complete_K(1 - m)
        q = math.exp(-math.pi * Kp / K)
        t2, t3, t4 = (theta(i, 0j, q).real for i in (2, 3, 4))
        return ThetaContext(m, K, Kp, q, t2, t3, t4)


_ctx_cache: dict = {}


def context(m) -> ThetaContext:
    if isinstance(m, ThetaContext):
        return m
    key = float(m)
    if key not in _ctx_cache:
        _ctx_cache[key] = ThetaContext.build(key)
    return _ctx_cache[key]


def theta(i: int, v: complex, q: float, deriv: bool = False) -> complex:
    """Jacobi theta function theta_i(v, q) (or its v-derivative), i = 1..4."""
    tol = 1e-17
    total = 0j
    if i in (1, 2):
        n = 0
        while True:
            c = q ** ((n + 0.5) ** 2)
            a = (2 * n + 1) * v
            if i == 1:
                t = (-1) ** n * ((2 * n + 1) * cmath.cos(a) if deriv else cmath.sin(a))
            else:
                t = -(2 * n + 1) * cmath.sin(a) if deriv else cmath.cos(a)
            term = 2 * c * t
            total += term
            if c * math.exp(abs((2 * n + 1) * v.imag)) * (2 * n + 2) < tol * max(abs(total), 1e-300) or n > 200:
                return total
            n += 1
    sign = -1 if i == 4 else 1
    total = 0j if deriv else 1 + 0j
    n = 1
    while True:
        c = q ** (n * n)
        a = 2 * n * v
        t = -2 * n * cmath.sin(a) if deriv else cmath.cos(a)
        term = 2 * sign ** n * c * t
        total += term
        if c * math.exp(abs(2 * n * v.imag)) * (2 * n + 2) < tol * max(abs(total), 1.0) or n > 200:
            return total
        n += 1


def _reduce(u: complex, ctx: ThetaContext):
    """u = r + 2jK + 2n iK' with |Re r| <= K, |Im r| <= K'."""
    n = round(u.imag / (2 * ctx.Kp))
    r = u - 2j * ctx.Kp * n
    j = round(r.real / (2 * ctx.K))
    r = r - 2 * ctx.K * j
    return r, j, n


@dataclass(frozen=True)
class JacobiTriple:
    sn: complex
    cn: complex
    dn: complex


def jacobi_sn_cn_dn(u, m) -> JacobiTriple:
    ctx = context(m)
    r, j, n = _reduce(complex(u), ctx)
    if min(abs(r - 1j * ctx.Kp), abs(r + 1j * ctx.Kp)) < 1e-8:
        raise EllipticError("argument too close to a pole")
    v = math.pi * r / (2 * ctx.K)
    q = ctx.q
    th4 = theta(4, v, q)
    sn = ctx.t3 / ctx.t2 * theta(1, v, q) / th4
    cn = ctx.t4 / ctx.t2 * theta(2, v, q) / th4
    dn = ctx.t4 / ctx.t3 * theta(3, v, q) / th4
    # sn(u + 2K) = -sn, cn(u + 2K) = -cn; cn, dn change sign under u + 2iK'
    sj, sn_ = (-1) ** (j % 2), (-1) ** (n % 2)
    return JacobiTriple(sn * sj, cn * sj * sn_, dn * sn_)


def jacobi_Z(u, m) -> complex:
    """Jacobi zeta function, with Z(u + 2iK') = Z(u) - i pi / K."""
    ctx = context(m)
    r, j, n = _reduce(complex(u), ctx)
    if min(abs(r - 1j * ctx.Kp), abs(r + 1j * ctx.Kp)) < 1e-8:
        raise EllipticError("argument too close to a zero of Theta")
    v = math.pi * r / (2 * ctx.K)
    z = math.pi / (2 * ctx.K) * theta(4, v, ctx.q, deriv=True) / theta(4, v, ctx.q)
    return z - 1j * math.pi * n / ctx.K


def carlson_rf(x, y, z) -> complex:
    return complex(special.elliprf(complex(x), complex(y), complex(z)))


def _to_rectangle(u: complex, ctx: ThetaContext) -> complex:
    a = u.real % (2 * ctx.K)
    b = u.imag % (2 * ctx.Kp)
    if abs(a - 2 * ctx.K) < 1e-13 * ctx.K:
        a = 0.0
    if abs(b - 2 * ctx.Kp) < 1e-13 * ctx.Kp:
        b = 0.0
    return complex(a, b)


def _newton_dn2(u, w, mm):
    """Newton on dn^2(u) = w; None when it fails to converge from u."""
    for _ in range(60):
        try:
            t = jacobi_sn_cn_dn(u, mm)
        except EllipticError:
            u += 1e-3
            continue
        g = t.dn * t.dn - w
        if abs(g) <= 1e-15 * max(1.0, abs(w)):
            break
        dg = -2 * mm * t.sn * t.cn * t.dn
        if abs(dg) < 1e-12:
            break       # at a critical point of dn^2, i.e. a lattice half-period
        u -= g / dg
    try:
        t = jacobi_sn_cn_dn(u, mm)
    except EllipticError:
        return None
    if abs(t.dn * t.dn - w) > 1e-10 * max(1.0, abs(w)):
        return None
    return u


def invert_dn_squared(E, nu_tilde, m) -> complex:
    """alpha0 in [0, 2K) x [0, 2K') with dn^2(alpha0) = E - m and
    m sn cn dn(alpha0) = i nu_tilde.

    dn^2 is even with periods 2K, 2iK' so the rectangle holds two solutions,
    +-alpha0, and sn cn dn (odd, same periods) separates them.
    """
    ctx = context(m)
    mm = ctx.m
    w = complex(E) - mm
    s2 = (1 - w) / mm
    s = cmath.sqrt(s2)
    if w == 0:
        u = complex(ctx.K, ctx.Kp)
    elif s2 == 0:
        u = 0j
    elif w.imag == 0 and w.real < 0:
        # dn(x + iK') = -i cs(x): real x with sn^2(x) = 1/(1 - w)
        sr = 1 / math.sqrt(1 - w.real)
        x = sr * carlson_rf(1 - sr * sr, 1 - mm * sr * sr, 1).real
        u = complex(x, ctx.Kp)
    else:
        u = s * carlson_rf(1 - s2, 1 - mm * s2, 1)
        if not cmath.isfinite(u):
            u = complex(ctx.K / 2, ctx.Kp / 2)
    starts = [u] + [complex(ctx.K * a / 4, ctx.Kp * b / 4) for a in (1, 3, 5, 7) for b in (1, 3, 5, 7)]
    for u in starts:
        u = _newton_dn2(u, w, mm)
        if u is not None:
            break
    else:
        raise EllipticError("dn^2 inversion did not converge")
    target = 1j * complex(nu_tilde)
    best = None
    for cand in (u, -u):
        tc = jacobi_sn_cn_dn(cand, mm)
        val = mm * tc.sn * tc.cn * tc.dn
        err = abs(val - target)
        if best is None or err < best[0]:
            best = (err, cand, val)
    err, cand, val = best
    if err > 1e-8 * max(abs(target), abs(val), 1e-4):
        raise EllipticError("nu_tilde is not consistent with E on the l = 1 curve")
    return _to_rectangle(cand, ctx)


# ---------------------------------------------------------------------------
# Phi on the Weierstrass curve
# ---------------------------------------------------------------------------

def _cubic(x, g2, g3):
    return 4 * x ** 3 - g2 * x - g3


def phi_numeric(x, y, x0, y0, g2, g3, base=None, npts: int = 400) -> complex:
    """Phi(x, y; x0, y0) normalized to 1 at a basepoint.

    The path runs straight from the basepoint ``base`` (default
    x_b = x0 + 1 + 1j, off the real axis) to x, with y continued along it.
    The sheet at the basepoint is chosen so that the continuation ends at
    the requested y.  Only ratios of values are meaningful across paths.
    """
    x, y, x0, y0 = complex(x), complex(y), complex(x0), complex(y0)
    xb = complex(base) if base is not None else x0 + 1 + 1j
    if abs(_cubic(x, g2, g3) - y * y) > 1e-8 * max(1.0, abs(y * y)):
        raise EllipticError("(x, y) is not on the curve")
    if abs(x - x0) < 1e-14 and abs(y - y0) < 1e-8 * max(1.0, abs(y0)):
        return 0j
    ts = np.linspace(0.0, 1.0, npts + 1)
    xs = xb + (x - xb) * ts
    ys = np.empty(len(ts), dtype=complex)
    ys[0] = cmath.sqrt(_cubic(xb, g2, g3))
    for i in range(1, len(ts)):
        c = cmath.sqrt(_cubic(xs[i], g2, g3))
        ys[i] = c if abs(c - ys[i - 1]) <= abs(c + ys[i - 1]) else -c
    flip = abs(ys[-1] + y) < abs(ys[-1] - y)
    sgn = -1 if flip else 1
    for xv, yv in zip(xs, ys):
        if abs(xv - x0) < 1e-10 and abs(sgn * yv - y0) < 1e-6:
            raise EllipticError("path passes through the zero of Phi")
        if abs(yv) < 1e-10 and xv != xs[-1]:
            raise EllipticError("path passes through a branch point")

    def f(t, part):
        xv = xb + (x - xb) * t
        # locate the continued branch by the nearest grid value
        k = min(int(t * npts + 0.5), npts)
        c = cmath.sqrt(_cubic(xv, g2, g3))
        yv = c if abs(c - ys[k]) <= abs(c + ys[k]) else -c
        yv *= sgn
        val = 0.5 * (yv + y0) / ((xv - x0) * yv) * (x - xb)
        return val.real if part == 0 else val.imag

    re = integrate.quad(f, 0, 1, args=(0,), epsabs=1e-12, epsrel=1e-12, limit=200)[0]
    im = integrate.quad(f, 0, 1, args=(1,), epsabs=1e-12, epsrel=1e-12, limit=200)[0]
    return cmath.exp(complex(re, im))


# ---------------------------------------------------------------------------
# independent Floquet oracle
# ---------------------------------------------------------------------------

@dataclass
class MonodromyResult:
    trace: float
    k: complex
    wronskian: float
    matrix: np.ndarray


def hill_monodromy(ell: int, E: float, m: float, rtol: float = 1e-12) -> MonodromyResult:
    """Monodromy over one period 2K of -psi'' + l(l+1) m sn^2 psi = E psi."""
    m = float(m)
    K = float(special.ellipk(m))
    c = ell * (ell + 1) * m
    E = float(E)

    def rhs(a, Y):
        sn = special.ellipj(a, m)[0]
        p = c * sn * sn - E
        return [Y[1], p * Y[0], Y[3], p * Y[2]]

    scale = max(1.0, math.sqrt(abs(E)))
    sol = integrate.solve_ivp(rhs, (0.0, 2 * K), [1.0, 0.0, 0.0, 1.0], method="DOP853",
                              rtol=rtol, atol=rtol * 1e-2, max_step=0.5 / scale)
    if not sol.success:
        raise EllipticError(f"integration failed: {sol.message}")
    y = sol.y[:, -1]
    M = np.array([[y[0], y[2]], [y[1], y[3]]])
    W = float(np.linalg.det(M))
    if abs(W - 1) > 1e-10 * max(1.0, float(np.abs(M).max()) ** 2):
        raise EllipticError("Wronskian drift; integration not accurate enough")
    t = float(M[0, 0] + M[1, 1])
    k = cmath.acos(t / 2) / (2 * K)
    return MonodromyResult(t, k, W, M)


def hill_monodromy_oracle(ell: int, E: float, m: float):
    r = hill_monodromy(ell, E, m)
    return r.trace, r.k
