"""Band edges and crystal momentum for the Jacobi-form Lamé equation.

The crystal momentum of degree l is reduced to the l = 1 case through the
covering map: with B = -E + l(l+1)(m+1)/3,

    k_l(E, nu~) = k_1(calE, nu~_l) + kappa_hat(B) nu~,
    calE = -x0(B) + 2(m+1)/3,   nu~_l = y0_hat(B) nu~ / 2,

and k_1(E, nu~) = -i Z(alpha0) + pi/2K with dn^2(alpha0) = E - m and
m sn cn dn(alpha0) = i nu~.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from gmpy2 import mpq

from .algebra import AlgebraError, Poly, count_real_roots, isolate_real_roots, refine_root, uval
from .covering import theorem_L
from .elliptic import context, invert_dn_squared, jacobi_Z
from .moduli import DegenerateModulus
from .spectral import L_I, full_spectral
from .twisted import twisted_spectral

EVAR = "x"      # E is carried in the x slot of Poly
MVAR = "k"      # and a symbolic m in the k slot


def parse_m(m):
    """Exact rational for "p/q", ints, Fractions; float stays float."""
    if isinstance(m, str):
        try:
            return mpq(Fraction(m))
        except ValueError:
            raise DegenerateModulus(f"cannot parse m = {m!r}")
    if isinstance(m, float):
        return m
    return mpq(m)


def _gg(m):
    g2 = 4 * (m * m - m + 1) / 3
    g3 = 4 * (m - 2) * (2 * m - 1) * (m + 1) / 27
    return g2, g3


def B_of_E(l: int, E, m):
    return -E + l * (l + 1) * (m + 1) / 3


@lru_cache(maxsize=None)
def jacobi_spectral_symbolic(l: int) -> Poly:
    """Ltilde_l(E|m) as a polynomial in E (slot x) and m (slot k)."""
    M = Poly.gen(MVAR)
    E = Poly.gen(EVAR)
    g2, g3 = _gg(M)
    Bsub = -E + (M + 1) * mpq(l * (l + 1), 3)
    L = full_spectral(l).subs("g2", g2).subs("g3", g3).subs("B", Bsub)
    return -L


@dataclass
class JacobiSpectral:
    ell: int
    m: object
    coeffs: list            # low -> high in E, exact when m is rational
    edges: list

    def __call__(self, E):
        if isinstance(E, float) and not isinstance(self.m, float):
            return float(uval([mpq(c) for c in self.coeffs], mpq(Fraction(E))))
        return sum(c * E ** i for i, c in enumerate(self.coeffs))

    @property
    def float_coeffs(self):
        return [float(c) for c in self.coeffs]


def jacobi_spectral(l: int, m, with_edges: bool = True) -> JacobiSpectral:
    m = parse_m(m)
    if m == 0 or m == 1:
        raise DegenerateModulus("m must not be 0 or 1")
    p = jacobi_spectral_symbolic(l)
    if isinstance(m, float):
        cs = [c.evaluate({MVAR: m}) for c in p.to_uni(EVAR)]
    else:
        cs = [c.partial_eval({MVAR: m}).const_value() if not c.is_zero() else mpq(0)
              for c in p.to_uni(EVAR)]
    js = JacobiSpectral(l, m, cs, [])
    if with_edges and 0 < float(m) < 1:
        js.edges = band_edges(l, m, js)
    return js


def band_edges(l: int, m, js: JacobiSpectral | None = None) -> list[float]:
    """The 2l+1 real roots of Ltilde_l, sorted.

    Roots are isolated exactly (a float m is converted to the rational it
    represents) by Sturm bisection, so exponentially narrow gaps at small
    or large m are still resolved; each is then bisected to float precision.
    """
    m = parse_m(m)
    if not 0 < float(m) < 1:
        raise DegenerateModulus("band edges need 0 < m < 1")
    mq = mpq(Fraction(m)) if isinstance(m, float) else m
    if js is None or isinstance(js.m, float):
        js = jacobi_spectral(l, mq, with_edges=False)
    exact = [mpq(c) for c in js.coeffs]
    n = count_real_roots(exact)
    if n != 2 * l + 1:
        raise AlgebraError(f"root count mismatch: Sturm gives {n}, expected {2 * l + 1}")
    edges = [refine_root(exact, lo, hi) for lo, hi in isolate_real_roots(exact)]
    if len(edges) != 2 * l + 1 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise AlgebraError("band edges are not distinct in double precision")
    return edges


# ---------------------------------------------------------------------------
# crystal momentum
# ---------------------------------------------------------------------------

def k1(E, nu_tilde, m) -> complex:
    """-i Z(alpha0) + pi/2K, one determination (additively defined mod pi/K)."""
    ctx = context(m)
    a = invert_dn_squared(E, nu_tilde, ctx)
    return -1j * jacobi_Z(a, ctx) + math.pi / (2 * ctx.K)


class CoveringPole(ValueError):
    pass


@dataclass
class _CoverNumeric:
    N: np.ndarray
    D: np.ndarray
    Yn: np.ndarray
    Yd: np.ndarray
    Kn: np.ndarray
    Kd: np.ndarray
    poles_E: np.ndarray


def _float_uni(p: Poly, g2, g3) -> np.ndarray:
    q = p.partial_eval({"g2": g2, "g3": g3}) if not isinstance(g2, float) else None
    if q is None:
        cs = [c.evaluate({"g2": g2, "g3": g3}) for c in p.to_uni("B")]
        return np.array([float(c) for c in cs][::-1])
    return np.array([float(c.const_value()) if not c.is_zero() else 0.0
                     for c in q.to_uni("B")][::-1])


@lru_cache(maxsize=None)
def _cover_numeric(l: int, m) -> _CoverNumeric:
    cov = theorem_L(l)
    g2, g3 = _gg(m)
    arrs = [_float_uni(p, g2, g3) for p in (cov.x0.num, cov.x0.den, cov.y0_over_nu.num,
                                              cov.y0_over_nu.den, cov.kappa_over_nu.num,
                                              cov.kappa_over_nu.den)]
    sing = _float_uni(L_I(l) * twisted_spectral(l, "I"), g2, g3)
    if len(sing) > 1:
        rB = np.roots(sing)
        rB = rB[np.abs(rB.imag) < 1e-9].real
    else:
        rB = np.array([])
    poles_E = np.sort(-rB + l * (l + 1) * (float(m) + 1) / 3)
    return _CoverNumeric(*arrs, poles_E)


def reduced_data(l: int, E, nu_tilde, m):
    """(calE, nu~_l, kappa_hat) at a point of the Jacobi-form spectral curve."""
    m = parse_m(m)
    cn = _cover_numeric(l, m)
    mf = float(m)
    Bv = B_of_E(l, complex(E), mf)
    d = np.polyval(cn.D, Bv)
    if abs(d) < 1e-13 * max(1.0, abs(np.polyval(np.abs(cn.D), abs(Bv)))):
        raise CoveringPole(f"E = {E} is a pole of the covering map")
    x0 = np.polyval(cn.N, Bv) / d
    yh = np.polyval(cn.Yn, Bv) / np.polyval(cn.Yd, Bv)
    kh = np.polyval(cn.Kn, Bv) / np.polyval(cn.Kd, Bv)
    calE = -x0 + 2 * (mf + 1) / 3
    return complex(calE), complex(yh * nu_tilde / 2), complex(kh)


def k_ell(l: int, E, nu_tilde, m) -> complex:
    calE, nul, kh = reduced_data(l, E, nu_tilde, m)
    if abs(calE.imag) < 1e-12 * max(1.0, abs(calE)):
        calE = calE.real
    return k1(calE, nul, float(parse_m(m))) + kh * complex(nu_tilde)


def fold(k: float, K: float) -> float:
    """Reduce mod pi/K and reflect into [0, pi/2K]."""
    p = math.pi / K
    r = math.fmod(k, p)
    if r < 0:
        r += p
    return min(r, p - r)


def nu_tilde_at(js: JacobiSpectral, E: float) -> complex:
    """Principal branch sqrt(Ltilde(E)): continuous inside each band and each
    gap, re-anchored (to the positive real or positive imaginary axis) at
    every edge where Ltilde changes sign."""
    val = float(js(float(E)))
    return complex(math.sqrt(val), 0) if val >= 0 else complex(0, math.sqrt(-val))


def locate(edges: list, E: float):
    """Band index j for E in [E_2j, E_2j+1] (top band open), else -1."""
    if E < edges[0]:
        return -1
    for j in range(0, len(edges) - 1, 2):
        if edges[j] <= E <= edges[j + 1]:
            return j // 2
    if E >= edges[-1]:
        return len(edges) // 2
    return -1


@dataclass
class DispersionSample:
    E: float
    nu_tilde: complex
    k: complex
    k_folded: float
    band_index: int
    flags: str = ""

    def row(self) -> list:
        return [self.E, self.nu_tilde.real, self.nu_tilde.imag, self.k.real, self.k.imag,
                self.k_folded, self.band_index, self.flags]


CSV_COLUMNS = ["E", "nu_re", "nu_im", "k_re", "k_im", "k_folded", "band_index", "flags"]


def dispersion_sample(l: int, E: float, m, js: JacobiSpectral | None = None,
                      nu_sign: int = 1) -> DispersionSample:
    m = parse_m(m)
    js = js or jacobi_spectral(l, m)
    return _sample_with_nu(l, E, m, nu_sign * nu_tilde_at(js, E))


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("LAME_THREADS", "1")))
    except ValueError:
        return 1


def _sample_task(args):
    l, E, m, nu = args
    return _sample_with_nu(l, E, m, nu)


@lru_cache(maxsize=64)
def _js_cached(l: int, m) -> JacobiSpectral:
    return jacobi_spectral(l, m)


def _sample_with_nu(l, E, m, nu):
    js = _js_cached(l, m)
    ctx = context(float(m))
    b = locate(js.edges, E)
    flags = []
    if min(abs(E - e) for e in js.edges) < 1e-12 * max(1.0, abs(E)):
        flags.append("edge")
    cn = _cover_numeric(l, m)
    if len(cn.poles_E) and np.min(np.abs(cn.poles_E - E)) < 1e-6:
        return DispersionSample(E, nu, complex(math.nan, math.nan), math.nan, b, "pole")
    k = k_ell(l, E, nu, m)
    if b < 0:
        flags.append("gap")
        kf = math.nan
    else:
        kf = fold(k.real, ctx.K)
    return DispersionSample(E, nu, k, kf, b, ";".join(flags))


def dispersion_scan(l: int, m, E_range, n_samples: int, workers: int | None = None
                    ) -> list[DispersionSample]:
    """Samples on an even grid.  Phase one fixes the nu~ branch at each E
    (principal square root, re-anchored at each edge); phase two evaluates
    k pointwise and runs in up to ``workers`` processes (default from the
    LAME_THREADS environment variable)."""
    m = parse_m(m)
    if not 0.05 <= float(m) <= 0.95:
        raise DegenerateModulus("dispersion scans support 0.05 <= m <= 0.95")
    js = jacobi_spectral(l, m)
    Es = [float(E) for E in np.linspace(float(E_range[0]), float(E_range[1]), int(n_samples))]
    tasks = [(l, E, m, nu_tilde_at(js, E)) for E in Es]
    workers = workers or _thread_cap()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_sample_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return [_sample_task(t) for t in tasks]
