"""Covering of the elliptic curve by the Lamé spectral curve.

For integer l the Lamé spectral curve nu^2 = L(B) covers the base curve
y^2 = 4x^3 - g2 x - g3 through (B, nu) -> (x0(B), y0_hat(B) nu), and an
auxiliary function k = k_hat(B) nu completes the Hermite-Krichever data.
All three rational functions are assembled from the ordinary, twisted and
theta-twisted spectral polynomials.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .algebra import (AlgebraError, Poly, RatFunc, discriminant, exact_div, norm_over_e)
from .spectral import E, G2, G3, L_I, L_II, ZERO, full_spectral
from .twisted import (_eqs_AB, hk_degrees, theta_twisted_spectral, twisted_spectral)


@dataclass
class CoveringMap:
    ell: int
    x0: RatFunc
    y0_over_nu: RatFunc
    kappa_over_nu: RatFunc
    # x0 = N / D with D = L_I Lt_I^2 and y0_hat = c T / (L_I^2 Lt_I^3)
    N: Poly
    D: Poly
    T: Poly
    c_y: object

    def degree(self) -> int:
        return self.x0.degree()


def _prefactors(l: int):
    n = l * (l + 1)
    return mpq(4, n * n), mpq(16, n ** 3), mpq(-(l - 1) * (l + 2), n)


@lru_cache(maxsize=None)
def theorem_L(l: int) -> CoveringMap:
    """x0(B), y0/nu and k/nu for degree l.

    x0 is formed with a symbolic branch value e; the e-dependence must
    cancel identically (the formula gives the same function for all three
    branch values).
    """
    if l < 1:
        raise ValueError("l must be positive")
    cx, cy, ck = _prefactors(l)
    LI, LII = L_I(l), L_II(l)
    LtI, LtII = twisted_spectral(l, "I"), twisted_spectral(l, "II")
    Lth = theta_twisted_spectral(l)
    D = LI * LtI * LtI
    N = E * D + LII * LtII * LtII * cx
    if N.degree("e") > 0:
        raise AlgebraError(f"x0 depends on the choice of branch value for l={l}")
    T = norm_over_e(LtII)
    x0 = RatFunc(N, D)
    y0 = RatFunc(T * cy, LI * LI * LtI ** 3)
    kap = RatFunc(Lth * ck, LI * LtI) if Lth.degree("B") >= 0 and ck else RatFunc(ZERO)
    return CoveringMap(l, x0, y0, kap, N, D, T, cy)


def x0_for_branch(l: int, e_value) -> RatFunc:
    """x0 built from one concrete branch value (a root of the cubic).

    ``e_value`` is substituted before any simplification, so comparing the
    three branches is an independent check on the symbolic cancellation.
    """
    cx, _, _ = _prefactors(l)
    LI, LII = L_I(l), L_II(l)
    LtI, LtII = twisted_spectral(l, "I"), twisted_spectral(l, "II")
    sub = {"e": e_value}
    num = LII.partial_eval(sub) * LtII.partial_eval(sub) ** 2 * cx
    den = LI * LtI * LtI
    return RatFunc(den * Poly.const(e_value) + num, den)


def curve_identity_residual(l: int) -> Poly:
    """c^2 T^2 prod L_II - (4 N^3 - g2 N D^2 - g3 D^3); zero iff the identity holds.

    Equivalent to y0_hat^2 L(B) = 4 x0^3 - g2 x0 - g3 after clearing
    denominators by L_I^3 Lt_I^6.
    """
    cov = theorem_L(l)
    N, D, T = cov.N, cov.D, cov.T
    lhs = T * T * norm_over_e(L_II(l)) * (cov.c_y * cov.c_y)
    rhs = N ** 3 * 4 - G2 * N * D * D - G3 * D ** 3
    return lhs - rhs


def curve_identity_at(l: int, point: dict) -> bool:
    """Exact check of y0_hat^2 L = 4x0^3 - g2 x0 - g3 at a rational point."""
    cov = theorem_L(l)
    x0 = cov.x0.evaluate(point)
    y0 = cov.y0_over_nu.evaluate(point)
    Lv = full_spectral(l).evaluate(point)
    return y0 * y0 * Lv == 4 * x0 ** 3 - point["g2"] * x0 - point["g3"]


@dataclass
class ReductionPolynomial:
    ell: int
    P: Poly
    P_hat: Poly


@lru_cache(maxsize=None)
def reduction_polynomial(l: int) -> ReductionPolynomial:
    """P = (y0/nu)^-1 dx0/dB, which must be a polynomial, and P_hat = 4P/(l(l+1))."""
    cov = theorem_L(l)
    N, D = cov.N, cov.D
    LtI = twisted_spectral(l, "I")
    num = N.diff("B") * D - N * D.diff("B")
    den = cov.T * LtI * cov.c_y
    try:
        P = exact_div(num, den)
    except AlgebraError as exc:
        raise AlgebraError(f"reduction quotient is not a polynomial for l={l}") from exc
    P_hat = P * mpq(4, l * (l + 1))
    return ReductionPolynomial(l, P, P_hat)


def branch_degeneracy_check(l: int = 4) -> list:
    """Values of J at which P_hat has a repeated root (J = 0, 1 rays excluded).

    For l <= 2 P_hat has degree < 2 and the result is empty.
    """
    from .moduli import j_roots_of_isobaric
    P = reduction_polynomial(l).P_hat
    if P.degree("B") < 2:
        return []
    d = discriminant(P, "B")
    return j_roots_of_isobaric(d)


# ---------------------------------------------------------------------------
# Hermite-Krichever coefficients
# ---------------------------------------------------------------------------

@dataclass
class HKSolution:
    ell: int
    A: list
    Bc: list
    x0: object
    y0: object
    kappa: object
    residuals: tuple


class QNu:
    """Element a + b nu of Q(nu) with nu^2 = L fixed."""
    __slots__ = ("a", "b", "L")

    def __init__(self, a, b, L):
        self.a, self.b, self.L = mpq(a), mpq(b), L

    def _lift(self, o):
        return o if isinstance(o, QNu) else QNu(o, 0, self.L)

    def __add__(self, o):
        o = self._lift(o)
        return QNu(self.a + o.a, self.b + o.b, self.L)

    __radd__ = __add__

    def __neg__(self):
        return QNu(-self.a, -self.b, self.L)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        return QNu(self.a * o.a + self.L * self.b * o.b, self.a * o.b + self.b * o.a, self.L)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QNu(1, 0, self.L)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, o):
        if isinstance(o, QNu):
            if o.b:
                raise TypeError("division by an irrational element")
            o = o.a
        return QNu(self.a / o, self.b / o, self.L)

    def __eq__(self, o):
        o = self._lift(o)
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"({self.a}) + ({self.b}) nu"


def _solve_values(eqs, l, degs, values):
    """Downward HK recurrence with coefficients evaluated in a field."""
    da, db = degs
    seqs = {"a": {}, "b": {}}
    if l % 2:
        seqs["a"][da] = 1
    else:
        seqs["b"][db] = 1

    def run(name, j):
        lead, acc = None, 0
        for coef, m, i in eqs[name](j):
            if m == name and i == j:
                lead = coef
                continue
            v = seqs[m].get(i)
            if v is not None and coef:
                acc = acc + coef.evaluate(values) * v
        return lead, acc

    for j in range(max(da, db), -1, -1):
        for name in ("b", "a"):
            if j in seqs[name]:
                continue
            lead, acc = run(name, j)
            seqs[name][j] = acc * (-1 / lead.const_value())
    res_a = run("a", -1)[1]
    res_b = run("b", -1)[1]
    A = [seqs["a"].get(j, 0) for j in range(da + 1)]
    Bc = [seqs["b"].get(j, 0) for j in range(db + 1)]
    return A, Bc, (res_a, res_b)


def _is_rational(v) -> bool:
    return isinstance(v, int) or type(v) is type(mpq(0)) or (
        hasattr(v, "denominator") and not isinstance(v, float))


def hk_coefficients(l: int, B_num, nu_branch: int = 1, g2=None, g3=None, params=None):
    """Hermite-Krichever solution data at a numeric or exact B.

    With rational B, g2, g3 the computation runs exactly in Q(nu),
    nu^2 = L(B), and the residuals must vanish identically.  With floats it
    runs in complex doubles with nu = nu_branch * sqrt(L(B)) and the
    residuals are checked to a relative tolerance of 1e-10.
    """
    if params is not None:
        g2, g3 = params.g2, params.g3
    cov = theorem_L(l)
    degs = hk_degrees(l)
    eqs = _eqs_AB(l, k=Poly.gen("k"))
    if all(_is_rational(v) for v in (B_num, g2, g3)):
        pt = {"B": mpq(B_num), "g2": mpq(g2), "g3": mpq(g3)}
        if cov.D.evaluate(pt) == 0 or cov.kappa_over_nu.den.evaluate(pt) == 0:
            raise AlgebraError("B is a pole of the covering map")
        Lv = full_spectral(l).evaluate(pt)
        x0 = cov.x0.evaluate(pt)
        y0 = QNu(0, nu_branch * cov.y0_over_nu.evaluate(pt), Lv)
        kap = QNu(0, nu_branch * cov.kappa_over_nu.evaluate(pt), Lv)
        vals = dict(pt, x0=x0, y0=y0, k=kap)
        A, Bc, res = _solve_values(eqs, l, degs, vals)
        if any(res):
            raise AlgebraError("Hermite-Krichever residuals do not vanish")
        return HKSolution(l, A, Bc, x0, y0, kap, res)
    pt = {"B": complex(B_num), "g2": complex(g2), "g3": complex(g3)}
    dx = cov.x0.den.evaluate(pt)
    dk = cov.kappa_over_nu.den.evaluate(pt)
    if abs(dx) < 1e-300 or abs(dk) < 1e-300:
        raise AlgebraError("B is a pole of the covering map")
    nu = nu_branch * cmath.sqrt(full_spectral(l).evaluate(pt))
    x0 = cov.x0.num.evaluate(pt) / dx
    y0 = cov.y0_over_nu.num.evaluate(pt) / cov.y0_over_nu.den.evaluate(pt) * nu
    kap = cov.kappa_over_nu.num.evaluate(pt) / dk * nu
    vals = dict(pt, x0=x0, y0=y0, k=kap)
    A, Bc, res = _solve_values(eqs, l, degs, vals)
    # size of the terms that cancel in each residual
    scale = max([abs(c) for c in A + Bc] + [1.0]) * max(1.0, abs(pt["B"]), abs(x0) ** 2,
                                                         abs(pt["g2"]), abs(pt["g3"]))
    if any(abs(r) > 1e-10 * scale for r in res):
        raise AlgebraError("Hermite-Krichever residuals do not vanish")
    return HKSolution(l, A, Bc, x0, y0, kap, res)


# ---------------------------------------------------------------------------
# numerical check of the hyperelliptic reduction
# ---------------------------------------------------------------------------

@dataclass
class ReductionCheck:
    ell: int
    segment: tuple
    lhs: float          # int P dB / nu along the B segment
    rhs: float          # int dx0 / y0 along the image, by Carlson R_F
    x_image: tuple

    @property
    def error(self) -> float:
        return abs(self.lhs - self.rhs)


def reduction_identity_numeric(l: int, B_a: float, B_b: float, g2=1.0, g3=0.0,
                               nu_branch: int = 1) -> ReductionCheck:
    """Compare int_{B_a}^{B_b} P(B) dB / nu with int dx0 / y0 over the image.

    The segment must keep L(B) > 0 and its image must stay to the right of
    the largest real branch point, so that y0 = y0_hat nu never vanishes.
    The left side is adaptive quadrature in B; the right side uses
    int_x^oo dt / sqrt(4t^3 - g2 t - g3) = R_F(x - e1, x - e2, x - e3).
    """
    import numpy as np
    from scipy import integrate

    from .elliptic import carlson_rf

    cov = theorem_L(l)
    P = reduction_polynomial(l).P
    L = full_spectral(l)
    g = {"g2": g2, "g3": g3}

    def at(p, B):
        return float(p.evaluate(dict(g, B=B)))

    Bs = np.linspace(B_a, B_b, 201)
    if min(at(L, b) for b in Bs) <= 0:
        raise ValueError("L(B) must stay positive on the segment")

    def integrand(B):
        return nu_branch * at(P, B) / np.sqrt(at(L, B))

    lhs = integrate.quad(integrand, B_a, B_b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]

    es = np.roots([4.0, 0.0, -float(g2), -float(g3)])
    if np.max(np.abs(es.imag)) > 1e-12:
        raise ValueError("the check needs three real branch points")
    es = np.sort(es.real)[::-1]

    def x0(B):
        return at(cov.x0.num, B) / at(cov.x0.den, B)

    xs = [x0(b) for b in Bs]
    if min(xs) <= es[0]:
        raise ValueError("image leaves the real half-line x > e1")
    ys = [nu_branch * at(cov.y0_over_nu.num, b) / at(cov.y0_over_nu.den, b) * np.sqrt(at(L, b))
          for b in Bs]
    if min(ys) < 0 < max(ys):
        raise ValueError("y0 changes sign on the segment")
    sign = 1.0 if ys[0] > 0 else -1.0

    def G(x):   # antiderivative of dx / sqrt(f) on the upper sheet
        return -carlson_rf(x - es[0], x - es[1], x - es[2]).real

    xa, xb = xs[0], xs[-1]
    rhs = sign * (G(xb) - G(xa))
    return ReductionCheck(l, (B_a, B_b), lhs, rhs, (xa, xb))
