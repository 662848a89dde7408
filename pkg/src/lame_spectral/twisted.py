"""Twisted and theta-twisted Lamé spectral polynomials.

Twisted solutions carry a factor exp(k * int dx/y); theta-twisted ones are
combinations A(x) Phi + 2 B(x) Phi' built on a point (x0, y0) of the
curve.  Both lead to coupled downward recurrences whose x^-1 coefficients
give two polynomial conditions; eliminating the auxiliary unknowns leaves a
polynomial in B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .algebra import (AlgebraError, Poly, exact_div, gcd, norm_over_e, resultant)
from .spectral import B, E, G2, G3, ONE, ZERO, q, residual, solve_downward

K = Poly.gen("k")
X0 = Poly.gen("x0")
Y0 = Poly.gen("y0")


def _c(v) -> Poly:
    return Poly.const(v)


@dataclass
class TwistedSystem:
    ell: int
    kind: str
    coeffs: dict
    eliminands: tuple
    divided_by: str | None = None
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# twisted recurrences
# ---------------------------------------------------------------------------

def _eqs_CD(l: int, k: Poly = K):
    k2 = k * k

    def eq1(j):
        return [(_c((2 * j - l) * (2 * j + l + 1)), "c", j),
                (k2 - B, "c", j + 1),
                (G2 * (-(j + 2) * q(2 * j + 3, 2)), "c", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "c", j + 3),
                (k * (2 * (4 * j + 2)), "d", j - 1),
                (k * G2 * (-2 * q(2 * j + 3, 2)), "d", j + 1),
                (k * G3 * (-2 * (j + 2)), "d", j + 2)]

    def eq2(j):
        return [(_c((2 * j - l + 3) * (2 * j + l + 4)), "d", j),
                (k2 - B, "d", j + 1),
                (G2 * (-(j + 2) * q(2 * j + 5, 2)), "d", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "d", j + 3),
                (k * (2 * (j + 2)), "c", j + 2)]

    return {"c": eq1, "d": eq2}


def _eqs_EF(l: int, k: Poly = K, e: Poly = E):
    k2 = k * k
    e2 = e * e

    def eq3(j):
        return [(_c((2 * j - l + 1) * (2 * j + l + 2)), "e", j),
                (e * (4 * j + 5) + k2 - B, "e", j + 1),
                ((G2 * (-q(2 * j + 5, 2)) + e2 * 4) * (j + 2), "e", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "e", j + 3),
                (k * (2 * (4 * j + 4)), "f", j),
                (k * e * (2 * (4 * j + 6)), "f", j + 1),
                (k * (e2 - G2 * q(1, 4)) * (2 * (4 * j + 8)), "f", j + 2)]

    def eq4(j):
        return [(_c((2 * j - l + 2) * (2 * j + l + 3)), "f", j),
                (e * (-(4 * j + 7)) + k2 - B, "f", j + 1),
                ((G2 * (-q(2 * j + 3, 2)) - e2 * 4) * (j + 2), "f", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "f", j + 3),
                (k * q(2 * j + 3, 1), "e", j + 1),
                (k * e * (-2 * (j + 2)), "e", j + 2)]

    return {"e": eq3, "f": eq4}


def twisted_degrees(l: int, kind: str) -> tuple[int, int]:
    """Degrees of (C, D) for Type I or (E, F) for Type II."""
    if kind == "I":
        return ((l - 1) // 2, (l - 3) // 2) if l % 2 else (l // 2, (l - 4) // 2)
    return ((l - 1) // 2, (l - 3) // 2) if l % 2 else (l // 2 - 1, l // 2 - 1)


def twisted_recurrence(l: int, kind: str, continue_d: bool = False) -> TwistedSystem:
    """Coupled twisted recurrence with symbolic B and k.

    The returned eliminands are the x^-1 coefficients with the spurious
    factor k divided out of the appropriate one.  For Type I the equation
    for c_-1 also involves d_-2; it is taken as zero unless ``continue_d``.
    """
    if kind == "I":
        if l < 3:
            raise ValueError("twisted Type I needs l >= 3")
        eqs = _eqs_CD(l)
        dc, dd = twisted_degrees(l, "I")
        if l % 2:
            fixed = {("d", dd): ONE}
        else:
            fixed = {("c", dc): ONE}
        plan = []
        for j in range(dc, -1, -1):
            plan.append(("d", j - 1))
            plan.append(("c", j))
        plan = [p for p in plan if p[1] >= 0 or (continue_d and p == ("d", -2))]
        # d_{-1} and c_{-1} are the conditions
        seqs = solve_downward(eqs, [p for p in plan if p[1] >= 0], fixed)
        r_d = residual(eqs["d"], "d", -1, seqs)
        if continue_d:
            # d_{-1} itself would be -r_d / mult; feed it forward to d_{-2}
            m1 = (-1 * 2 - l + 3) * (-1 * 2 + l + 4)
            seqs["d"][-1] = r_d * mpq(-1, m1)
            m2 = (-2 * 2 - l + 3) * (-2 * 2 + l + 4)
            seqs["d"][-2] = residual(eqs["d"], "d", -2, seqs) * mpq(-1, m2)
            del seqs["d"][-1]
        r_c = residual(eqs["c"], "c", -1, seqs)
        names = ("c", "d")
        res = (r_c, r_d)
        div = 0 if l % 2 else 1
    elif kind == "II":
        if l < 2:
            raise ValueError("twisted Type II needs l >= 2")
        eqs = _eqs_EF(l)
        de, df = twisted_degrees(l, "II")
        fixed = {("e", de): ONE} if l % 2 else {("f", df): ONE}
        top = max(de, df)
        plan = []
        for j in range(top, -1, -1):
            plan.append(("f", j))
            plan.append(("e", j))
        seqs = solve_downward(eqs, plan, fixed)
        r_f = residual(eqs["f"], "f", -1, seqs)
        seqs["f"][-1] = ZERO
        r_e = residual(eqs["e"], "e", -1, seqs)
        # e_-1 equation uses f_-1 with coefficient 2k(4j+4) = 0 at j = -1
        del seqs["f"][-1]
        names = ("e", "f")
        res = (r_e, r_f)
        div = 1 if l % 2 else 0
    else:
        raise ValueError(f"unknown twisted kind {kind!r}")
    a, b = res
    pair = [a, b]
    pair[div] = exact_div(pair[div], K)
    coeffs = {n: dict(seqs[n]) for n in names}
    return TwistedSystem(l, "twisted-" + kind, coeffs, tuple(pair), "k")


def _strip_k(p: Poly) -> Poly:
    while p and p.coeff("k", 0).is_zero():
        p = exact_div(p, K)
    return p


def _in_k_squared(p: Poly) -> Poly:
    """Rewrite a polynomial even in k as a polynomial in s = k^2 (stored as k)."""
    cs = p.to_uni("k")
    if any(c for c in cs[1::2]):
        raise AlgebraError("eliminand is not even in k")
    return Poly.from_uni(cs[0::2], "k")


def eliminate_k(a: Poly, b: Poly) -> Poly:
    """Resultant in k^2 of two eliminands that are even in k.

    Powers of k dividing an eliminand are removed first.  The recurrences
    are invariant under (k, odd-index coefficients) -> (-k, -...), so after
    that both conditions depend on k only through k^2.
    """
    a, b = _strip_k(a), _strip_k(b)
    if a.degree("k") <= 0 or b.degree("k") <= 0:
        raise AlgebraError("eliminand free of k")
    return resultant(_in_k_squared(a), _in_k_squared(b), "k")


def _normalize(p: Poly) -> Poly:
    return p.primitive().monic("B")


def twisted_degree_law(l: int, kind: str) -> int:
    if kind == "I":
        if l < 3:
            return 0
        return (l * l - 1) // 4 if l % 2 else l * l // 4 - 1
    if l < 2:
        return 0
    return (l * l - 1) // 4 if l % 2 else l * l // 4


# ---------------------------------------------------------------------------
# theta-twisted recurrences
# ---------------------------------------------------------------------------

def _eqs_AB(l: int, x0: Poly = X0, y0: Poly = Y0, k: Poly | None = None):
    """Hermite-Krichever recurrences; k = None gives the theta-twisted case."""
    x02 = x0 * x0

    if k is None:
        def eqa(j):
            return [(_c((2 * j - l + 1) * (2 * j + l + 2)), "a", j),
                    (x0 * (4 * j + 5) - B, "a", j + 1),
                    ((G2 * (-q(2 * j + 5, 2)) + x02 * 4) * (j + 2), "a", j + 2),
                    (G3 * (-(j + 2) * (j + 3)), "a", j + 3),
                    (y0 * (-2 * (4 * j + 6)), "b", j + 1),
                    (x0 * y0 * (-4 * (j + 2)), "b", j + 2)]

        def eqb(j):
            return [(_c((2 * j - l + 2) * (2 * j + l + 3)), "b", j),
                    (x0 * (-(4 * j + 7)) - B, "b", j + 1),
                    ((G2 * (-q(2 * j + 3, 2)) - x02 * 4) * (j + 2), "b", j + 2),
                    (G3 * (-(j + 2) * (j + 3)), "b", j + 3),
                    (y0 * (j + 2), "a", j + 2)]
        return {"a": eqa, "b": eqb}

    k2 = k * k

    def hk1(j):
        return [(_c((2 * j - l + 1) * (2 * j + l + 2)), "a", j),
                (x0 * (4 * j + 5) + k2 - B, "a", j + 1),
                ((G2 * (-q(2 * j + 5, 2)) + x02 * 4 - k * y0 * 2) * (j + 2), "a", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "a", j + 3),
                (k * (8 * (j + 1)), "b", j),
                ((k * x0 - y0) * (4 * (2 * j + 3)), "b", j + 1),
                ((k * (x02 * 4 - G2) - x0 * y0 * 2) * (2 * (j + 2)), "b", j + 2)]

    def hk2(j):
        return [(_c((2 * j - l + 2) * (2 * j + l + 3)), "b", j),
                (x0 * (-(4 * j + 7)) + k2 - B, "b", j + 1),
                ((G2 * (-q(2 * j + 3, 2)) - x02 * 4 + k * y0 * 2) * (j + 2), "b", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "b", j + 3),
                (k * (2 * j + 3), "a", j + 1),
                ((k * x0 * 2 - y0) * (-(j + 2)), "a", j + 2)]
    return {"a": hk1, "b": hk2}


def theta_degrees(l: int) -> tuple[int, int]:
    return ((l - 1) // 2, (l - 5) // 2) if l % 2 else (l // 2 - 2, l // 2 - 1)


def hk_degrees(l: int) -> tuple[int, int]:
    return ((l - 1) // 2, (l - 3) // 2) if l % 2 else (l // 2 - 1, l // 2 - 1)


def _run_ab(eqs, l: int, degs: tuple[int, int]):
    da, db = degs
    fixed = {("a", da): ONE} if l % 2 else {("b", db): ONE}
    plan = []
    for j in range(max(da, db), -1, -1):
        plan.append(("b", j))
        plan.append(("a", j))
    seqs = solve_downward(eqs, plan, fixed)
    r_b = residual(eqs["b"], "b", -1, seqs)
    # the a_{-1} equation involves b_{-1} only through the factor 8k(j+1) = 0
    r_a = residual(eqs["a"], "a", -1, seqs)
    return seqs, r_a, r_b


def theta_twisted_system(l: int) -> TwistedSystem:
    """Theta-twisted recurrence with symbolic B, x0, y0.

    Returns the x^-1 conditions (a_-1, b_-1) with the factor y0 divided out
    of b_-1 (odd l) or a_-1 (even l).
    """
    if l < 4:
        raise ValueError("theta-twisted polynomials need l >= 4")
    seqs, r_a, r_b = _run_ab(_eqs_AB(l), l, theta_degrees(l))
    if l % 2:
        r_b = exact_div(r_b, Y0)
    else:
        r_a = exact_div(r_a, Y0)
    return TwistedSystem(l, "theta-twisted", {n: dict(v) for n, v in seqs.items()},
                         (r_a, r_b), "y0")


def curve_f(x: Poly) -> Poly:
    return x ** 3 * 4 - G2 * x - G3


def reduce_y0(p: Poly) -> Poly:
    """Replace y0^2 by 4x0^3 - g2 x0 - g3 in a polynomial even in y0."""
    cs = p.to_uni("y0")
    if any(c for c in cs[1::2]):
        raise AlgebraError("polynomial is not even in y0")
    f = curve_f(X0)
    out = ZERO
    for c in reversed(cs[0::2]):
        out = out * f + c
    return out


# ---------------------------------------------------------------------------
# spectral polynomials
# ---------------------------------------------------------------------------

def theta_degree_law(l: int) -> int:
    if l < 4:
        return 0
    return (l + 1) * (l - 3) // 4 if l % 2 else l * (l - 2) // 4


def _finish(r: Poly, law: int, label: str) -> Poly:
    if r.is_zero():
        raise AlgebraError(f"{label}: elimination produced zero")
    lc = r.leading_coeff("B")
    if not lc.is_const():
        # strip a B-free content factor, if any
        g = lc
        for c in r.to_uni("B"):
            if c:
                g = gcd(g, c)
        r = exact_div(r, g)
    p = _normalize(r)
    if not p.leading_coeff("B").is_const():
        raise AlgebraError(f"{label}: leading coefficient in B is not constant")
    if p.degree("B") != law:
        raise AlgebraError(f"{label}: B-degree {p.degree('B')} differs from expected {law}")
    return p


@lru_cache(maxsize=None)
def twisted_spectral(l: int, kind: str) -> Poly:
    """Twisted spectral polynomial Lt^I (in B, g2, g3) or Lt^II (also in e)."""
    if l < 1:
        raise ValueError("l must be positive")
    if (kind == "I" and l < 3) or (kind == "II" and l < 2):
        return ONE
    a, b = twisted_recurrence(l, kind).eliminands
    return _finish(eliminate_k(a, b), twisted_degree_law(l, kind), f"twisted-{kind} l={l}")


@lru_cache(maxsize=None)
def theta_twisted_spectral(l: int) -> Poly:
    """Theta-twisted spectral polynomial L-theta (in B, g2, g3)."""
    if l < 1:
        raise ValueError("l must be positive")
    if l < 4:
        return ONE
    a, b = (reduce_y0(p) for p in theta_twisted_system(l).eliminands)
    return _finish(resultant(a, b, "x0"), theta_degree_law(l), f"theta-twisted l={l}")


def full_twisted_spectral(l: int) -> Poly:
    """Lt^I times the norm of Lt^II over the branch values; degree l^2 - 1."""
    return twisted_spectral(l, "I") * norm_over_e(twisted_spectral(l, "II"))


# rational curve with rational branch values 1, 2, -3
SPECIAL_POINT = {"g2": 28, "g3": -24, "e": 1}


def specialized_degree(l: int, kind: str, point: dict | None = None) -> int:
    """B-degree of a twisted ("I", "II") or theta ("theta") spectral polynomial
    computed with g2, g3, e fixed to rationals before elimination.

    The leading coefficient in B is a nonzero rational, so the degree is
    that of the generic polynomial.
    """
    point = SPECIAL_POINT if point is None else point
    if kind == "theta":
        if l < 4:
            return 0
        a, b = (reduce_y0(p).partial_eval(point) for p in theta_twisted_system(l).eliminands)
        r = resultant(a, b, "x0")
    else:
        if (kind == "I" and l < 3) or (kind == "II" and l < 2):
            return 0
        a, b = (p.partial_eval(point) for p in twisted_recurrence(l, kind).eliminands)
        r = eliminate_k(a, b)
    return r.degree("B")
