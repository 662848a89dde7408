"""Lamé polynomials and spectral polynomials from coefficient recurrences.

The Lamé equation on the curve y^2 = 4x^3 - g2 x - g3 is

    (y d/dx)^2 Psi = [l(l+1) x + B] Psi.

Type I solutions are C(x) or D(x) y, Type II solutions (attached to a
branch value e) are E(x) sqrt(x-e) or F(x) y / sqrt(x-e).  Matching powers
of x gives downward recurrences for the coefficients; a polynomial
solution exists exactly when the coefficient of x^-1 vanishes, which is a
polynomial condition on B.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from gmpy2 import mpq

from .algebra import AlgebraError, Poly, RatFunc, exact_div, norm_over_e, symmetrize_over_e

B = Poly.gen("B")
G2 = Poly.gen("g2")
G3 = Poly.gen("g3")
E = Poly.gen("e")
X = Poly.gen("x")
ONE = Poly.const(1)
ZERO = Poly()


def q(a, b=1):
    return mpq(a, b)


def _c(v) -> Poly:
    return Poly.const(v)


# An equation is a function eq(j) -> list of (coefficient, sequence name, index).
Equation = Callable[[int], list]


def solve_downward(equations: dict[str, Equation], plan: Iterable[tuple[str, int]],
                   fixed: dict[tuple[str, int], Poly]) -> dict[str, dict[int, Poly]]:
    """Run a coupled downward recurrence.

    ``equations[name](j)`` is the equation used to solve for ``name_j``.
    ``plan`` lists the unknowns in the order they are determined;
    ``fixed`` holds preassigned coefficients (the unit tops).  Unassigned
    coefficients read as zero.
    """
    seqs: dict[str, dict[int, Poly]] = {n: {} for n in equations}
    for (n, j), v in fixed.items():
        seqs[n][j] = v
    for n, j in plan:
        if (n, j) in fixed:
            continue
        lead = None
        acc = ZERO
        for coef, m, i in equations[n](j):
            if m == n and i == j:
                lead = coef if lead is None else lead + coef
                continue
            v = seqs[m].get(i)
            if v is not None and coef:
                acc = acc + coef * v
        if lead is None or lead.is_zero():
            raise AlgebraError(f"vanishing leading multiplier for {n}_{j}")
        lv = lead.const_value() if lead.is_const() else None
        if lv is None:
            raise AlgebraError("non-constant leading multiplier")
        seqs[n][j] = acc * (-1 / lv)
    return seqs


def residual(eq: Equation, name: str, j: int, seqs) -> Poly:
    """Equation at index j with the unknown ``name_j`` itself set to zero."""
    acc = ZERO
    for coef, m, i in eq(j):
        if m == name and i == j:
            continue
        v = seqs[m].get(i)
        if v is not None and coef:
            acc = acc + coef * v
    return acc


# ---------------------------------------------------------------------------
# ordinary recurrences
# ---------------------------------------------------------------------------

def eq_C(l: int) -> Equation:
    def f(j):
        return [(_c((2 * j - l) * (2 * j + l + 1)), "c", j),
                (-B, "c", j + 1),
                (G2 * (-(j + 2) * q(2 * j + 3, 2)), "c", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "c", j + 3)]
    return f


def eq_D(l: int) -> Equation:
    def f(j):
        return [(_c((2 * j - l + 3) * (2 * j + l + 4)), "d", j),
                (-B, "d", j + 1),
                (G2 * (-(j + 2) * q(2 * j + 5, 2)), "d", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "d", j + 3)]
    return f


def eq_E(l: int, e: Poly = E) -> Equation:
    e2 = e * e

    def f(j):
        return [(_c((2 * j - l + 1) * (2 * j + l + 2)), "e", j),
                (e * (4 * j + 5) - B, "e", j + 1),
                ((G2 * (-q(2 * j + 5, 2)) + e2 * 4) * (j + 2), "e", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "e", j + 3)]
    return f


def eq_F(l: int, e: Poly = E) -> Equation:
    e2 = e * e

    def f(j):
        return [(_c((2 * j - l + 2) * (2 * j + l + 3)), "f", j),
                (e * (-(4 * j + 7)) - B, "f", j + 1),
                ((G2 * (-q(2 * j + 3, 2)) - e2 * 4) * (j + 2), "f", j + 2),
                (G3 * (-(j + 2) * (j + 3)), "f", j + 3)]
    return f


def _single(eq: Equation, name: str, top: int):
    plan = [(name, j) for j in range(top - 1, -1, -1)]
    seqs = solve_downward({name: eq}, plan, {(name, top): ONE})
    return [seqs[name].get(j, ZERO) for j in range(top + 1)], residual(eq, name, -1, seqs)


_FAMILIES = {
    "C": (eq_C, "c", lambda l: l // 2, 0),
    "D": (eq_D, "d", lambda l: (l - 3) // 2, 1),
    "E": (eq_E, "e", lambda l: (l - 1) // 2, 1),
    "F": (eq_F, "f", lambda l: (l - 2) // 2, 0),
}


def run_recurrence(family: str, l: int):
    """Coefficients of the family C, D, E or F for degree l.

    Returns ``(coeffs, residual)``: ``coeffs`` low to high with unit top,
    ``residual`` the x^-1 coefficient (the spectral condition up to scale).
    """
    _check_l(l)
    family = family.upper()[0]
    eqf, name, top, parity = _FAMILIES[family]
    if l % 2 != parity or top(l) < 0:
        raise ValueError(f"family {family} has no polynomial solutions for l={l}")
    return _single(eqf(l), name, top(l))


def _check_l(l: int) -> None:
    if not isinstance(l, int) or l < 1:
        raise ValueError(f"degree l must be a positive integer, got {l!r}")


@lru_cache(maxsize=None)
def _type1(l: int):
    if l % 2:
        if l < 3:
            return None
        return _single(eq_D(l), "d", (l - 3) // 2)
    return _single(eq_C(l), "c", l // 2)


@lru_cache(maxsize=None)
def _type2(l: int):
    if l % 2:
        return _single(eq_E(l), "e", (l - 1) // 2)
    return _single(eq_F(l), "f", (l - 2) // 2)


def L_I(l: int) -> Poly:
    """Type I spectral polynomial (monic in B); 1 when l = 1."""
    _check_l(l)
    r = _type1(l)
    if r is None:
        return ONE
    return r[1].monic("B")


def L_II(l: int) -> Poly:
    """Type II spectral polynomial in B, e, g2, g3 (monic in B)."""
    _check_l(l)
    return _type2(l)[1].monic("B")


spectral_poly_I = L_I
spectral_poly_II = L_II


def full_spectral(l: int, check: bool = False) -> Poly:
    """L_I times the norm of L_II over the three branch values.

    With ``check`` the norm is recomputed by elementary-symmetric reduction
    of the product of the three conjugates and compared.
    """
    n2 = norm_over_e(L_II(l))
    if check:
        from .algebra import conjugates
        a, b, c = conjugates(L_II(l))
        alt = symmetrize_over_e(a * b * c)
        if alt != n2:
            raise AlgebraError("norm over branch values disagrees between methods")
    return L_I(l) * n2


def spectral_degrees(l: int) -> dict:
    nI = L_I(l).degree("B")
    nII = L_II(l).degree("B")
    return {"N_I": max(nI, 0), "N_II": nII, "total": max(nI, 0) + 3 * nII}


def _substitute(p: Poly, B_value, e_value) -> Poly:
    if e_value is not None:
        p = p.subs("e", e_value)
    if B_value is not None:
        p = p.subs("B", B_value)
    return p


def lame_polynomial(l: int, kind: str, B_value=None, e_value=None) -> list[Poly]:
    """Coefficients (low to high) of C, D, E or F before imposing L = 0.

    ``kind`` is "I" or "II".  Coefficients are polynomials in B (and e);
    B and e may be replaced by rationals or polynomials.
    """
    _check_l(l)
    r = _type1(l) if kind == "I" else _type2(l)
    if r is None:
        return []
    return [_substitute(c, B_value, e_value) for c in r[0]]


def lame_residual(l: int, kind: str, B_value=None, e_value=None) -> Poly:
    """The x^-1 coefficient of the recurrence; it vanishes at spectral roots."""
    _check_l(l)
    r = _type1(l) if kind == "I" else _type2(l)
    if r is None:
        return ZERO
    return _substitute(r[1], B_value, e_value)


def lame_polynomial_reduced(l: int, kind: str) -> list[Poly]:
    """Lamé polynomial coefficients reduced modulo its spectral polynomial.

    Each coefficient is returned as a polynomial in B of degree below
    deg L (B then stands for a root of L).
    """
    from .algebra import prem
    L = L_I(l) if kind == "I" else L_II(l)
    out = []
    for c in lame_polynomial(l, kind):
        if L.degree("B") > 0 and c.degree("B") >= L.degree("B"):
            c = prem(c, L, "B")
        out.append(c)
    return out


def lame_function_string(l: int, kind: str) -> str:
    """Human-readable form of the Type I or II Lamé polynomial."""
    cs = lame_polynomial(l, kind)
    if not cs:
        return "1"
    poly = sum((c * X ** j for j, c in enumerate(cs)), ZERO)
    if kind == "I":
        return f"({poly})" + ("*y" if l % 2 else "")
    return f"({poly})" + ("*sqrt(x-e)" if l % 2 else "*y/sqrt(x-e)")


# ---------------------------------------------------------------------------
# Hermite-Halphen polynomial
# ---------------------------------------------------------------------------

def _ydx(F: Poly) -> Poly:
    """y d/dx on an expression P0(x) + P1(x) y, with y^2 = 4x^3 - g2 x - g3.

    Polynomials in x are stored as P0 + y*P1 using the variable y0 as y.
    """
    y = Poly.gen("y0")
    f = X ** 3 * 4 - G2 * X - G3
    fp = X ** 2 * 12 - G2
    p0 = F.coeff("y0", 0)
    p1 = F.coeff("y0", 1)
    # y d/dx (p0 + p1 y) = y p0' + p1' y^2 + p1 y y' ; y y' = f'/2
    return y * p0.diff("x") + p1.diff("x") * f + p1 * fp * q(1, 2)


@lru_cache(maxsize=None)
def hermite_halphen(l: int) -> Poly:
    """Monic degree-l polynomial F(x) in x, B, g2, g3.

    F is the product of two Lamé solutions; it solves the third-order
    equation  (y d/dx)^3 F - 4(q+B) (y d/dx) F - 2 q' y F = 0 with
    q = l(l+1) x.
    Its coefficients follow from a downward recurrence.
    """
    _check_l(l)
    n = l * (l + 1)
    # Apply the operator to x^k and read off the coefficient multipliers.
    # T(x^k) is an x-polynomial; F = sum f_k x^k.  Solve top-down.
    images = {}
    for k in range(l + 1):
        xk = X ** k
        t1 = _ydx(xk)
        t2 = _ydx(t1)
        t3 = _ydx(t2)
        qB = X * n + B
        img = t3 - qB * t1 * 4 - Poly.gen("y0") * xk * (2 * n)
        # everything carries a single factor y
        img = img.coeff("y0", 1)
        images[k] = img.to_uni("x")
    coeffs = {l: ONE}
    # image of x^k has degree k in x, with a B-free leading coefficient
    for k in range(l - 1, -1, -1):
        deg = k
        lead = images[k][deg] if deg < len(images[k]) else ZERO
        acc = ZERO
        for kk, ck in coeffs.items():
            im = images[kk]
            if deg < len(im):
                acc = acc + ck * im[deg]
        lv = lead.const_value()
        if not lv:
            raise AlgebraError("degenerate Hermite-Halphen recurrence")
        coeffs[k] = acc * (-1 / lv)
    F = sum((c * X ** k for k, c in coeffs.items()), ZERO)
    return F


def hermite_halphen_residual(l: int) -> Poly:
    """Operator applied to the Hermite-Halphen polynomial; must vanish."""
    F = hermite_halphen(l)
    n = l * (l + 1)
    t1 = _ydx(F)
    t3 = _ydx(_ydx(t1))
    return (t3 - (X * n + B) * t1 * 4 - Poly.gen("y0") * F * (2 * n)).coeff("y0", 1)


def hermite_halphen_monic_B(l: int) -> Poly:
    """The Hermite-Halphen polynomial rescaled to be monic in B."""
    F = hermite_halphen(l)
    return F / F.coeff("B", l).const_value()


def nu_squared(l: int) -> Poly:
    """nu^2 from the Hermite-Halphen polynomial F, normalized monic in B.

    nu^2 = -1/2 F [ (f'/2) F' + f F'' ] + 1/4 f F'^2 + (l(l+1) x + B) F^2,
    with f = 4x^3 - g2 x - g3.  The result should not depend on x.
    """
    F = hermite_halphen_monic_B(l)
    f = X ** 3 * 4 - G2 * X - G3
    fp = f.diff("x")
    F1 = F.diff("x")
    F2 = F1.diff("x")
    return (F * (fp * q(1, 2) * F1 + f * F2)) * q(-1, 2) + f * F1 * F1 * q(1, 4) + \
        (X * (l * (l + 1)) + B) * F * F


def nu_squared_check(l: int) -> Poly:
    """nu^2 as a polynomial in B; raises if any x-dependence survives."""
    v = nu_squared(l)
    if v.degree("x") > 0:
        raise AlgebraError(f"nu^2 depends on x for l={l}")
    return v


def weight_of(p: Poly) -> Fraction | None:
    return p.isobaric_weight()
