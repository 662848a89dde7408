"""Elliptic moduli: the m <-> (g2, g3, e_gamma, J) dictionary and Cohn polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from gmpy2 import mpq

from .algebra import (AlgebraError, Poly, discriminant, norm_over_e, resultant,
                      squarefree_part, count_real_roots, uni_coeffs, uval, _trim)
from .spectral import L_I, L_II, spectral_degrees

G2, G3, J = Poly.gen("g2"), Poly.gen("g3"), Poly.gen("x")   # J lives in the x slot


class DegenerateModulus(ValueError):
    pass


@dataclass
class EllipticParams:
    m: object
    e1: object
    e2: object
    e3: object
    g2: object
    g3: object
    J: object
    A: int = 1
    extras: dict = field(default_factory=dict)   # K, K', nome, filled by the numerics

    @property
    def exact(self) -> bool:
        return not isinstance(self.m, complex)

    @property
    def e(self):
        return (self.e1, self.e2, self.e3)

    @property
    def delta(self):
        return self.g2 ** 3 - 27 * self.g3 ** 2


def _as_m(m):
    if isinstance(m, (complex, float)):
        return complex(m) if isinstance(m, complex) and m.imag else mpq(Fraction(m.real if isinstance(m, complex) else m))
    if isinstance(m, str):
        return mpq(Fraction(m))
    return mpq(m)


def params_from_m(m) -> EllipticParams:
    """Weierstrass data for the Jacobi parameter m, normalized by e1 - e3 = 1.

    Rational input (int, str such as "1/2", Fraction, mpq, or a float that is
    converted exactly) gives exact fields; genuinely complex m gives complex
    fields.
    """
    m = _as_m(m)
    if m == 0 or m == 1:
        raise DegenerateModulus("m must not be 0 or 1")
    e1, e2, e3 = (2 - m) / 3, (2 * m - 1) / 3, -(m + 1) / 3
    g2 = 4 * (m * m - m + 1) / 3
    g3 = 4 * (m - 2) * (2 * m - 1) * (m + 1) / 27
    delta = g2 ** 3 - 27 * g3 ** 2
    if delta == 0:
        raise DegenerateModulus("discriminant vanishes")
    return EllipticParams(m, e1, e2, e3, g2, g3, g2 ** 3 / delta)


def J_of(g2, g3):
    return g2 ** 3 / (g2 ** 3 - 27 * g3 ** 2)


# ---------------------------------------------------------------------------
# elimination to a condition on J
# ---------------------------------------------------------------------------

def _int_primitive(c: list) -> list[int]:
    """Scale a rational coefficient list to coprime integers, positive lead."""
    c = _trim(list(c))
    if not c:
        return []
    den = 1
    for v in c:
        den = den * mpq(v).denominator // math.gcd(den, mpq(v).denominator)
    ints = [int(mpq(v) * den) for v in c]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _sqfree_int(c: list) -> list[int]:
    return _int_primitive(squarefree_part([mpq(v) for v in c]))


def j_condition(d: Poly, gauge: str = "g3") -> list[int]:
    """Integer polynomial in J (low -> high) whose roots are the J-values at
    which the isobaric form d(g2, g3) vanishes, excluding the ray lost by
    the gauge (g3 = 0, J = 1 for gauge g3; g2 = 0, J = 0 for gauge g2),
    which is tested separately.
    """
    if d.is_zero():
        raise AlgebraError("form vanishes identically")
    if gauge == "g3":
        u = d.partial_eval({"g3": 1})
        rel = J * (G2 ** 3 - 27) - G2 ** 3
        lost, on_ray = mpq(1), d.partial_eval({"g2": 1, "g3": 0})
        v = "g2"
    elif gauge == "g2":
        u = d.partial_eval({"g2": 1})
        rel = J * (1 - G3 * G3 * 27) - 1
        lost, on_ray = mpq(0), d.partial_eval({"g2": 0, "g3": 1})
        v = "g3"
    else:
        raise ValueError(gauge)
    if u.degree(v) <= 0:
        out = [1]
    else:
        r = resultant(u, rel, v)
        out = _sqfree_int(uni_coeffs(r, "x"))
    if on_ray.is_zero():
        out = _int_mul(out, [-int(lost), 1])
    return _sqfree_int(out)


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def rational_roots(c: list) -> list[Fraction]:
    """Rational roots of an integer polynomial (numeric candidates, exact check)."""
    c = _trim([mpq(v) for v in c])
    if len(c) < 2:
        return []
    out = set()
    if c[0] == 0:
        out.add(Fraction(0))
    lead = int(abs(c[-1] * 1))
    for z in np.roots([float(v) for v in reversed(c)]):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            continue
        for cand in (Fraction(z.real).limit_denominator(max(lead, 1)),
                     Fraction(z.real).limit_denominator(10 ** 12)):
            if uval(c, mpq(cand)) == 0:
                out.add(cand)
    return sorted(out)


def j_roots_of_isobaric(d: Poly) -> list[Fraction]:
    return rational_roots(j_condition(d))


# ---------------------------------------------------------------------------
# Cohn polynomials
# ---------------------------------------------------------------------------

@dataclass
class CohnPolynomial:
    ell: int
    kind: str
    coeffs: list          # integers, low -> high in J; [] when undefined

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __str__(self):
        return format_int_poly(self.coeffs)


def _type_poly(l: int, kind: str) -> Poly:
    if kind == "I":
        return L_I(l)
    if kind == "II":
        return norm_over_e(L_II(l))
    raise ValueError("kind must be 'I' or 'II'")


def spectral_discriminant(l: int, kind: str) -> Poly:
    p = _type_poly(l, kind)
    if p.degree("B") < 2:
        raise AlgebraError("degree too low for a discriminant")
    return discriminant(p, "B")


@lru_cache(maxsize=None)
def cohn_polynomial(l: int, kind: str, gauge: str = "g3") -> CohnPolynomial:
    """Cohn polynomial of the given type, integer coefficients low -> high.

    A constant ([1]) means no degeneracy is possible, as when the spectral
    polynomial has fewer than two roots.
    """
    p = _type_poly(l, kind)
    if p.degree("B") < 2:
        return CohnPolynomial(l, kind, [1])
    c = j_condition(discriminant(p, "B"), gauge)
    return CohnPolynomial(l, kind, c)


def conjectured_degree(l: int, kind: str) -> int:
    d = spectral_degrees(l)
    nI, nII = d["N_I"], d["N_II"]
    if kind == "I":
        return (nI * nI - nI + 4) // 6
    return nII * (nII - 1) // 2


def roots_on_half_line(coeffs: list) -> int:
    """Number of real roots in [1, oo), by Sturm sequences."""
    if len(coeffs) < 2:
        return 0
    c = [mpq(v) for v in coeffs]
    n = count_real_roots(c, 1, None)
    return n + (1 if uval(c, mpq(1)) == 0 else 0)


def cohn_degree_report(ell_max: int) -> list[dict]:
    rows = []
    for l in range(1, ell_max + 1):
        for kind in ("I", "II"):
            cp = cohn_polynomial(l, kind)
            divisible = bool(cp.coeffs) and cp.coeffs[0] == 0
            rows.append({
                "ell": l, "kind": kind, "degree": cp.degree,
                "conjectured": conjectured_degree(l, kind),
                "divisible_by_J": divisible,
                "expected_J_factor": kind == "I" and l % 3 == 2,
                "roots_in_[1,inf)": roots_on_half_line(cp.coeffs),
            })
    for r in rows:
        r["degree_agrees"] = r["degree"] == r["conjectured"]
        r["J_flag_agrees"] = r["divisible_by_J"] == r["expected_J_factor"]
    return rows


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _factor_int(n: int, limit: int = 10 ** 5) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n and p <= limit:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def factored_int(n: int) -> str:
    if abs(n) < 2:
        return str(n)
    parts = []
    for p, k in _factor_int(abs(n)):
        parts.append(f"{p}^{k}" if k > 1 else str(p))
    return ("-" if n < 0 else "") + "*".join(parts)


def format_int_poly(coeffs: list, var: str = "J", factored: bool = True) -> str:
    if len(coeffs) < 2:
        return "---"
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mon = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        body = factored_int(abs(c)) if factored else str(abs(c))
        if mon and abs(c) == 1:
            body = mon
        elif mon:
            body = f"{body} {mon}"
        terms.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
