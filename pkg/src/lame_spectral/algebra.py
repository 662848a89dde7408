"""Exact multivariate polynomial arithmetic over Q.

Polynomials live in a fixed ring of named variables

    B, g2, g3, e, e1, e2, e3, k, x0, y0, x

with coefficients in Q (``gmpy2.mpq``).  The variable ``e`` stands for a
root of the Weierstrass cubic ``4e^3 - g2 e - g3``; every product is
reduced eagerly with ``e^3 = (g2 e + g3)/4`` so that ``deg_e <= 2``.  The
three named roots ``e1, e2, e3`` are *not* reduced: they only appear as
inputs to :func:`symmetrize_over_e`.

Monomials are packed into a single Python integer, one 12-bit field per
variable with ``B`` in the most significant field.  Multiplying monomials
is then integer addition, and integer comparison of keys is the lex order
``B > g2 > g3 > e > ... > x``.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq, mpz

ExactRational = type(mpq(0))

VARS = ("B", "g2", "g3", "e", "e1", "e2", "e3", "k", "x0", "y0", "x")
_NV = len(VARS)
_BITS = 12
_MASK = (1 << _BITS) - 1
_SHIFT = {v: _BITS * (_NV - 1 - i) for i, v in enumerate(VARS)}
_UNIT = {v: 1 << _SHIFT[v] for v in VARS}

# doubled isobaric weights: w(B)=w(e)=w(x)=1, w(g2)=2, w(g3)=3, w(y0)=3/2, w(k)=1/2
_WEIGHT2 = {"B": 2, "g2": 4, "g3": 6, "e": 2, "e1": 2, "e2": 2, "e3": 2,
            "k": 1, "x0": 2, "y0": 3, "x": 2}

_E_SHIFT = _SHIFT["e"]
_E3 = 3 << _E_SHIFT
_G2 = _UNIT["g2"]
_G3 = _UNIT["g3"]
_QUARTER = mpq(1, 4)

ONE_KEY = 0


class AlgebraError(ValueError):
    """Raised on degenerate input to an exact-algebra routine."""


def _as_q(c) -> ExactRational:
    if isinstance(c, ExactRational):
        return c
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, str):
        return mpq(Fraction(c).numerator, Fraction(c).denominator)
    return mpq(c)


def _exp(key: int, var: str) -> int:
    return (key >> _SHIFT[var]) & _MASK


def _exponents(key: int) -> tuple[int, ...]:
    return tuple((key >> _SHIFT[v]) & _MASK for v in VARS)


def _pack(exps: Mapping[str, int]) -> int:
    key = 0
    for v, d in exps.items():
        if d < 0 or d > _MASK:
            raise AlgebraError(f"exponent {d} of {v} out of range")
        key += d << _SHIFT[v]
    return key


def _reduce_e(terms: dict) -> dict:
    """Rewrite every e^d, d >= 3, using e^3 = (g2 e + g3)/4, in place."""
    pending = [k for k in terms if _exp(k, "e") >= 3]
    while pending:
        nxt = []
        for key in pending:
            c = terms.pop(key, None)
            if c is None:
                continue
            base = key - _E3
            c4 = c * _QUARTER
            for k2 in (base + _UNIT["e"] + _G2, base + _G3):
                v = terms.get(k2)
                v = c4 if v is None else v + c4
                if v:
                    terms[k2] = v
                    if _exp(k2, "e") >= 3:
                        nxt.append(k2)
                else:
                    del terms[k2]
        pending = nxt
    return terms


class Poly:
    """Sparse polynomial with exact rational coefficients.

    Instances are treated as immutable; every operation returns a new one.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = _as_q(c)
        return cls({ONE_KEY: c} if c else {})

    @classmethod
    def gen(cls, name: str) -> "Poly":
        return cls({_UNIT[name]: mpq(1)})

    @classmethod
    def monomial(cls, coeff, **exps: int) -> "Poly":
        c = _as_q(coeff)
        return cls({_pack(exps): c} if c else {})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[str, int], object]]) -> "Poly":
        out: dict = {}
        for exps, c in items:
            k = _pack(exps)
            v = out.get(k, 0) + _as_q(c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return cls(_reduce_e(out))

    @staticmethod
    def coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    # -- basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_KEY in self.terms)

    def const_value(self) -> ExactRational:
        if not self.is_const():
            raise AlgebraError("polynomial is not constant")
        return self.terms.get(ONE_KEY, mpq(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_q(other)
            if not c:
                return Poly()
            return Poly({k: v * c for k, v in self.terms.items()})
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        out = {k: v for k, v in out.items() if v}
        if any((k >> _E_SHIFT) & _MASK >= 3 for k in out):
            _reduce_e(out)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise AlgebraError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, Poly):
            return exact_div(self, c)
        c = _as_q(c)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        inv = 1 / c
        return Poly({k: v * inv for k, v in self.terms.items()})

    # -- structure --------------------------------------------------------
    def variables(self) -> tuple[str, ...]:
        used = 0
        for k in self.terms:
            used |= k
        return tuple(v for v in VARS if (used >> _SHIFT[v]) & _MASK)

    def degree(self, var: str = "B") -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        s = _SHIFT[var]
        return max((k >> s) & _MASK for k in self.terms)

    def coeff(self, var: str, d: int) -> "Poly":
        s = _SHIFT[var]
        return Poly({k - (d << s): c for k, c in self.terms.items() if (k >> s) & _MASK == d})

    def to_uni(self, var: str) -> list["Poly"]:
        """Coefficient list ``[c_0, c_1, ...]`` with respect to ``var``."""
        s = _SHIFT[var]
        buckets: dict[int, dict] = {}
        for k, c in self.terms.items():
            d = (k >> s) & _MASK
            buckets.setdefault(d, {})[k - (d << s)] = c
        if not buckets:
            return []
        n = max(buckets)
        return [Poly(buckets.get(d, {})) for d in range(n + 1)]

    @staticmethod
    def from_uni(coeffs: Sequence["Poly"], var: str) -> "Poly":
        s = _SHIFT[var]
        out: dict = {}
        for d, c in enumerate(coeffs):
            off = d << s
            for k, v in c.terms.items():
                out[k + off] = v
        return Poly(out)

    def leading_coeff(self, var: str = "B") -> "Poly":
        return self.coeff(var, self.degree(var))

    def lex_leading(self) -> tuple[int, ExactRational]:
        k = max(self.terms)
        return k, self.terms[k]

    # -- calculus and substitution ---------------------------------------
    def diff(self, var: str) -> "Poly":
        s = _SHIFT[var]
        u = 1 << s
        out = {}
        for k, c in self.terms.items():
            d = (k >> s) & _MASK
            if d:
                out[k - u] = c * d
        return Poly(out)

    def subs(self, var: str, value) -> "Poly":
        """Substitute a polynomial (or scalar) for ``var``."""
        value = Poly.coerce(value)
        coeffs = self.to_uni(var)
        result = Poly()
        for c in reversed(coeffs):
            result = result * value + c
        return result

    def rename(self, old: str, new: str) -> "Poly":
        so, sn = _SHIFT[old], _SHIFT[new]
        out = {}
        for k, c in self.terms.items():
            d = (k >> so) & _MASK
            if d and (k >> sn) & _MASK:
                raise AlgebraError(f"cannot rename {old} to {new}: {new} in use")
            out[k - (d << so) + (d << sn)] = c
        p = Poly(out)
        if new == "e":
            _reduce_e(p.terms)
        return p

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values; unassigned variables must be absent."""
        total = 0
        for k, c in self.terms.items():
            t = c
            for v in VARS:
                d = (k >> _SHIFT[v]) & _MASK
                if d:
                    t = t * values[v] ** d
            total = total + t
        return total

    def partial_eval(self, values: Mapping[str, object]) -> "Poly":
        """Substitute exact rationals for some variables."""
        vals = {v: _as_q(x) for v, x in values.items()}
        out: dict = {}
        for k, c in self.terms.items():
            t = c
            key = k
            for v, x in vals.items():
                d = (k >> _SHIFT[v]) & _MASK
                if d:
                    t = t * x ** d
                    key -= d << _SHIFT[v]
            if t:
                nv = out.get(key, 0) + t
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return Poly(out)

    # -- normalization -----------------------------------------------------
    def content(self) -> ExactRational:
        """Positive rational with ``self / content`` primitive over Z."""
        if not self.terms:
            return mpq(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = reduce(_gcdz, nums)
        lcm = reduce(lambda a, b: a * b // _gcdz(a, b), dens)
        return mpq(abs(g), lcm)

    def primitive(self) -> "Poly":
        """Integer coefficients, unit content, positive lex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lex_leading()[1] < 0:
            c = -c
        return self / c

    def monic(self, var: str = "B") -> "Poly":
        """Scale so the leading coefficient in ``var`` is 1.

        If that coefficient is not a rational constant, its lex-leading
        rational coefficient is made 1 instead.
        """
        if not self.terms:
            return self
        lc = self.leading_coeff(var)
        return self / lc.lex_leading()[1]

    # -- weights -----------------------------------------------------------
    def term_weights(self) -> set[Fraction]:
        out = set()
        for k in self.terms:
            w2 = sum(_WEIGHT2[v] * ((k >> _SHIFT[v]) & _MASK) for v in VARS)
            out.add(Fraction(w2, 2))
        return out

    def isobaric_weight(self) -> Fraction | None:
        """Common weight of all terms, or None if the polynomial is not isobaric."""
        ws = self.term_weights()
        if len(ws) == 1:
            return ws.pop()
        if not ws:
            return Fraction(0)
        return None

    # -- display -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], ExactRational]]:
        """Terms in graded-lex order, highest first."""
        items = [(_exponents(k), c) for k, c in self.terms.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return items

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if d == 1 else f"{v}^{d}" for v, d in zip(VARS, exps) if d
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}" if c.denominator == 1 else f"({cs})*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def _gcdz(a, b):
    import math
    return math.gcd(int(a), int(b))


def var(name: str) -> Poly:
    return Poly.gen(name)


B, g2, g3, e = (Poly.gen(v) for v in ("B", "g2", "g3", "e"))


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise AlgebraError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------

def _main_var(p: Poly) -> str | None:
    vs = p.variables()
    return vs[0] if vs else None


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient ``a / b``; raises :class:`AlgebraError` if not exact.

    Works recursively: ``b`` is viewed as univariate in its main variable
    with polynomial coefficients.  The ``e`` variable is treated as free, so
    callers dividing e-reduced polynomials must make sure the quotient
    exists in the free ring.
    """
    if b.is_zero():
        raise ZeroDivisionError("exact_div by zero polynomial")
    if a.is_zero():
        return Poly()
    if b.is_const():
        return a / b.const_value()
    v = _main_var(b)
    A = a.to_uni(v)
    Bu = b.to_uni(v)
    db = len(Bu) - 1
    lc = Bu[-1]
    q = [Poly()] * max(len(A) - db, 0)
    A = list(A)
    for i in range(len(A) - 1, db - 1, -1):
        ci = A[i]
        if ci.is_zero():
            continue
        t = _exact_div_free(ci, lc)
        q[i - db] = t
        for j, bj in enumerate(Bu):
            if bj:
                A[i - db + j] = A[i - db + j] - _mul_free(t, bj)
    if any(not c.is_zero() for c in A[:db]):
        raise AlgebraError("polynomial division is not exact")
    return Poly.from_uni(q, v)


def _mul_free(a: Poly, b: Poly) -> Poly:
    """Product without e-reduction."""
    out: dict = {}
    for kb, cb in b.terms.items():
        for ka, ca in a.terms.items():
            k = ka + kb
            v = out.get(k)
            out[k] = ca * cb if v is None else v + ca * cb
    return Poly({k: v for k, v in out.items() if v})


def _exact_div_free(a: Poly, b: Poly) -> Poly:
    return exact_div(a, b)


def divides(b: Poly, a: Poly) -> bool:
    try:
        exact_div(a, b)
    except AlgebraError:
        return False
    return True


def prem(a: Poly, b: Poly, v: str) -> Poly:
    """Pseudo-remainder: ``lc(b)^(da-db+1) a = q b + r`` with ``deg_v r < deg_v b``."""
    A = a.to_uni(v)
    Bu = b.to_uni(v)
    db = len(Bu) - 1
    if db < 0:
        raise ZeroDivisionError("prem by zero")
    lc = Bu[-1]
    e = len(A) - db
    if e <= 0:
        return a
    R = list(A)
    while len(R) - 1 >= db and R:
        lr = R[-1]
        shift = len(R) - 1 - db
        R = [lc * r for r in R]
        for j, bj in enumerate(Bu):
            R[shift + j] = R[shift + j] - lr * bj
        R.pop()
        while R and R[-1].is_zero():
            R.pop()
        e -= 1
    if e > 0 and R:
        f = lc ** e
        R = [f * r for r in R]
    return Poly.from_uni(R, v)


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------

def resultant(a: Poly, b: Poly, var: str) -> Poly:
    """Resultant with respect to ``var`` via the subresultant PRS.

    The sign agrees with the Sylvester determinant of ``(a, b)``.  If ``e``
    occurs it is treated as a free variable during elimination and the
    cubic reduction is applied to the result.
    """
    if a.is_zero() or b.is_zero():
        raise AlgebraError("resultant of a zero polynomial")
    if var == "e":
        return _resultant_free(a, b, var)
    uses_e = "e" in a.variables() or "e" in b.variables()
    if uses_e:
        tmp = next(v for v in ("e3", "e2", "e1") if v not in a.variables() + b.variables())
        r = _resultant_free(a.rename("e", tmp), b.rename("e", tmp), var)
        return r.rename(tmp, "e")
    return _resultant_free(a, b, var)


def _resultant_free(a: Poly, b: Poly, v: str) -> Poly:
    da, db = a.degree(v), b.degree(v)
    if da == 0 and db == 0:
        return Poly.const(1)
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    g = Poly.const(1)
    h = Poly.const(1)
    while True:
        da, db = a.degree(v), b.degree(v)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b, v)
        a = b
        if r.is_zero():
            return Poly()
        b = exact_div(r, g * h ** delta)
        g = a.leading_coeff(v)
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))
        if b.degree(v) == 0:
            break
    da = a.degree(v)
    lb = b
    if da == 1:
        res = lb
    else:
        res = exact_div(lb ** da, h ** (da - 1))
    return res * s


def sylvester_resultant(a: Poly, b: Poly, var: str) -> Poly:
    """Resultant as a Sylvester determinant (fraction-free Bareiss).

    Slow; kept as an independent check on :func:`resultant`.
    """
    A = a.to_uni(var)[::-1]
    Bc = b.to_uni(var)[::-1]
    m, n = len(A) - 1, len(Bc) - 1
    size = m + n
    if size == 0:
        return Poly.const(1)
    M = [[Poly()] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(A):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(Bc):
            M[n + i][i + j] = c
    return bareiss_det(M)


def bareiss_det(M: list[list[Poly]]) -> Poly:
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = exact_div(num, prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def discriminant(a: Poly, var: str = "B") -> Poly:
    """``(-1)^(n(n-1)/2) res(a, a') / lc(a)``."""
    n = a.degree(var)
    if n < 2:
        raise AlgebraError("discriminant needs degree >= 2")
    r = resultant(a, a.diff(var), var)
    r = exact_div(r, a.leading_coeff(var))
    return -r if (n * (n - 1) // 2) % 2 else r


# ---------------------------------------------------------------------------
# symmetric functions of the branch values e1, e2, e3
# ---------------------------------------------------------------------------

_ROOTS = ("e1", "e2", "e3")


def _permute_roots(p: Poly, perm: tuple[str, str, str]) -> Poly:
    out = {}
    for k, c in p.terms.items():
        ds = [(k >> _SHIFT[r]) & _MASK for r in _ROOTS]
        key = k - sum(d << _SHIFT[r] for d, r in zip(ds, _ROOTS))
        key += sum(d << _SHIFT[r] for d, r in zip(ds, perm))
        out[key] = c
    return Poly(out)


def symmetrize_over_e(p: Poly) -> Poly:
    """Rewrite a symmetric polynomial in e1, e2, e3 through g2, g3.

    Uses e1+e2+e3 = 0, e1e2+e2e3+e3e1 = -g2/4, e1e2e3 = g3/4.
    """
    for perm in (("e2", "e1", "e3"), ("e2", "e3", "e1")):
        if _permute_roots(p, perm) != p:
            raise AlgebraError("input is not symmetric in e1, e2, e3")
    s1 = Poly()
    s2 = Poly.const(mpq(-1, 4)) * g2
    s3 = Poly.const(mpq(1, 4)) * g3
    e1, e2, e3 = (Poly.gen(r) for r in _ROOTS)
    sig = (e1 + e2 + e3, e1 * e2 + e2 * e3 + e3 * e1, e1 * e2 * e3)
    rem = p
    out = Poly()
    while True:
        top = None
        for k, c in rem.terms.items():
            ds = tuple((k >> _SHIFT[r]) & _MASK for r in _ROOTS)
            if any(ds) and (top is None or ds > top[0]):
                top = (ds, k)
        if top is None:
            break
        (a, b_, c_), k = top
        # collect the full coefficient (a polynomial in the other variables)
        rest = {}
        for key, c in rem.terms.items():
            ds = tuple((key >> _SHIFT[r]) & _MASK for r in _ROOTS)
            if ds == (a, b_, c_):
                rest[key - sum(d << _SHIFT[r] for d, r in zip(ds, _ROOTS))] = c
        coeff = Poly(rest)
        mono = sig[0] ** (a - b_) * sig[1] ** (b_ - c_) * sig[2] ** c_
        rem = rem - coeff * mono
        out = out + coeff * (s1 ** (a - b_) if a - b_ else Poly.const(1)) * s2 ** (b_ - c_) * s3 ** c_
    return out + rem


def norm_over_e(p: Poly) -> Poly:
    """``prod_gamma p(e_gamma)`` expressed through g2, g3.

    Equals ``symmetrize_over_e`` of the product of the three conjugates but
    is computed as a resultant against the Weierstrass cubic.
    """
    if p.degree("e") <= 0:
        return p ** 3
    cubic = Poly.const(4) * e ** 3 - g2 * e - g3
    # cubic is built in the reduced ring; rebuild it unreduced in a free variable
    t = "e1"
    cubic = Poly.from_terms([({t: 3}, 4), ({t: 1, "g2": 1}, -1), ({"g3": 1}, -1)])
    q = p.rename("e", t)
    r = resultant(cubic, q, t)
    return r / mpq(4) ** q.degree(t)


def conjugates(p: Poly) -> tuple[Poly, Poly, Poly]:
    return tuple(p.rename("e", r) for r in _ROOTS)


def e_free_part(p: Poly) -> tuple[Poly, bool]:
    """Split off the e^0 part; flag whether the e^1, e^2 parts vanish."""
    coeffs = p.to_uni("e")
    if not coeffs:
        return p, True
    return coeffs[0], all(c.is_zero() for c in coeffs[1:])


# ---------------------------------------------------------------------------
# gcd (recursive primitive PRS)
# ---------------------------------------------------------------------------

def _content_in(p: Poly, v: str) -> Poly:
    g = Poly()
    for c in p.to_uni(v):
        if c:
            g = _gcd(g, c)
            if g.is_const():
                return Poly.const(1)
    return g


def gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized with lex-leading coefficient 1.

    ``e`` is treated as a free variable.
    """
    used = set(a.variables()) | set(b.variables())
    if _coprime_by_specialization(a, b):
        return Poly.const(1)
    if "e" in used:
        tmp = next(v for v in ("e3", "e2", "e1") if v not in used)
        return _gcd(a.rename("e", tmp), b.rename("e", tmp)).rename(tmp, "e")
    return _gcd(a, b)


_SPECIAL_VALUES = (mpq(3, 7), mpq(-5, 11), mpq(7, 13), mpq(11, 17), mpq(-13, 19),
                   mpq(17, 23), mpq(19, 29), mpq(-23, 31), mpq(29, 37), mpq(31, 41))


def _coprime_by_specialization(a: Poly, b: Poly, v: str = "B") -> bool:
    """Cheap sufficient test for gcd(a, b) = 1.

    If one input has a nonzero rational leading coefficient in ``v``, any
    common factor has a constant leading coefficient in ``v`` too, so it
    survives specialization of the other variables.  A trivial univariate
    gcd after specialization therefore proves coprimality.
    """
    if a.degree(v) <= 0 or b.degree(v) <= 0:
        return False
    if not (a.leading_coeff(v).is_const() or b.leading_coeff(v).is_const()):
        return False
    used = sorted((set(a.variables()) | set(b.variables())) - {v})
    others = {x: _SPECIAL_VALUES[i % len(_SPECIAL_VALUES)] for i, x in enumerate(used)}
    ua = uni_coeffs(a.partial_eval(others), v)
    ub = uni_coeffs(b.partial_eval(others), v)
    if len(_trim(ua)) - 1 != a.degree(v) and len(_trim(ub)) - 1 != b.degree(v):
        return False
    return len(ugcd(ua, ub)) == 1


def _gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero():
        return b.monic_lex() if b else b
    if b.is_zero():
        return a.monic_lex()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    va, vb = set(a.variables()), set(b.variables())
    v = next(x for x in VARS if x in va | vb)
    if v not in va:
        return _gcd(a, _content_in(b, v))
    if v not in vb:
        return _gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa, pb = exact_div(a, ca), exact_div(b, cb)
    c = _gcd(ca, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while pb and pb.degree(v) > 0:
        r = prem(pa, pb, v)
        pa = pb
        if r.is_zero():
            pb = r
            break
        pb = exact_div(r, _content_in(r, v)).primitive()
    if pb:
        g = Poly.const(1)
    else:
        g = exact_div(pa, _content_in(pa, v))
    return (c * g).monic_lex()


def _monic_lex(self: Poly) -> Poly:
    if not self.terms:
        return self
    return self / self.lex_leading()[1]


Poly.monic_lex = _monic_lex


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of two polynomials in lowest terms.

    The denominator is normalized to be monic in ``B`` (or, when its
    leading coefficient in ``B`` is not constant, to have lex-leading
    coefficient 1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        num = Poly.coerce(num)
        den = Poly.const(1) if den is None else Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and not num.is_zero() and not den.is_const():
            g = gcd(num, den)
            if not g.is_const():
                num, den = exact_div(num, g), exact_div(den, g)
        if num.is_zero():
            den = Poly.const(1)
        lc = den.leading_coeff("B").lex_leading()[1]
        self.num = num / lc
        self.den = den / lc

    def __add__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __truediv__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def diff(self, v: str = "B") -> "RatFunc":
        return RatFunc(self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den ** 2)

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def partial_eval(self, values) -> "RatFunc":
        return RatFunc(self.num.partial_eval(values), self.den.partial_eval(values))

    def degree(self) -> int:
        """max(deg num, deg den) in B."""
        return max(self.num.degree("B"), self.den.degree("B"))

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"


# ---------------------------------------------------------------------------
# univariate helpers over Q (Sturm sequences, squarefree parts)
# ---------------------------------------------------------------------------

def uni_coeffs(p: Poly, v: str) -> list[ExactRational]:
    """Rational coefficient list of a univariate polynomial in ``v``."""
    extra = set(p.variables()) - {v}
    if extra:
        raise AlgebraError(f"not univariate in {v}: also involves {sorted(extra)}")
    return [c.const_value() for c in p.to_uni(v)]


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _urem(a, b):
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lc
        s = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[s + j] -= f * bj
        a.pop()
        a = _trim(a)
    return a


def _uquo(a, b):
    a = list(a)
    db = len(b) - 1
    q = [mpq(0)] * max(len(a) - db, 1)
    lc = b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lc
        s = len(a) - 1 - db
        q[s] = f
        for j, bj in enumerate(b):
            a[s + j] -= f * bj
        a.pop()
        a = _trim(a)
    if a:
        raise AlgebraError("univariate division is not exact")
    return q


def ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _urem(a, b)
    if not a:
        return a
    return [c / a[-1] for c in a]


def uderiv(a):
    return [c * i for i, c in enumerate(a)][1:]


def squarefree_part(c: list) -> list:
    c = _trim(c)
    if len(c) <= 1:
        return c
    g = ugcd(c, uderiv(c))
    return _uquo(c, g) if len(g) > 1 else list(c)


def uval(c, x):
    r = mpq(0) if isinstance(x, ExactRational) else 0
    for a in reversed(c):
        r = r * x + a
    return r


def sturm_sequence(c: list) -> list[list]:
    c = _trim(c)
    seq = [c, uderiv(c)]
    while len(seq[-1]) > 1 or (seq[-1] and len(seq[-1]) == 1 and False):
        r = _urem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _sign_changes(vals) -> int:
    vals = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))


def count_real_roots(c: list, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (None = infinite)."""
    seq = sturm_sequence(c)

    def at(x):
        if x is None:
            return None
        return [uval(s, x) for s in seq]

    def at_inf(sign):
        out = []
        for s in seq:
            d = len(s) - 1
            lead = s[-1]
            out.append(lead if (sign > 0 or d % 2 == 0) else -lead)
        return out

    vlo = at_inf(-1) if lo is None else at(lo)
    vhi = at_inf(+1) if hi is None else at(hi)
    return _sign_changes(vlo) - _sign_changes(vhi)



def _root_bound(c) -> ExactRational:
    """Cauchy bound: every root has |x| < 1 + max |c_i / c_n|."""
    lead = abs(c[-1])
    return 1 + max(abs(a) for a in c[:-1]) / lead if len(c) > 1 else mpq(1)


def isolate_real_roots(c: list) -> list[tuple]:
    """Disjoint intervals (lo, hi], each holding exactly one real root.

    Exact bisection on Sturm counts, so arbitrarily close roots are separated.
    An interval with lo == hi is an exact rational root.
    """
    c = _trim([mpq(v) for v in c])
    seq = sturm_sequence(c)

    def changes(x):
        return _sign_changes([uval(s, x) for s in seq])

    R = _root_bound(c)
    out = []
    stack = [(-R, R, changes(-R), changes(R))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = changes(mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    # pin exact rational roots at interval endpoints
    return [(hi, hi) if uval(c, hi) == 0 else (lo, hi) for lo, hi in out]


def refine_root(c: list, lo, hi) -> float:
    """Bisect an isolating interval until its ends round to neighbouring floats."""
    c = [mpq(v) for v in c]
    lo, hi = mpq(lo), mpq(hi)
    if lo == hi:
        return float(lo)
    slo = uval(c, lo)
    for _ in range(2000):
        flo, fhi = float(lo), float(hi)
        if flo == fhi or math.nextafter(flo, math.inf) >= fhi:
            break
        mid = (lo + hi) / 2
        v = uval(c, mid)
        if v == 0:
            return float(mid)
        if (v > 0) == (slo > 0):
            lo, slo = mid, v
        else:
            hi = mid
    return float((lo + hi) / 2)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

DEFAULT_JSON_VARS = ["B", "g2", "g3", "e"]


def to_json_obj(p: Poly, vars_: Sequence[str] | None = None) -> dict:
    used = p.variables()
    if vars_ is None:
        vars_ = list(DEFAULT_JSON_VARS) + [v for v in used if v not in DEFAULT_JSON_VARS]
    missing = set(used) - set(vars_)
    if missing:
        raise AlgebraError(f"variables {sorted(missing)} not in schema vars")
    idx = [VARS.index(v) for v in vars_]
    terms = []
    for exps, c in p.sorted_terms():
        terms.append({"coeff": f"{c.numerator}/{c.denominator}",
                      "pows": [exps[i] for i in idx]})
    return {"vars": list(vars_), "terms": terms}


def from_json_obj(obj: Mapping) -> Poly:
    vars_ = obj["vars"]
    items = []
    for t in obj["terms"]:
        num, _, den = str(t["coeff"]).partition("/")
        c = mpq(mpz(num), mpz(den or 1))
        items.append((dict(zip(vars_, t["pows"])), c))
    return Poly.from_terms(items)


def dumps(p: Poly, **kw) -> str:
    return json.dumps(to_json_obj(p), **kw)


def loads(s: str) -> Poly:
    return from_json_obj(json.loads(s))


# ---------------------------------------------------------------------------
# plain-text expressions
# ---------------------------------------------------------------------------

import re as _re

_TOKEN = _re.compile(r"\s*(?:(\d+)|(" + "|".join(sorted(VARS, key=len, reverse=True)) +
                     r")|(\*\*|[-+*/^()]))")


def parse_poly(text: str, aliases: Mapping[str, str] | None = None) -> Poly:
    """Parse an expression such as ``B^3 - 91/4 g2 B + (175/2) g3``.

    Juxtaposition multiplies; ``/`` must have a constant right operand.
    ``aliases`` renames variables before parsing (e.g. {"J": "x"}).
    """
    for a, b in (aliases or {}).items():
        text = _re.sub(rf"(?<![A-Za-z_]){a}(?![A-Za-z_0-9])", b, text)
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"cannot parse {text[pos:pos + 12]!r}")
        pos = m.end()
        num, name, op = m.groups()
        toks.append(("n", int(num)) if num else ("v", name) if name else ("o", "^" if op == "**" else op))
    toks.append(("end", None))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def expr():
        p = term()
        while peek() in (("o", "+"), ("o", "-")):
            op = take()[1]
            t = term()
            p = p + t if op == "+" else p - t
        return p

    def starts_factor(t):
        return t[0] in ("n", "v") or t == ("o", "(")

    def term():
        p = unary()
        while True:
            t = peek()
            if t == ("o", "*"):
                take()
                p = p * unary()
            elif t == ("o", "/"):
                take()
                d = power()
                if not d.is_const():
                    raise AlgebraError("division by a non-constant")
                p = p / d.const_value()
            elif starts_factor(t):
                p = p * power()
            else:
                return p

    def unary():
        if peek() == ("o", "-"):
            take()
            return -unary()
        if peek() == ("o", "+"):
            take()
            return unary()
        return power()

    def power():
        b = atom()
        if peek() == ("o", "^"):
            take()
            kind, n = take()
            if kind != "n":
                raise AlgebraError("exponent must be an integer")
            b = b ** n
        return b

    def atom():
        kind, val = take()
        if kind == "n":
            return Poly.const(val)
        if kind == "v":
            return Poly.gen(val)
        if (kind, val) == ("o", "("):
            p = expr()
            if take() != ("o", ")"):
                raise AlgebraError("unbalanced parentheses")
            return p
        raise AlgebraError(f"unexpected token {val!r}")

    out = expr()
    if peek()[0] != "end":
        raise AlgebraError(f"trailing input at token {peek()[1]!r}")
    return out
