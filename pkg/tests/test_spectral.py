import pytest
from gmpy2 import mpq

from lame_spectral.algebra import Poly, count_real_roots, prem, squarefree_part, uni_coeffs
from lame_spectral.checks import compare_reference
from lame_spectral.spectral import (L_I, L_II, _ydx, full_spectral, hermite_halphen,
                                    hermite_halphen_residual, lame_polynomial, lame_residual,
                                    nu_squared_check, spectral_degrees)

B, G2, G3, X, Y = (Poly.gen(v) for v in ("B", "g2", "g3", "x", "y0"))


@pytest.mark.parametrize("family,l", [("hermite", l) for l in (1, 2, 3)]
                         + [(f, l) for f in ("lame_I", "lame_II") for l in range(1, 9)]
                         + [(f, l) for f in ("spectral_I", "spectral_II") for l in range(1, 9)])
def test_reference_values(family, l):
    assert compare_reference(family, l)


@pytest.mark.parametrize("l", range(1, 13))
def test_degree_laws(l):
    d = spectral_degrees(l)
    assert d["N_I"] == (l // 2 + 1 if l % 2 == 0 else (l - 1) // 2)
    assert d["N_II"] == (l // 2 if l % 2 == 0 else (l + 1) // 2)
    assert full_spectral(l).degree("B") == 2 * l + 1


@pytest.mark.parametrize("l", range(1, 9))
def test_isobaric(l):
    assert full_spectral(l).isobaric_weight() == 2 * l + 1
    assert L_II(l).isobaric_weight() == L_II(l).degree("B")


@pytest.mark.parametrize("l", [2, 4, 6])
def test_type_I_even_solves_lame(l):
    # (y d/dx)^2 C - (l(l+1) x + B) C vanishes modulo L_I
    C = sum((c * X ** j for j, c in enumerate(lame_polynomial(l, "I"))), Poly())
    T = _ydx(_ydx(C)) - (X * (l * (l + 1)) + B) * C
    L = L_I(l)
    for yk in (0, 1):
        part = T.coeff("y0", yk)
        for j in range(part.degree("x") + 1):
            assert prem(part.coeff("x", j), L, "B").is_zero()


@pytest.mark.parametrize("l", [3, 5, 7])
def test_type_I_odd_solves_lame(l):
    D = sum((c * X ** j for j, c in enumerate(lame_polynomial(l, "I"))), Poly())
    psi = D * Y
    T = _ydx(_ydx(psi)) - (X * (l * (l + 1)) + B) * psi
    L = L_I(l)
    for yk in (0, 1):
        part = T.coeff("y0", yk)
        for j in range(max(part.degree("x"), 0) + 1):
            assert prem(part.coeff("x", j), L, "B").is_zero()


def test_residual_vanishes_at_a_root():
    # L_I(2) = B^2 - 3 g2 has the root B = 3 at g2 = 3
    r = lame_residual(2, "I", B_value=3).partial_eval({"g2": 3, "g3": mpq(1, 5)})
    assert r.is_zero()


@pytest.mark.parametrize("l", range(1, 7))
def test_hermite_halphen_solves_third_order(l):
    assert hermite_halphen_residual(l).is_zero()
    assert hermite_halphen(l).degree("x") == l


@pytest.mark.parametrize("l", range(1, 6))
def test_nu_squared_formula(l):
    assert nu_squared_check(l) == full_spectral(l)


def test_lemniscatic_L_I_8():
    assert L_I(8).partial_eval({"g3": 0}) == B ** 5 - G2 * B ** 3 * 1044 + G2 ** 2 * B * 112320


@pytest.mark.parametrize("l", range(1, 10))
def test_equianharmonic_energy_count(l):
    # at g2 = 0 there are 2l distinct energies iff l = 2 mod 3, the double one at B = 0
    c = uni_coeffs(full_spectral(l).partial_eval({"g2": 0, "g3": 1}), "B")
    distinct = len(squarefree_part(c)) - 1
    assert (distinct == 2 * l) == (l % 3 == 2)
    if l % 3 == 2:
        assert c[0] == 0 and c[1] == 0
    if l % 3 == 0:
        assert c[0] == 0 and c[1] != 0


@pytest.mark.parametrize("l", range(1, 9))
def test_real_spectrum_for_real_curve(l):
    # three real branch values: all 2l+1 edges real and distinct
    c = [mpq(v) for v in uni_coeffs(full_spectral(l).partial_eval({"g2": 28, "g3": -24}), "B")]
    assert count_real_roots(c) == 2 * l + 1
