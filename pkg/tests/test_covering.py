from fractions import Fraction

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from lame_spectral.algebra import AlgebraError, Poly, RatFunc, parse_poly
from lame_spectral.covering import (QNu, branch_degeneracy_check, curve_identity_at,
                                    curve_identity_residual, hk_coefficients,
                                    reduction_identity_numeric, reduction_polynomial, theorem_L,
                                    x0_for_branch)
from lame_spectral.reference_tables import X0_2
from lame_spectral.spectral import L_II, full_spectral

POINT = {"g2": mpq(28), "g3": mpq(-24)}     # branch values 1, 2, -3


def test_x0_for_l2():
    num, den = (parse_poly(s) for s in X0_2)
    assert theorem_L(2).x0 == RatFunc(num, den)


@pytest.mark.parametrize("l", range(1, 9))
def test_x0_is_branch_independent(l):
    ref = theorem_L(l).x0.partial_eval(POINT)
    for e in (1, 2, -3):
        assert x0_for_branch(l, mpq(e)).partial_eval(POINT) == ref


@pytest.mark.parametrize("l", range(1, 5))
def test_curve_identity_symbolic(l):
    assert curve_identity_residual(l).is_zero()


@pytest.mark.parametrize("l", range(1, 9))
def test_covering_degree(l):
    assert theorem_L(l).degree() == l * (l + 1) // 2


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.fractions(-20, 20, max_denominator=9),
       st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7))
def test_curve_identity_random_points(l, b, g2, g3):
    pt = {"B": mpq(b), "g2": mpq(g2), "g3": mpq(g3)}
    cov = theorem_L(l)
    if cov.x0.den.evaluate(pt) == 0 or cov.y0_over_nu.den.evaluate(pt) == 0:
        return
    assert curve_identity_at(l, pt)


@pytest.mark.parametrize("l", range(1, 9))
def test_reduction_polynomial_shape(l):
    rp = reduction_polynomial(l)
    assert rp.P_hat.degree("B") == l - 1
    assert rp.P_hat.leading_coeff("B") == Poly.const(1)
    assert rp.P == rp.P_hat * mpq(l * (l + 1), 4)


def test_reduction_l2_integrand():
    assert reduction_polynomial(2).P == Poly.gen("B") * mpq(3, 2)


@pytest.mark.parametrize("l,seg", [(2, (10.0, 20.0)), (3, (12.0, 30.0)), (4, (31.0, 60.0))])
def test_reduction_identity_numeric(l, seg):
    c = reduction_identity_numeric(l, *seg)
    assert c.error < 1e-8
    c2 = reduction_identity_numeric(l, *seg, nu_branch=-1)
    assert abs(c2.lhs + c.lhs) < 1e-12 and c2.error < 1e-8


def test_reduction_identity_other_curve():
    c = reduction_identity_numeric(2, 10.0, 20.0, g2=2.0, g3=0.3)
    assert c.error < 1e-8


def test_reduction_identity_rejects_bad_segment():
    with pytest.raises(ValueError):
        reduction_identity_numeric(3, 10.0, 20.0)


def test_branch_degeneracy_l4():
    assert branch_degeneracy_check(4) == [Fraction(-2500, 12879)]
    assert branch_degeneracy_check(2) == []


@pytest.mark.parametrize("l", [3, 6])
def test_double_critical_point_equianharmonic(l):
    # P_hat and L both vanish at B = 0 when g2 = 0
    pt = {"B": 0, "g2": 0, "g3": 1}
    assert reduction_polynomial(l).P_hat.evaluate(pt) == 0
    assert full_spectral(l).evaluate(pt) == 0


@pytest.mark.parametrize("l", [2, 3, 4])
def test_weierstrass_points_map_to_branch_points(l):
    # at a Type II edge nu = 0, so y0 = 0 and x0 must be a root of 4x^3 - g2 x - g3
    g2, g3, e = 28.0, -24.0, 1.0
    cs = [float(c.evaluate({"g2": g2, "g3": g3, "e": e})) for c in L_II(l).to_uni("B")]
    cov = theorem_L(l)
    for Br in np.roots(cs[::-1]):
        pt = {"B": complex(Br), "g2": g2, "g3": g3}
        d = cov.x0.den.evaluate(pt)
        if abs(d) < 1e-9:
            continue
        x0 = cov.x0.num.evaluate(pt) / d
        assert abs(4 * x0 ** 3 - g2 * x0 - g3) < 1e-6 * max(1, abs(x0) ** 3)


@pytest.mark.parametrize("l", range(1, 8))
def test_hk_exact_residuals_vanish(l):
    for b in (Fraction(7, 3), Fraction(-5, 2)):
        s = hk_coefficients(l, b, g2=Fraction(3, 2), g3=Fraction(1, 5))
        assert not any(s.residuals)


@pytest.mark.parametrize("l", range(1, 8))
def test_hk_complex(l):
    s = hk_coefficients(l, 2.3 + 0.4j, g2=1.2, g3=-0.3)
    assert all(abs(complex(r)) < 1e-9 for r in s.residuals)


def test_hk_pole_raises():
    # B^2 = 3 g2 is a pole of the l = 2 covering
    with pytest.raises(AlgebraError):
        hk_coefficients(2, 3, g2=3, g3=0)


def test_qnu_arithmetic():
    a, b = QNu(1, 2, 5), QNu(3, -1, 5)
    assert a * b == QNu(3 - 10, 6 - 1, 5)
    assert (a + b) - b == a
    assert a ** 2 == a * a
    assert (a / 2) * 2 == a
