
import pytest
from gmpy2 import mpq

from lame_spectral.algebra import Poly
from lame_spectral.checks import compare_reference
from lame_spectral.moduli import (DegenerateModulus, cohn_degree_report, cohn_polynomial,
                                  format_int_poly, j_condition, j_roots_of_isobaric,
                                  params_from_m, rational_roots, roots_on_half_line)

G2, G3 = Poly.gen("g2"), Poly.gen("g3")


def test_lemniscatic_parameters():
    p = params_from_m("1/2")
    assert (p.g2, p.g3, p.J) == (1, 0, 1)
    assert p.e == (mpq(1, 2), 0, mpq(-1, 2))


@pytest.mark.parametrize("m", ["1/3", "2/7", "-3", "5/2"])
def test_branch_values_are_roots(m):
    p = params_from_m(m)
    assert p.e1 - p.e3 == 1 and p.e1 + p.e2 + p.e3 == 0
    for e in p.e:
        assert 4 * e ** 3 - p.g2 * e - p.g3 == 0


def test_float_m_is_exact():
    assert params_from_m(0.25).m == mpq(1, 4)


def test_equianharmonic_complex_m():
    p = params_from_m(complex(0.5, 3 ** 0.5 / 2))
    assert abs(p.J) < 1e-12


@pytest.mark.parametrize("m", [0, 1, "0", "1"])
def test_degenerate(m):
    with pytest.raises(DegenerateModulus):
        params_from_m(m)


@pytest.mark.parametrize("kind", ["I", "II"])
@pytest.mark.parametrize("l", range(1, 9))
def test_cohn_reference(l, kind):
    assert compare_reference("cohn_" + kind, l)


def test_cohn_report():
    for r in cohn_degree_report(8):
        assert r["degree_agrees"] and r["J_flag_agrees"]
        assert r["roots_in_[1,inf)"] == 0


@pytest.mark.parametrize("l", range(2, 5))
@pytest.mark.parametrize("kind", ["I", "II"])
def test_gauge_cross_check(l, kind):
    assert cohn_polynomial(l, kind, "g3").coeffs == cohn_polynomial(l, kind, "g2").coeffs


def test_j_condition_rays():
    # g3 vanishes only at J = 1, g2 only at J = 0
    assert j_condition(G3 * G3 * G2 + G3 ** 3) != []
    assert j_roots_of_isobaric(G3 * G2) == [0, 1]


def test_rational_roots():
    assert rational_roots([-3, 1, 2]) == [-1.5, 1]     # 2J^2 + J - 3


def test_half_line_count():
    assert roots_on_half_line([-2, 1]) == 1            # J = 2
    assert roots_on_half_line([-1, 1]) == 1            # J = 1 counts
    assert roots_on_half_line([1, 4]) == 0


def test_format():
    assert format_int_poly([1225, 972]) == "2^2*3^5 J + 5^2*7^2"
    assert format_int_poly([1]) == "---"
