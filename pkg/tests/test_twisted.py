import pytest

from lame_spectral.checks import compare_reference
from lame_spectral.twisted import (full_twisted_spectral, specialized_degree, theta_degree_law,
                                   theta_twisted_spectral, twisted_degree_law, twisted_spectral)


@pytest.mark.parametrize("family,l", [(f, l) for f in ("twisted_I", "theta", "reduction")
                                      for l in range(1, 9)]
                         + [("twisted_II", l) for l in range(1, 7)])
def test_reference_values(family, l):
    assert compare_reference(family, l)


@pytest.mark.parametrize("l", range(1, 13))
def test_degree_laws(l):
    assert specialized_degree(l, "I") == twisted_degree_law(l, "I")
    assert specialized_degree(l, "II") == twisted_degree_law(l, "II")
    assert specialized_degree(l, "theta") == theta_degree_law(l)
    assert twisted_degree_law(l, "I") + 3 * twisted_degree_law(l, "II") == l * l - 1


@pytest.mark.parametrize("l", range(1, 9))
def test_full_twisted_degree(l):
    assert full_twisted_spectral(l).degree("B") == l * l - 1


@pytest.mark.parametrize("l", range(3, 9))
def test_twisted_isobaric(l):
    p = twisted_spectral(l, "I")
    assert p.isobaric_weight() == p.degree("B")
    q = theta_twisted_spectral(l)
    assert q.isobaric_weight() == max(q.degree("B"), 0)


@pytest.mark.parametrize("l", [7, 8])
def test_twisted_II_beyond_printed_rows(l):
    # rows past the printed range: monic, e-dependent, weight = degree
    p = twisted_spectral(l, "II")
    assert p.degree("B") == twisted_degree_law(l, "II")
    assert p.degree("e") > 0
    assert p.isobaric_weight() == p.degree("B")
