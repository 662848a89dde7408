import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from lame_spectral.elliptic import (EllipticError, complete_K, context, hill_monodromy,
                                    invert_dn_squared, jacobi_sn_cn_dn, jacobi_Z, phi_numeric)
from lame_spectral.dispersion import k1


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.999])
def test_complete_K(m):
    assert complete_K(m) == pytest.approx(float(special.ellipk(m)), rel=1e-14)


def test_complete_K_domain():
    with pytest.raises(EllipticError):
        complete_K(1.0)


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("u", [0.0, 0.3, 1.1, 2.7, -4.2, 9.0])
def test_real_argument_matches_scipy(m, u):
    t = jacobi_sn_cn_dn(u, m)
    sn, cn, dn, _ = special.ellipj(u, m)
    assert abs(t.sn - sn) < 1e-13 and abs(t.cn - cn) < 1e-13 and abs(t.dn - dn) < 1e-13


@pytest.mark.parametrize("m", [0.3, 0.5])
@pytest.mark.parametrize("v", [0.2, 0.9, 1.4])
def test_imaginary_transformation(m, v):
    # sn(iv | m) = i sc(v | 1-m), dn(iv | m) = dc(v | 1-m)
    t = jacobi_sn_cn_dn(1j * v, m)
    s, c, d, _ = special.ellipj(v, 1 - m)
    assert abs(t.sn - 1j * s / c) < 1e-12
    assert abs(t.dn - d / c) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(-6, 6), st.floats(-3, 3))
def test_pythagorean_identities(m, a, b):
    try:
        t = jacobi_sn_cn_dn(complex(a, b), m)
    except EllipticError:
        return
    scale = max(1.0, abs(t.sn) ** 2)
    assert abs(t.sn ** 2 + t.cn ** 2 - 1) < 1e-10 * scale
    assert abs(t.dn ** 2 + m * t.sn ** 2 - 1) < 1e-10 * scale


@pytest.mark.parametrize("m", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("u", [0.4, 1.0, 1.7])
def test_zeta_real(m, u):
    K = special.ellipk(m)
    phi = special.ellipj(u, m)[3]
    ref = special.ellipeinc(phi, m) - special.ellipe(m) / K * u
    assert abs(jacobi_Z(u, m) - ref) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 12), st.floats(-2, 2))
def test_dn_inversion_roundtrip(Er, Ei):
    m = 0.5
    E = complex(Er, Ei)
    w = E - m
    # nu~ on the l = 1 curve: nu~^2 = (E-1)(E-m)(E-m-1)
    nu = cmath.sqrt((E - 1) * (E - m) * (E - m - 1))
    if abs(nu) < 1e-6:
        return
    a = invert_dn_squared(E, nu, m)
    t = jacobi_sn_cn_dn(a, m)
    assert abs(t.dn ** 2 - w) < 1e-9 * max(1, abs(w))
    assert abs(m * t.sn * t.cn * t.dn - 1j * nu) < 1e-8 * max(1, abs(nu))


def test_k1_at_edges():
    m = 0.5
    K = context(m).K
    p = math.pi / K
    r0 = k1(m, 0.0, m).real % p
    assert min(r0, p - r0) < 1e-10                     # periodic edge
    r1 = k1(1.0, 0.0, m).real % p
    assert abs(r1 - p / 2) < 1e-10                     # anti-periodic edge


def test_phi_product_identity():
    # Phi(x, y) Phi(x, -y) = (x - x0)/(xb - x0) for the normalized kernel
    g2, g3 = 1.0, 0.0
    x0 = 2.0
    y0 = cmath.sqrt(4 * x0 ** 3 - g2 * x0 - g3)
    xb = x0 + 1 + 1j
    for x in (1.5 + 0.3j, 3.0 - 0.5j, 0.8 + 1.1j):
        y = cmath.sqrt(4 * x ** 3 - g2 * x - g3)
        prod = phi_numeric(x, y, x0, y0, g2, g3) * phi_numeric(x, -y, x0, y0, g2, g3)
        assert abs(prod - (x - x0) / (xb - x0)) < 1e-8


def test_phi_zero():
    y0 = math.sqrt(4 * 8 - 2)
    assert phi_numeric(2.0, y0, 2.0, y0, 1.0, 0.0) == 0


@pytest.mark.parametrize("ell,E", [(1, 0.7), (2, 3.3), (3, 7.0)])
def test_monodromy_unimodular(ell, E):
    r = hill_monodromy(ell, E, 0.5)
    assert abs(np.linalg.det(r.matrix) - 1) < 1e-9
    assert abs(r.trace - np.trace(r.matrix)) < 1e-14
