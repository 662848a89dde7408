"""Lamé equation spectral theory: exact spectral, twisted and covering
polynomials, Cohn polynomials in the Klein invariant, and band dispersion
of the Jacobi-form equation."""

from .algebra import AlgebraError, Poly, RatFunc, discriminant, parse_poly, resultant
from .covering import (CoveringMap, branch_degeneracy_check, curve_identity_residual,
                       hk_coefficients, reduction_identity_numeric, reduction_polynomial,
                       theorem_L)
from .dispersion import (DispersionSample, JacobiSpectral, band_edges, dispersion_sample,
                         dispersion_scan, jacobi_spectral, k1, k_ell)
from .elliptic import hill_monodromy, hill_monodromy_oracle, invert_dn_squared, jacobi_Z
from .moduli import (CohnPolynomial, DegenerateModulus, EllipticParams, cohn_polynomial,
                     params_from_m)
from .spectral import L_I, L_II, full_spectral, hermite_halphen, lame_polynomial
from .twisted import full_twisted_spectral, theta_twisted_spectral, twisted_spectral

__version__ = "0.1.0"
