"""Compare the hyperelliptic integral of P(B) dB / nu with the elliptic
integral it reduces to, on a few real segments (g2 = 1, g3 = 0)."""
from lame_spectral.covering import reduction_identity_numeric, reduction_polynomial

for l, seg in ((2, (10.0, 20.0)), (3, (12.0, 30.0)), (4, (31.0, 60.0)), (5, (70.0, 120.0))):
    c = reduction_identity_numeric(l, *seg)
    print(f"l={l} B in {seg}: P_hat = {reduction_polynomial(l).P_hat}")
    print(f"    lhs {c.lhs:+.15e}  rhs {c.rhs:+.15e}  |diff| {c.error:.1e}")
