"""Print the Cohn polynomials of both types for l = 1..8, factored."""
from lame_spectral.moduli import cohn_polynomial, format_int_poly, roots_on_half_line

for l in range(1, 9):
    for kind in ("I", "II"):
        c = cohn_polynomial(l, kind).coeffs
        print(f"l={l} {kind:>2}  deg {len(c) - 1}  roots in [1,oo): {roots_on_half_line(c)}"
              f"  {format_int_poly(c)}")
