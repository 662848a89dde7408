"""Write dispersion curves k(E) for l = 1, 2, 3 at m = 1/2 to CSV files.

Usage: python3 demos/dispersion_figure.py [outdir]
"""
import csv
import sys
from pathlib import Path

from lame_spectral.dispersion import CSV_COLUMNS, band_edges, dispersion_scan

out = Path(sys.argv[1] if len(sys.argv) > 1 else "dispersion_out")
out.mkdir(parents=True, exist_ok=True)

for l in (1, 2, 3):
    edges = band_edges(l, "1/2")
    lo, hi = edges[0] - 1.0, edges[-1] + 6.0
    rows = dispersion_scan(l, "1/2", (lo, hi), 400)
    path = out / f"dispersion_l{l}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for s in rows:
            w.writerow(s.row())
    print(f"l={l}: edges {', '.join(f'{e:.6f}' for e in edges)} -> {path}")
