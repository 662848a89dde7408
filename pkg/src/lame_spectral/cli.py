"""Command-line front end: tables, covering, cohn, bandedges, dispersion, reduce, verify."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import nullcontext
from dataclasses import dataclass

from .covering import reduction_identity_numeric, reduction_polynomial, theorem_L
from .dispersion import CSV_COLUMNS, band_edges, dispersion_scan, parse_m
from .moduli import DegenerateModulus, cohn_polynomial, format_int_poly
from .spectral import L_I, L_II, full_spectral, hermite_halphen, lame_function_string
from .twisted import full_twisted_spectral, theta_twisted_spectral, twisted_spectral

SYMBOLIC_BUDGET = 10
FLOAT_FMT = "%.12e"


@dataclass
class CommandConfig:
    subcommand: str
    ell: int | None = None
    m: str | None = None
    output: str | None = None
    format: str = "text"
    verbosity: int = 0


def _ff(x) -> str:
    return FLOAT_FMT % x


def _family_rows(family: str, l: int) -> dict:
    """Named polynomials of one family at degree l, as strings."""
    if family == "hermite":
        return {"F": str(hermite_halphen(l))}
    if family == "lame":
        return {"I": lame_function_string(l, "I"), "II": lame_function_string(l, "II")}
    if family == "spectral":
        return {"L_I": str(L_I(l)), "L_II": str(L_II(l))}
    if family == "twisted":
        return {"Lt_I": str(twisted_spectral(l, "I")), "Lt_II": str(twisted_spectral(l, "II"))}
    if family == "theta":
        return {"L_theta": str(theta_twisted_spectral(l))}
    if family == "cohn":
        return {k: format_int_poly(cohn_polynomial(l, k).coeffs) for k in ("I", "II")}
    if family == "reduction":
        return {"P_hat": str(reduction_polynomial(l).P_hat)}
    if family == "full":
        return {"L": str(full_spectral(l)), "Lt": str(full_twisted_spectral(l))}
    raise ValueError(family)


FAMILIES = ("hermite", "lame", "spectral", "twisted", "theta", "cohn", "reduction", "full")


def _emit(obj, fmt: str, out):
    if fmt == "json":
        json.dump(obj, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    if isinstance(obj, dict):
        for k in obj:
            v = obj[k]
            if isinstance(v, dict):
                out.write(f"{k}\n")
                for kk in v:
                    out.write(f"  {kk}: {v[kk]}\n")
            else:
                out.write(f"{k}: {v}\n")
    else:
        out.write(f"{obj}\n")


def _open_out(path):
    return open(path, "w", newline="") if path else nullcontext(sys.stdout)


def cmd_tables(a) -> int:
    ls = list(range(1, a.upto + 1)) if a.upto else [a.ell]
    over = [l for l in ls if l > SYMBOLIC_BUDGET]
    if over and not a.force:
        print(f"warning: l > {SYMBOLIC_BUDGET} exceeds the symbolic budget; "
              "output truncated (use --force)", file=sys.stderr)
        ls = [l for l in ls if l <= SYMBOLIC_BUDGET]
    res = {str(l): _family_rows(a.family, l) for l in ls}
    with _open_out(a.out) as fh:
        _emit({"family": a.family, "rows": res} if a.format == "json" else res, a.format, fh)
    return 0


def cmd_covering(a) -> int:
    cov = theorem_L(a.ell)
    obj = {"ell": a.ell, "x0": {"num": str(cov.x0.num), "den": str(cov.x0.den)},
           "y0_over_nu": {"num": str(cov.y0_over_nu.num), "den": str(cov.y0_over_nu.den)},
           "kappa_over_nu": {"num": str(cov.kappa_over_nu.num),
                             "den": str(cov.kappa_over_nu.den)},
           "degree": cov.degree()}
    with _open_out(a.out) as fh:
        _emit(obj, a.format, fh)
    return 0


def cmd_cohn(a) -> int:
    kinds = [a.kind] if a.kind else ["I", "II"]
    obj = {}
    for k in kinds:
        c = cohn_polynomial(a.ell, k).coeffs
        obj[k] = {"coeffs": [int(v) for v in c], "factored": format_int_poly(c),
                  "degree": len(c) - 1}
    with _open_out(a.out) as fh:
        if a.format == "json":
            _emit({"ell": a.ell, "cohn": obj}, "json", fh)
        else:
            for k in kinds:
                fh.write(f"{k}: {obj[k]['factored']}\n")
    return 0


def cmd_bandedges(a) -> int:
    edges = band_edges(a.ell, parse_m(a.m))
    with _open_out(a.out) as fh:
        if a.format == "json":
            _emit({"ell": a.ell, "m": a.m, "edges": [_ff(e) for e in edges]}, "json", fh)
        else:
            for e in edges:
                fh.write(_ff(e) + "\n")
    return 0


def _cell(v):
    if isinstance(v, float):
        return _ff(v)
    return str(v)


def cmd_dispersion(a) -> int:
    samples = dispersion_scan(a.ell, a.m, (a.emin, a.emax), a.samples)
    with _open_out(a.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for s in samples:
            w.writerow([_cell(v) for v in s.row()])
    return 0


def cmd_reduce(a) -> int:
    rp = reduction_polynomial(a.ell)
    obj = {"ell": a.ell, "P": str(rp.P), "P_hat": str(rp.P_hat)}
    if a.segment:
        c = reduction_identity_numeric(a.ell, a.segment[0], a.segment[1], a.g2, a.g3)
        obj["numeric"] = {"segment": [_ff(x) for x in c.segment], "lhs": _ff(c.lhs),
                          "rhs": _ff(c.rhs), "error": _ff(c.error)}
    with _open_out(a.out) as fh:
        _emit(obj, a.format, fh)
    return 0


def cmd_verify(a) -> int:
    from .checks import CHECKS, run_checks
    names = a.check or list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        print(f"unknown check(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    kw = {"ell": a.ell}
    if a.m:
        kw["m"] = a.m
    results = run_checks(names, **kw)
    report = {"passed": all(r.passed for r in results),
              "checks": [r.as_dict() for r in results]}
    with _open_out(a.out) as fh:
        if a.format == "json":
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
        else:
            for r in results:
                fh.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}\n")
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lame-spectral",
                                description="Lamé spectral polynomials, coverings and dispersion")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, fmt=("json", "text"), default="text"):
        sp.add_argument("--format", choices=fmt, default=default)
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    t = sub.add_parser("tables", help="polynomial families by degree")
    t.add_argument("--family", choices=FAMILIES, required=True)
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--ell", type=int)
    g.add_argument("--upto", type=int, help="all degrees 1..N")
    t.add_argument("--force", action="store_true", help=f"allow l > {SYMBOLIC_BUDGET}")
    common(t)
    t.set_defaults(func=cmd_tables)

    c = sub.add_parser("covering", help="x0, y0/nu, kappa/nu of the covering map")
    c.add_argument("--ell", type=int, required=True)
    common(c, default="json")
    c.set_defaults(func=cmd_covering)

    h = sub.add_parser("cohn", help="Cohn polynomials in J")
    h.add_argument("--ell", type=int, required=True)
    h.add_argument("--kind", choices=("I", "II"))
    common(h)
    h.set_defaults(func=cmd_cohn)

    b = sub.add_parser("bandedges", help="band edges of the Jacobi-form equation")
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--m", default="1/2")
    common(b)
    b.set_defaults(func=cmd_bandedges)

    d = sub.add_parser("dispersion", help="dispersion scan as CSV")
    d.add_argument("--ell", type=int, required=True)
    d.add_argument("--m", default="1/2")
    d.add_argument("--emin", type=float, required=True)
    d.add_argument("--emax", type=float, required=True)
    d.add_argument("--samples", type=int, default=200)
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_dispersion)

    r = sub.add_parser("reduce", help="hyperelliptic reduction polynomial")
    r.add_argument("--ell", type=int, required=True)
    r.add_argument("--segment", type=float, nargs=2, metavar=("B_A", "B_B"))
    r.add_argument("--g2", type=float, default=1.0)
    r.add_argument("--g3", type=float, default=0.0)
    common(r)
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("--check", action="append", help="check name (repeatable); default all")
    v.add_argument("--ell", type=int)
    v.add_argument("--m", default=None)
    common(v, default="json")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    p = build_parser()
    a = p.parse_args(argv)
    if getattr(a, "ell", None) is not None and a.ell < 1:
        p.error("--ell must be at least 1")
    if getattr(a, "m", None) is not None:
        try:
            parse_m(a.m)
        except (DegenerateModulus, ValueError) as exc:
            p.error(str(exc))
    try:
        return a.func(a)
    except DegenerateModulus as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
