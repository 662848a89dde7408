import csv
import json

import pytest

from lame_spectral.cli import main


def run(capsys, *args):
    rc = main(list(args))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_tables_spectral(capsys):
    rc, out, _ = run(capsys, "tables", "--family", "spectral", "--ell", "4")
    assert rc == 0
    assert "L_I: B^3 - 52*B*g2 + 560*g3" in out
    assert "L_II: B^2 + 10*B*e - 35*e^2 - 7*g2" in out


def test_tables_cohn(capsys):
    rc, out, _ = run(capsys, "tables", "--family", "cohn", "--ell", "3")
    assert "II: 2^2 J + 1" in out and "I: ---" in out


def test_tables_reduction_json(capsys):
    rc, out, _ = run(capsys, "tables", "--family", "reduction", "--ell", "5", "--format", "json")
    obj = json.loads(out)
    assert obj["rows"]["5"]["P_hat"] == "B^4 + (-321/4)*B^2*g2 + (2835/4)*B*g3 + (891/2)*g2^2"


@pytest.mark.parametrize("family", ["hermite", "lame", "twisted", "theta", "full"])
def test_tables_families(capsys, family):
    rc, out, _ = run(capsys, "tables", "--family", family, "--upto", "3")
    assert rc == 0 and out.startswith("1\n")


def test_budget_warning(capsys):
    rc, out, err = run(capsys, "tables", "--family", "spectral", "--upto", "11")
    assert rc == 0 and "budget" in err
    assert "\n11\n" not in out and "10\n" in out


def test_bandedges(capsys):
    rc, out, _ = run(capsys, "bandedges", "--ell", "3", "--m", "1/2")
    vals = out.split()
    assert len(vals) == 7 and vals[3] == "6.000000000000e+00"
    assert vals[0] == "2.050510257217e+00"


def test_covering_l2(capsys):
    rc, out, _ = run(capsys, "covering", "--ell", "2")
    obj = json.loads(out)
    assert obj["x0"] == {"num": "(1/9)*B^3 + 3*g3", "den": "B^2 - 3*g2"}
    assert obj["degree"] == 3


def test_cohn_json(capsys):
    rc, out, _ = run(capsys, "cohn", "--ell", "4", "--kind", "I", "--format", "json")
    assert json.loads(out)["cohn"]["I"]["coeffs"] == [1225, 972]


def test_reduce_segment(capsys):
    rc, out, _ = run(capsys, "reduce", "--ell", "2", "--segment", "10", "20", "--format", "json")
    obj = json.loads(out)
    assert float(obj["numeric"]["error"]) < 1e-8


def test_dispersion_csv(tmp_path, capsys):
    f = tmp_path / "d.csv"
    rc, _, _ = run(capsys, "dispersion", "--ell", "2", "--m", "1/2", "--emin", "1", "--emax", "8",
                   "--samples", "40", "--out", str(f))
    rows = list(csv.reader(open(f)))
    assert rows[0] == ["E", "nu_re", "nu_im", "k_re", "k_im", "k_folded", "band_index", "flags"]
    assert len(rows) == 41
    g = tmp_path / "e.csv"
    run(capsys, "dispersion", "--ell", "2", "--m", "1/2", "--emin", "1", "--emax", "8",
        "--samples", "40", "--out", str(g))
    assert f.read_bytes() == g.read_bytes()


def test_verify_pass(capsys):
    rc, out, _ = run(capsys, "verify", "--check", "gamma-independence", "--ell", "8")
    assert rc == 0 and json.loads(out)["passed"]


def test_verify_dispersion(capsys):
    rc, out, _ = run(capsys, "verify", "--check", "dispersion-oracle", "--ell", "2", "--m", "1/2")
    rep = json.loads(out)
    assert rc == 0 and rep["checks"][0]["detail"]["2"]["max_dk"] < 1e-6


def test_verify_unknown(capsys):
    rc, _, err = run(capsys, "verify", "--check", "nonsense")
    assert rc == 2 and "unknown" in err


def test_verify_failure_exit(capsys, monkeypatch):
    from lame_spectral import checks
    monkeypatch.setitem(checks.CHECKS, "golden-tables",
                        lambda **kw: checks.CheckResult("golden-tables", False, {}))
    rc, out, _ = run(capsys, "verify", "--check", "golden-tables", "--format", "text")
    assert rc == 1 and out.strip() == "FAIL golden-tables"


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit):
        main(["bandedges", "--ell", "0"])
    with pytest.raises(SystemExit):
        main(["bandedges", "--ell", "2", "--m", "abc"])
    rc, _, err = run(capsys, "bandedges", "--ell", "2", "--m", "1")
    assert rc == 2 and "error" in err
