import csv
import json
from fractions import Fraction as F

import pytest

from conehomeo.cli import emit_samples, main, parse_scenario, run_scenario
from conehomeo.errors import ParseError, UnknownReference
from conehomeo.fixtures import f2
from conehomeo.homeo import IdentityHomeo
from conehomeo.swindle import build_lemma1_homeo


def test_f0_bundled(tmp_path, capsys):
    assert main(["--scenario", "f0_lemma1", "--out", str(tmp_path)]) == 0
    assert "FAIL" not in capsys.readouterr().out
    rows = list(csv.DictReader((tmp_path / "f0_h_levels.csv").open()))
    v0 = [r["region"] for r in rows if r["in_base"] == "v0"]
    assert v0[4:11] == ["B1", "A1|B1", "A1", "A1|B2", "B2", "A2|B2", "A2"]
    assert json.loads((tmp_path / "report.json").read_text())["passed"] is True


def test_suspension_bundled(capsys):
    assert main(["--scenario", "suspension_corollary1"]) == 0
    assert "PASS strong-n targets" in capsys.readouterr().out


def test_reproducible(tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        main(["--scenario", "f2_planar", "--out", str(d), "--seed", "7"])
        outs.append([(d / n).read_bytes() for n in ("report.txt", "report.json", "f2_h_box.csv")])
    assert outs[0] == outs[1]


def test_dangling_chart_name(capsys):
    doc = {"ambient": {"kind": "plane"}, "charts": {},
           "commands": [{"op": "build-h", "phi": "nowhere", "psi": "psi"}]}
    with pytest.raises(UnknownReference) as e:
        run_scenario(doc)
    assert e.value.name == "nowhere"


def test_float_literal_position():
    text = '{\n  "ambient": {"kind": "square", "halfwidth": 1.5},\n  "commands": []\n}'
    with pytest.raises(ParseError) as e:
        parse_scenario(text)
    assert (e.value.line, e.value.column) == (2, 46)


def test_syntax_error_position():
    with pytest.raises(ParseError) as e:
        parse_scenario('{"ambient": }')
    assert e.value.line == 1 and e.value.column == 13


def test_unknown_op():
    with pytest.raises(ParseError):
        parse_scenario('{"ambient": {"kind": "plane"}, "commands": [{"op": "explode"}]}')


def test_bad_file_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"ambient": {"kind": "plane"}, "commands": [{"op": "verify", "map": "h"}]}')
    assert main(["--scenario", str(p)]) == 2
    assert "unknown map reference 'h'" in capsys.readouterr().err


def test_identity_samples(tmp_path):
    pts = [(F(i, 10), F(j, 10)) for i in range(10) for j in range(10)]
    assert emit_samples(IdentityHomeo(None), pts, tmp_path / "id.csv") == 100
    rows = list(csv.DictReader((tmp_path / "id.csv").open()))
    assert len(rows) == 100 and all((r["in_x"], r["in_y"]) == (r["out_x"], r["out_y"]) for r in rows)


def test_planar_samples_are_exact(tmp_path):
    phi, psi = f2()
    h = build_lemma1_homeo(phi, psi)
    pts = [(F(i, 4), F(j, 4)) for i in range(-4, 5) for j in range(-4, 5)]
    emit_samples(h, pts, tmp_path / "f2.csv")
    for r in csv.DictReader((tmp_path / "f2.csv").open()):
        x = (F(r["out_x"]), F(r["out_y"]))
        assert h.inv(x) == (F(r["in_x"]), F(r["in_y"]))
