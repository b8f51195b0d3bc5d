import io
import json
import re

import pytest

from adamsext.cli import (EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_UNCERTIFIED, InputError, RunConfig, main,
                          read_expected, shipped_table_path)
from adamsext.render import render_ascii, render_svg
from adamsext.resolve import ExtChart, chart
from adamsext.fpmodule import to_text, trivial_module
from adamsext.steenrod import subalgebra

import fixtures


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def m0_file(tmp_path):
    p = tmp_path / "m0.cell"
    p.write_text(to_text(fixtures.m0()))
    return p


def test_run_config_invariants():
    with pytest.raises(InputError):
        RunConfig("homotopy", "g+", max_stem=-1)
    with pytest.raises(InputError):
        RunConfig("homotopy", "g+", max_stem=5, s_max=3)


def test_catalog_list():
    code, out = run("catalog", "list")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 10 and "S^-3 MO3" in out


def test_verify_all_passes():
    code, out = run("verify", "all")
    assert code == EXIT_OK
    assert "50/50 cells match" in out


def test_verify_perturbed_names_cell(tmp_path):
    text = shipped_table_path().read_text().replace("g-,4,Z/2xZ/2xZ/2", "g-,4,Z/2^2xZ/2")
    p = tmp_path / "bad.csv"
    p.write_text(text)
    code, out = run("verify", "all", "--expected", str(p))
    assert code == EXIT_MISMATCH
    assert "MISMATCH g- pi_4: expected Z/2^2xZ/2, computed Z/2xZ/2xZ/2" in out
    assert "49/50 cells match" in out


def test_verify_subset(tmp_path):
    rows = [l for l in shipped_table_path().read_text().splitlines() if l.startswith(("spinc,", "pinc,"))]
    p = tmp_path / "complex.csv"
    p.write_text("label,n,group\n" + "\n".join(rows) + "\n")
    code, out = run("verify", "all", "--expected", str(p))
    assert code == EXIT_OK and "10/10 cells match" in out
    code, out = run("verify", "spinc", "--expected", str(p))
    assert code == EXIT_OK and "5/5 cells match" in out


def test_verify_bad_table(tmp_path):
    p = tmp_path / "broken.csv"
    p.write_text("label,n,group\ng+,0\n")
    code, _ = run("verify", "all", "--expected", str(p))
    assert code == EXIT_INPUT
    with pytest.raises(InputError, match="line 2"):
        read_expected("label,n,group\nnot-a-label,0,Z\n")


def test_homotopy_g_minus():
    code, out = run("homotopy", "g-")
    assert code == EXIT_OK
    lines = dict(re.findall(r"pi_(\d) = (.*)", out))
    assert [lines[str(n)] for n in range(5)] == ["Z/2", "0", "Z/2", "0", "Z/2 x Z/2 x Z/2"]
    assert "collapse-certified: yes" in out


def test_homotopy_g0_and_mspin():
    _, out = run("homotopy", "g0")
    lines = dict(re.findall(r"pi_(\d) = (.*)", out))
    assert lines["0"] == "Z (2-complete)" and lines["4"] == "Z (2-complete) x Z (2-complete)"
    assert lines["1"] == lines["2"] == lines["3"] == "0"
    _, out = run("homotopy", "mspin")
    lines = dict(re.findall(r"pi_(\d) = (.*)", out))
    assert [lines[str(n)] for n in range(5)] == ["Z (2-complete)", "Z/2", "Z/2", "0", "Z (2-complete)"]


def test_homotopy_json_and_anderson():
    code, out = run("homotopy", "spinc", "--format", "json", "--anderson")
    d = json.loads(out)
    assert d["groups"]["4"] == ["Z", "Z"]
    assert d["potential_differentials"] == []
    assert d["anderson"]["4"] == "Z^2"
    _, out = run("homotopy", "g+", "--anderson")
    assert "[X, S^4 I_Z] = " in out


def test_homotopy_bad_label():
    code, _ = run("homotopy", "spin7")
    assert code == EXIT_INPUT


def test_homotopy_uncertified_exit(monkeypatch):
    import adamsext.cli as cli
    from adamsext.adams import CollapseCertificate, PotentialDifferential

    monkeypatch.setattr(cli, "certify_collapse",
                        lambda page: CollapseCertificate(False, (PotentialDifferential(2, (5, 0), (4, 2), 0),)))
    code, out = run("homotopy", "g+")
    assert code == EXIT_UNCERTIFIED and "--allow-uncertified" in out
    code, out = run("homotopy", "g+", "--allow-uncertified")
    assert code == EXIT_OK and "assumed-collapse: yes" in out


def test_resolve_round_trip(tmp_path, m0_file):
    target = tmp_path / "m0.json"
    code, out = run("resolve", str(m0_file), "-o", str(target), "--max-stem", "6", "--smax", "6")
    assert code == EXIT_OK
    printed = ExtChart.from_json(out)
    saved = ExtChart.from_json(target.read_text())
    assert printed == saved
    assert {n for n, _, _ in saved.classes} == {0}
    code, out = run("chart", str(target), "--format", "json")
    assert ExtChart.from_json(out) == saved


def test_resolve_joker_ascii(tmp_path):
    p = tmp_path / "joker.cell"
    p.write_text(to_text(fixtures.joker()))
    code, out = run("resolve", str(p), "--format", "ascii", "--max-stem", "6", "--smax", "6")
    assert code == EXIT_OK
    assert "# 1 3 1" in out  # the bottom of the stem-2 tower
    assert "o" in out


def test_resolve_empty_module(tmp_path):
    p = tmp_path / "empty.cell"
    p.write_text("algebra A(1)\nrange 0 10\n")
    code, out = run("resolve", str(p), "--max-stem", "3", "--smax", "3")
    assert code == EXIT_OK and json.loads(out)["classes"] == []


def test_resolve_errors(tmp_path):
    p = tmp_path / "bad.cell"
    p.write_text("algebra A(1)\nrange 0 10\ngen x 0\ngen y 1\ngen z 2\nsq1 x = y\nsq1 y = z\n")
    assert run("resolve", str(p))[0] == EXIT_INPUT
    assert run("resolve", "no/such/file")[0] == EXIT_INPUT
    assert run("chart", "no/such/file")[0] == EXIT_INPUT
    q = tmp_path / "bad.json"
    q.write_text("{not json")
    assert run("chart", str(q))[0] == EXIT_INPUT
    assert run("resolve")[0] == EXIT_INPUT
    assert run("homotopy", "g+", "--max-stem", "8")[0] == EXIT_INPUT


def test_resolve_catalog_label():
    code, out = run("resolve", "g+", "--max-stem", "5", "--smax", "6")
    assert code == EXIT_OK
    c = ExtChart.from_json(out)
    assert c.count(4, 0) == 2


# ---------------------------------------------------------------- rendering


def test_ascii_M0_single_column():
    c = chart(fixtures.m0(), 3, 4)
    text = render_ascii(c)
    rows = [l for l in text.splitlines()[:-1] if re.match(r"^\s*\d+ ", l)]
    assert len(rows) == 5
    assert all(l[4] == "o" for l in rows)
    assert text.count("|") == 4


def test_ascii_F2_shows_h1():
    text = render_ascii(chart(trivial_module(subalgebra("A", 1)), 11, 6))
    assert text.count("/") == 4
    assert text.splitlines()[-1].split() == [str(n) for n in range(12)]


def test_ascii_multiple_classes_in_cell():
    from adamsext.chargen import catalog
    text = render_ascii(chart(catalog("g+"), 5, 3))
    bottom = [l for l in text.splitlines() if l.startswith("  0 ")][0]
    assert bottom[4 + 16: 4 + 18] == "oo"


def test_svg():
    svg = render_svg(chart(trivial_module(subalgebra("A", 1)), 11, 6))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count('class="h1"') == 4
    assert svg.count('data-stem="0"') == 7
    assert 'data-stem="10" data-filtration="6"' in svg


def test_render_empty_chart():
    empty = ExtChart("A(1)", "0", 3, 3, ())
    text = render_ascii(empty)
    assert "o" not in text and text.splitlines()[-1].split() == ["0", "1", "2", "3"]
    assert "<circle" not in render_svg(empty)
