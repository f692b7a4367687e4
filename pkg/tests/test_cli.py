"""CLI surface: table formatting, JSON round-trips, exit codes, goldens."""

import json
import os

from click.testing import CliRunner

from knothom.cli import (comparison_report, dims_from_json, dims_to_json,
                         format_table, hfk, kh)

from conftest import CORPUS, fixture_path

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return fh.read()


def run(cli, args, **kw):
    return CliRunner().invoke(cli, args, catch_exceptions=False, **kw)


def test_format_table_convention():
    assert format_table({(0, -1): 1, (0, 1): 1}) == "1^0_{-1} 1^0_1"
    assert format_table({(-7, -13): 1}) == "1^{-7}_{-13}"
    assert format_table({}) == "0"


def test_compute_unknot_golden():
    res = run(kh, ["compute", "--pd", fixture_path("unknot.json"),
                   "--ring", "Q"])
    assert res.exit_code == 0
    assert res.output == golden("unknot_compute.txt")


def test_compute_trefoil_golden(tmp_path):
    pd = tmp_path / "trefoil.json"
    pd.write_text(json.dumps(CORPUS["trefoil_right"].to_json()))
    res = run(kh, ["compute", "--pd", str(pd), "--ring", "Q",
                   "--delta", "--euler"])
    assert res.exit_code == 0
    assert res.output == golden("trefoil_compute.txt")


def test_compute_json_roundtrip_byte_identical(tmp_path):
    pd = tmp_path / "fig8.json"
    pd.write_text(json.dumps(CORPUS["figure_eight"].to_json()))
    out = tmp_path / "out.json"
    run(kh, ["compute", "--pd", str(pd), "--json", str(out)])
    text = out.read_text()
    obj = json.loads(text)
    assert json.dumps(obj, sort_keys=True, indent=2) + "\n" == text
    assert dims_from_json(obj["dims"]) == dims_from_json(
        dims_to_json(dims_from_json(obj["dims"])))


def test_compute_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("this is not a diagram")
    res = run(kh, ["compute", "--pd", str(bad)])
    assert res.exit_code == 2


def test_compute_size_guard_exit_3(tmp_path, monkeypatch):
    monkeypatch.setenv("KH_MAX_CROSSINGS", "2")
    pd = tmp_path / "trefoil.json"
    pd.write_text(json.dumps(CORPUS["trefoil_right"].to_json()))
    res = run(kh, ["compute", "--pd", str(pd)])
    assert res.exit_code == 3


def test_compare_reflexive(tmp_path):
    pd = tmp_path / "t.json"
    pd.write_text(json.dumps(CORPUS["figure_eight"].to_json()))
    out = tmp_path / "rep.json"
    res = run(kh, ["compare", "--a", str(pd), "--b", str(pd),
                   "--json", str(out)])
    assert res.exit_code == 0
    rep = json.loads(out.read_text())
    assert rep["bigraded_equal"] and rep["euler_equal"]
    assert rep["total"][0] == rep["total"][1]


def test_comparison_report_flags_recomputed():
    a = {(0, 1): 1, (0, 3): 1}
    b = {(0, -1): 1, (0, -3): 1}
    rep = comparison_report(a, b)
    assert not rep["bigraded_equal"]
    assert rep["delta_swap"]
    assert not rep["euler_equal"]


def test_family_requires_band_site():
    res = run(kh, ["family", "--base", fixture_path("unknot.json"),
                   "--twists", "1"])
    assert res.exit_code == 2


def test_family_zero_twists_matches_compute(tmp_path):
    base = tmp_path / "base.json"
    obj = json.load(open(fixture_path("unknot.json")))
    obj["band_site"] = [2, 2]
    base.write_text(json.dumps(obj))
    fam = run(kh, ["family", "--base", str(base), "--twists", "0"])
    comp = run(kh, ["compute", "--pd", fixture_path("unknot.json")])
    assert fam.exit_code == 0
    assert comp.output.strip() in fam.output


def test_hfk_grid_trefoil_golden():
    res = run(hfk, ["grid", "--file", fixture_path("grid_trefoil.json"),
                    "--flavor", "hat", "--tau", "--delta"])
    assert res.exit_code == 0
    assert res.output == golden("trefoil_grid.txt")


def test_hfk_grid_unlink():
    res = run(hfk, ["grid", "--file", fixture_path("grid_unlink2.json")])
    assert res.exit_code == 0
    assert res.output.strip() == "1^{-1}_0 1^0_0"


def test_hfk_grid_minus_towers():
    res = run(hfk, ["grid", "--file", fixture_path("grid_unknot.json"),
                    "--flavor", "minus"])
    assert res.exit_code == 0
    assert "towers: (0,0)" in res.output


def test_hfk_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"O": [0, 1], "X": [0, 1]}')
    res = run(hfk, ["grid", "--file", str(bad)])
    assert res.exit_code == 2


def test_hfk_size_guard_exit_3(tmp_path):
    big = tmp_path / "big.json"
    big.write_text(json.dumps(
        {"O": list(range(9)), "X": [(i + 1) % 9 for i in range(9)]}))
    res = run(hfk, ["grid", "--file", str(big)])
    assert res.exit_code == 3
