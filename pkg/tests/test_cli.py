"""CLI plumbing: flags, formats, caching, and error exits."""

import json
import pathlib

import pytest

from sliceforge import cli, svg
from sliceforge.ssengine import DifferentialRule, rules_to_script


def test_parse_window():
    assert cli.parse_window("-1:10,-10:30") == ((-1, 10), (-10, 30))
    with pytest.raises(SystemExit):
        cli.parse_window("nope")


def test_bounds_command(capsys):
    assert cli.main(["bounds", "--k", "2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["schema"] == "sliceforge/1"
    assert body["bounds"] == [{"k": 1, "lower": 4, "upper": 7},
                              {"k": 2, "lower": 8, "upper": 15}]


def test_tate_h0_uses_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SLICEFORGE_CACHE", str(tmp_path))
    assert cli.main(["tate-h0", "--max-degree", "8"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert first["dims"] == [1, 1, 1, 0, 0, 0, 1, 0, 0]
    cached = tmp_path / "tate-h0-8.json"
    assert cached.exists()
    # a poisoned cache is read back verbatim, proving the memo is used
    cached.write_text(json.dumps({"schema": "sliceforge/1", "dims": [9]}))
    assert cli.main(["tate-h0", "--max-degree", "8"]) == 0
    assert json.loads(capsys.readouterr().out)["dims"] == [9]


def test_power_check_command(capsys):
    assert cli.main(["power-check", "1", "2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["nontrivial"] is False
    assert cli.main(["power-check", "2", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["nontrivial"] is True


def test_coef_command(capsys):
    assert cli.main(["coef", "0", "0", "0"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["mackey"]["levels"][0] == [4]


def test_bredon_command(capsys):
    assert cli.main(["bredon", "0", "0", "0"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["mackey"]["levels"][0] == [4]


def test_run_empty_window(tmp_path, capsys):
    code = cli.main(["run", "--window", "3:3,0:5", "--out", str(tmp_path)])
    assert code == 0
    chart = json.loads((tmp_path / "page-final.json").read_text())
    assert chart["dots"] == [] and chart["diffs"] == []


def test_run_rejects_even_page_script(tmp_path, capsys):
    script = tmp_path / "rules.json"
    script.write_text(rules_to_script([DifferentialRule(4, "uL", "aS")]))
    code = cli.main(["run", "--rules", str(script), "--out", str(tmp_path)])
    assert code == 2
    body = json.loads(capsys.readouterr().out)
    assert body["error"] == "even page rule"


def test_svg_renderer_emits_glyphs_and_dashes():
    chart = {
        "schema": "sliceforge/1",
        "window": {"stem_min": 0, "stem_max": 4, "filt_min": 0, "filt_max": 6},
        "page": 3,
        "dots": [
            {"stem": 0, "filtration": 0, "mackey": "circle",
             "names": ["1"], "c2_names": ["1"]},
            {"stem": 2, "filtration": 2, "mackey": "box",
             "names": ["x"], "c2_names": []},
        ],
        "diffs": [{"page": 3, "level": 4, "from": [2, 2], "to": [1, 5],
                   "source": "x", "target": "y"}],
        "exotic": [{"kind": "restriction", "stem": 2, "from": 0, "to": 2,
                    "source": "a", "target": "b", "jump": 4}],
    }
    text = svg.render_chart(chart)
    assert text.startswith("<svg")
    assert "stroke-dasharray" in text and "green" in text
    assert "circle" in text and "rect" in text
