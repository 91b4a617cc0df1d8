import io
import json

import pytest

from mordell.cli import build_parser, main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_zeta_d2():
    code, text = run(["zeta", "--d", "2", "--bound", "10000", "--tol", "1e-5"])
    assert code == 0
    res = json.loads(text)
    assert res["witness"] == {"x": "-1/1", "y": "1/1"}
    assert res["outcome"] == "found" and res["tol"] == 1e-5
    assert set(res) >= {"d", "outcome", "witness", "hhat", "h_f", "bound"}


def test_zeta_none_found():
    code, text = run(["zeta", "--d", "6", "--bound", "10000"])
    res = json.loads(text)
    assert code == 0 and res["outcome"] == "none" and res["witness"] is None


def test_decompose():
    code, text = run(["decompose", "--d", "2", "--triple", "34,71,8"])
    assert code == 0
    assert json.loads(text) == {"b0": 1, "b1": 2, "d1": 2, "x1": 17, "y1": 71}


def test_sieve_csv_rows():
    code, text = run(["sieve", "--max-x", "100", "--format", "csv"])
    assert code == 0
    assert len(text.splitlines()) == 198


def test_height_json():
    code, text = run(["height", "--d", "2", "--point", "17/4,-71/8", "--tol", "1e-6"])
    res = json.loads(text)
    assert code == 0
    assert res["tol"] == 1e-6 and not res["torsion"]
    assert res["h_f"] == pytest.approx(8.52535975, abs=1e-8)


def test_search_lists_points():
    code, text = run(["search", "--d", "2", "--bound", "10000"])
    res = json.loads(text)
    assert [p["point"] for p in res["points"]] == [{"x": "-1/1", "y": "1/1"}, {"x": "17/4", "y": "71/8"}]


def test_count_form():
    code, text = run(["count-form", "--form", "1:0,2,0;-1:0,0,2;-1:1,0,1", "--box", "10", "10", "1"])
    assert code == 0
    assert json.loads(text) == {"N": 35, "T": 100, "V": 100}


def test_count_form_fit_csv():
    code, text = run(["count-form", "--form", "1:0,2,0;-1:0,0,2;-1:1,0,1", "--fit",
                      "--ladder", "1000", "100000", "--format", "csv"])
    assert code == 0
    header, row = text.strip().splitlines()
    assert header == "slope,intercept,nonsingular_exponent,n_boxes"
    assert 0 < float(row.split(",")[0]) < 1


def test_survey_csv_and_json(tmp_path):
    cache = str(tmp_path / "s.ndjson")
    code, text = run(["survey", "--max-x", "10", "--alpha", "0.2222", "--bound", "10000", "--cache", cache])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "d,square_part,outcome,hhat_min,h_f_min,witness_x,witness_y"
    assert len(lines) == 21
    code, text = run(["survey", "--max-x", "10", "--alpha", "0.2222", "--bound", "10000",
                      "--cache", cache, "--out", "json"])
    res = json.loads(text)
    assert res["metadata"]["none_found_counted_as"] == "non-violator"
    assert res["counts"]["S6_size"] == 20


def test_deterministic_output():
    argv = ["survey", "--max-x", "30", "--alpha", "0.3", "--bound", "1000"]
    assert run(argv) == run(argv)


@pytest.mark.parametrize("argv", [
    ["zeta", "--d", "64", "--bound", "10"],
    ["zeta", "--d", "2"],
    ["frobnicate"],
    ["decompose", "--d", "2", "--triple", "1,2"],
    ["decompose", "--d", "2", "--triple", "1,1,1"],
    ["height", "--d", "2", "--point", "1,1"],
    ["sieve", "--max-x", "10", "--bogus", "1"],
    ["survey", "--max-x", "10", "--alpha", "1.5"],
])
def test_usage_errors_exit_1(argv):
    code, _ = run(argv)
    assert code == 1


def test_every_subcommand_has_help():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        assert p.description, name
