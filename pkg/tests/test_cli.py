from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from gamma_sharp import _tables
from gamma_sharp.cli import (
    EXIT_AGREE,
    EXIT_DISAGREE,
    EXIT_USAGE,
    main,
    parse_grid,
)

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_grid_schemes():
    assert parse_grid("1:4:linear") == [1, 2, 3, 4]
    assert parse_grid("1/2:1:linear:3") == [F(1, 2), F(3, 4), F(1)]
    assert parse_grid("125:1000:pow2") == [125, 250, 500, 1000]
    pts = parse_grid("1:100:log10")
    assert pts[0] == 1 and pts[-1] == 100 and len(pts) == 9
    assert all(a < b for a, b in zip(pts, pts[1:]))
    assert all(p.denominator <= 64 for p in pts)


@pytest.mark.parametrize("bad", ["1:2", "0:5:linear", "5:1:linear", "1:10:cubic"])
def test_bad_grid_is_usage_error(capsys, bad):
    with pytest.raises(SystemExit) as info:
        main(["residual", "--family", "stirling", "--grid", bad])
    assert info.value.code == EXIT_USAGE


def test_unknown_command(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_envelope_and_determinism(capsys):
    argv = ("eval", "--family", "gosper-cf", "--k", "0", "--x", "1")
    code, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    assert code == EXIT_AGREE
    assert a["schemaVersion"] == 1 and a["command"] == "eval"
    assert a["config"]["x"] == "1"
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b
    value = a["result"]["value"]
    assert F(value["lo"]) <= F(1000421, 10**6) + F(1, 10**6) and F(value["hi"]) >= F(1000421, 10**6) - F(1, 10**6)


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GAMMA_SHARP_PRECISION", "96")
    _, doc = run_json(capsys, "oracle", "--x", "5")
    assert doc["config"]["precision"] == 96
    _, doc = run_json(capsys, "oracle", "--x", "5", "-p", "200")
    assert doc["config"]["precision"] == 200
    monkeypatch.setenv("GAMMA_SHARP_PRECISION", "lots")
    assert run(capsys, "oracle", "--x", "5")[0] == EXIT_USAGE


def test_low_precision_rejected(capsys):
    assert run(capsys, "oracle", "--x", "5", "-p", "8")[0] == EXIT_USAGE


def test_oracle_domain_is_usage_error(capsys):
    assert run(capsys, "oracle", "--x", "0")[0] == EXIT_USAGE


def test_derive_depth_cap(capsys):
    assert run(capsys, "derive", "--family", "gosper-cf", "--k", "9")[0] == EXIT_USAGE
    code, doc = run_json(capsys, "derive", "--family", "gosper-cf", "--k", "1")
    assert code == EXIT_AGREE
    assert "5929/32400" in json.dumps(doc["result"])


def test_constants_emit_source_matches_embedded(capsys):
    code, out, _ = run(capsys, "constants", "--emit-source")
    assert code == EXIT_AGREE
    with open(_tables.__file__, encoding="utf-8") as fh:
        assert out == fh.read()


def test_constants_listing(capsys):
    _, doc = run_json(capsys, "constants")
    level0 = doc["result"]["GOSPER_CF"][0]
    assert level0["constants"] == {"kappa_0": "1/72", "lambda_0": "31/90"}
    assert level0["mu"] == 4 and level0["limitMagnitude"] == "5929/4665600"


def test_csv_output(capsys):
    code, out, _ = run(capsys, "residual", "--family", "stirling", "--grid", "1:3:linear", "--format", "csv")
    assert code == EXIT_AGREE
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["x"] for r in rows] == ["1", "2", "3"]
    assert set(rows[0]) == {"x", "E", "relE"}


def test_table_csv_and_unknown_family(capsys):
    code, out, _ = run(
        capsys, "table", "--grid", "1:2:linear", "--families", "stirling,gosper-cf:1", "--format", "csv"
    )
    assert code == EXIT_AGREE
    header = out.splitlines()[0].split(",")
    assert header == ["x", "STIRLING", "GOSPER_CF(1)"]
    assert run(capsys, "table", "--grid", "1:2:linear", "--families", "nope")[0] == EXIT_USAGE


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "oracle", "--x", "3", "-o", str(target))
    assert code == EXIT_AGREE and out == ""
    assert json.loads(target.read_text())["command"] == "oracle"


def test_midpoint_goes_to_stderr(capsys):
    _, out, err = run(capsys, "eval", "--family", "stirling", "--x", "10", "--midpoint")
    json.loads(out)
    assert err.startswith("value: 3598695.6")


def test_rate_exit_codes(capsys):
    assert run(capsys, "rate", "--family", "ramanujan-base", "--lambda", "5")[0] == EXIT_AGREE
    assert run(capsys, "rate", "--family", "gosper-cf", "--k", "0", "--lambda", "6")[0] == 2


def test_verify_exit_codes(capsys):
    code, doc = run_json(capsys, "verify", "--theorem", "4", "--grid", "1:100:log10")
    assert code == EXIT_DISAGREE
    assert doc["result"]
    code, _, _ = run(capsys, "verify", "--theorem", "2", "--k", "1", "--grid", "1:100:log10")
    assert code == EXIT_AGREE
    code, _, err = run(capsys, "verify", "--theorem", "2", "--k", "0", "--grid", "25/2:20:linear")
    assert code == EXIT_USAGE and "error" in err


def test_certify_reports_sign(capsys):
    code, doc = run_json(capsys, "certify", "--theorem", "1", "--k", "0")
    assert code == EXIT_DISAGREE
    assert doc["result"]


def test_report_markdown(capsys):
    code, out, _ = run(capsys, "report", "--no-fit", "--points", "6", "--markdown")
    assert code == EXIT_DISAGREE
    assert out.lstrip().startswith("#")
