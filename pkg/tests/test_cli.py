import csv
import io
import json

import pytest

from maass_poincare import cli


def run(argv):
    out = io.StringIO()
    code = cli.run(cli.parse_args(argv), stdout=out)
    return code, out.getvalue()


def test_parse_args_builds_config():
    cfg = cli.parse_args(["eval", "--k", "-2", "--m", "1", "--tau=-0.4,1.1", "--tau", "0.2,-1.3", "--cmax", "50"])
    assert cfg.command == "eval" and cfg.form.k == -2 and cfg.trunc.c_max == 50
    assert [p.plane for p in cfg.points] == ["upper", "lower"]
    assert cli.parse_args(["continue", "--k", "-2", "--m", "1", "--tau", "0,1"]).trunc.c_max == 30


@pytest.mark.parametrize("argv", [
    ["eval", "--k", "-2", "--m", "1", "--tau", "0.2,abc"],
    ["eval", "--k", "-2", "--m", "1", "--tau", "0.2,0"],
    ["eval", "--k", "-3", "--m", "1", "--tau", "0.2,1"],
    ["coeff", "--k", "-2", "--m", "1", "--n", "1..x"],
    ["verify", "--suite", "bol,nope"],
    ["kloosterman", "--m", "1", "--n", "1", "--c", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.parse_args(argv)
    assert exc.value.code == 2


def test_coeff_holo_csv_ratios():
    code, text = run(["coeff", "--kind", "holo", "--k", "12", "--m", "1", "--n", "1..4", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [round(float(r["ratio"])) for r in rows] == [1, -24, 252, -1472]
    assert all(float(r["tail"]) < 1e-12 for r in rows)


def test_coeff_maass_json():
    code, text = run(["coeff", "--k", "-2", "--m", "1", "--n", "0..2"])
    record = json.loads(text)
    assert code == 0 and record["schema_version"] == 1 and record["errors"] == []
    assert record["params"]["trunc"]["c_max"] == 300
    holo = {r["n"]: r["value"] for r in record["results"] if r["part"] == "holo"}
    assert holo[0] == pytest.approx(-240, rel=1e-8) and holo[1] == pytest.approx(-141444, rel=1e-8)


def test_kloosterman_table():
    code, text = run(["kloosterman", "--m", "1", "--n", "1,2", "--c", "1..3"])
    values = {(r["n"], r["c"]): r["value"] for r in json.loads(text)["results"]}
    assert values[(2, 2)] == pytest.approx(-1.0) and values[(2, 3)] == pytest.approx(2.0)


def test_eval_and_continue_agree_below_real_line():
    _, a = run(["eval", "--k", "-2", "--m", "1", "--tau", "0.2,-1.3"])
    _, b = run(["continue", "--k", "-2", "--m", "1", "--tau", "0.2,-1.3"])
    va, vb = json.loads(a)["results"][0]["value"], json.loads(b)["results"][0]["H"]
    za, zb = complex(va["re"], va["im"]), complex(vb["re"], vb["im"])
    assert abs(za - zb) <= 1e-4 * (1 + abs(za))


def test_numeric_error_is_structured():
    # tiny |v|: alpha(s) would need exp(> 650) on the contour
    code, text = run(["continue", "--k", "-2", "--m", "1", "--tau", "0.1,0.01"])
    record = json.loads(text)
    assert code == 2 and record["results"] == []
    assert record["errors"][0]["type"] == "NumericOverflowError"


def test_verify_exit_codes():
    code, text = run(["verify", "--suite", "bol,xi"])
    assert code == 0 and [r["check_name"] for r in json.loads(text)["results"]] == ["bol", "xi"]
    code, _ = run(["verify", "--suite", "theorem1-upper", "--tol", "1e-12"])
    assert code == 1


def test_verify_csv_has_residual_rows():
    code, text = run(["verify", "--suite", "bol", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 7 and rows[0]["check"] == "bol"


def _strip_runtime(text):
    record = json.loads(text)
    for r in record["results"]:
        r.pop("runtime_ms", None)
    return record


def test_output_is_deterministic():
    argv = ["verify", "--suite", "modularity,alpha-residue"]
    assert _strip_runtime(run(argv)[1]) == _strip_runtime(run(argv)[1])
    argv = ["continue", "--k", "-4", "--m", "1", "--tau", "0.3,-1", "--cmax", "5"]
    assert run(argv)[1] == run(argv)[1]


def test_output_dir_override(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    code, text = run(["kloosterman", "--m", "1", "--n", "1", "--c", "5", "--output", "k.json"])
    assert code == 0 and text == ""
    assert json.loads((tmp_path / "k.json").read_text())["command"] == "kloosterman"


def test_main_entry_point(capsys):
    assert cli.main(["kloosterman", "--m", "1", "--n", "1", "--c", "1", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["m,n,c,value", "1,1,1,1.0"]
