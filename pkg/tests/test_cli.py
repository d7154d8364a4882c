import json
import math
import xml.etree.ElementTree as ET

import pytest

from bstoeplitz.cli import dumps, run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_csv(capsys):
    code, out, _ = _run(capsys, "spectrum", "--family", "T", "--k", "4", "--eps", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "re,im"
    assert [float(l.split(",")[0]) for l in lines[1:]] == [-1, -0.5, 0, 0.5, 1]


def test_spectrum_json(capsys):
    code, out, _ = _run(capsys, "spectrum", "--family", "S", "--k", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["meta"]["family"] == "S"
    assert [v["re"] for v in doc["data"]["eigenvalues"]] == pytest.approx([-0.8, -0.4, 0, 0.4, 0.8])


def test_action_json(capsys):
    code, out, _ = _run(capsys, "action", "--lambda-re", "0", "--lambda-im", "0", "--eps", "0")
    assert code == 0
    data = json.loads(out)["data"]
    assert data["value"]["re"] == pytest.approx(math.pi, abs=1e-12)
    assert data["last_delta"] <= 1e-12


def test_solve_window_violation(capsys):
    code, _, err = _run(capsys, "solve", "--k", "20", "--eps", "0", "--variant", "principal", "--j", "0")
    assert code == 2
    assert "WindowViolation" in err


def test_action_window_violation(capsys):
    code, _, err = _run(capsys, "action", "--lambda-re", "1.5")
    assert code == 2
    assert err.startswith("WindowViolation")


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--family", "T", "--k", "1"],
        ["spectrum", "--family", "X", "--k", "4"],
        ["solve", "--k", "20", "--eps", "0.9"],
        ["compare", "--k", "20", "--window", "0.95"],
        ["sweep", "--ks", "20,10,40"],
        ["sweep", "--ks", "a,b"],
        ["action", "--lambda-re", "0", "--quad-tol", "-1"],
        ["plot", "--input", "/nonexistent/report.json"],
        [],
    ],
)
def test_config_errors(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert len(err.strip().splitlines()) == 1


def test_solve_single_and_window(capsys):
    code, out, _ = _run(capsys, "solve", "--k", "20", "--j", "5")
    sol = json.loads(out)["data"]["solutions"]
    assert len(sol) == 1 and sol[0]["lambda"]["re"] == pytest.approx(-0.5, abs=1e-10)
    code, out, _ = _run(capsys, "solve", "--k", "10", "--variant", "halfform", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 8


def test_compare_plot_round_trip(tmp_path, capsys):
    report = tmp_path / "report.json"
    fig = tmp_path / "fig.svg"
    assert run(["compare", "--k", "20", "--eps", "0.2", "--variant", "principal", "--out", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert set(doc) == {"meta", "data"}
    assert doc["data"]["exact_count_in_window"] == 17
    assert run(["plot", "--input", str(report), "--out", str(fig)]) == 0
    root = ET.fromstring(fig.read_text())
    paths = root.findall("{http://www.w3.org/2000/svg}path")
    blue = [p for p in paths if p.get("stroke") == "blue"]
    red = [p for p in paths if p.get("stroke") == "red"]
    # one legend marker of each kind
    assert len(blue) == len(doc["data"]["exact"]) + 1
    assert len(red) == len(doc["data"]["approx"]) + 1
    assert root.get("viewBox") == "0 0 720 360"


def test_compare_svg_direct_matches_plot(tmp_path, capsys):
    report = tmp_path / "r.json"
    run(["compare", "--k", "12", "--eps", "0.2", "--out", str(report)])
    direct = tmp_path / "a.svg"
    via = tmp_path / "b.svg"
    run(["compare", "--k", "12", "--eps", "0.2", "--format", "svg", "--out", str(direct)])
    run(["plot", "--input", str(report), "--out", str(via)])
    assert direct.read_text() == via.read_text()


def test_sweep(capsys):
    code, out, _ = _run(capsys, "sweep", "--ks", "10,20,40", "--eps", "0.2", "--variant", "halfform")
    assert code == 0
    data = json.loads(out)["data"]
    assert [row["k"] for row in data["table"]] == [10, 20, 40]
    assert -2.6 < data["slope"] < -1.4


def test_compare_csv(capsys):
    code, out, _ = _run(capsys, "compare", "--k", "10", "--eps", "0", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "exact_re,exact_im,approx_re,approx_im,distance"
    assert len(lines) == 1 + 9


def test_number_format():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(-0.0) == "0"
    assert dumps(1 - 2j) == '{\n  "re": 1,\n  "im": -2\n}'
    assert dumps(float("inf")) == "null"


def test_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["compare", "--k", "30", "--eps", "0.2", "--variant", "halfform"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
