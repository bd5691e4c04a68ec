import json
import subprocess
import sys

import numpy as np
import pytest

from twostokes import formats, states
from twostokes.cli import main


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def error_of(err):
    doc = json.loads(err.strip().splitlines()[-1])
    assert set(doc) == {"error", "message"}
    return doc["error"]


@pytest.fixture
def bell_file(tmp_path, capsys):
    path = tmp_path / "bell.json"
    assert run(["state", "make", "--kind", "bell", "-o", path], capsys)[0] == 0
    return path


def test_state_make_kinds(tmp_path, capsys):
    cases = {
        "product": ["--jones1", "1,0", "--jones2", "1,1j"],
        "bell": ["--bell", "psi-"],
        "werner": ["--lambda", "0.5"],
        "mixture2": ["--jones1", "1,0", "--jones2", "1,0", "--jones3", "0,1", "--jones4", "0,1", "--lambda", "0.5"],
        "random": ["--ensemble", "product-mixture", "--terms", "3", "--seed", "4"],
    }
    for kind, extra in cases.items():
        path = tmp_path / f"{kind}.json"
        code, _, _ = run(["state", "make", "--kind", kind, *extra, "-o", path], capsys)
        assert code == 0
        assert formats.parse_state(path.read_text()).physical
    werner = formats.parse_state((tmp_path / "werner.json").read_text())
    np.testing.assert_allclose(werner.rho, states.werner(states.bell("phi+"), 0.5).rho, atol=1e-15)


def test_state_make_to_stdout(capsys):
    code, out, _ = run(["state", "make", "--kind", "bell"], capsys)
    assert code == 0
    assert json.loads(out)["dim"] == 4


def test_stokes_table_and_tensor(bell_file, tmp_path, capsys):
    tensor = tmp_path / "t.json"
    code, out, _ = run(["stokes", "--in", bell_file, "-o", tensor], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert lines[4].split()[-1] == "-1.0000000000"
    np.testing.assert_allclose(formats.parse_tensor(tensor.read_text()), np.diag([1, 1, 1, -1]), atol=1e-15)


def test_measures_on_state_and_tensor(bell_file, tmp_path, capsys):
    code, out, _ = run(["measures", "--in", bell_file], capsys)
    assert code == 0
    rows = dict(line.rsplit(" ", 1) for line in out.splitlines()[:-1])
    assert float(rows["P12".ljust(15)]) == pytest.approx(1)
    assert "is_max_entangled=true" in out
    tensor = tmp_path / "t.json"
    run(["stokes", "--in", bell_file, "-o", tensor], capsys)
    code, out2, _ = run(["measures", "--in", tensor], capsys)
    assert code == 0 and out2 == out


def test_tomo_round_trip(bell_file, tmp_path, capsys):
    records = tmp_path / "records.csv"
    tensor = tmp_path / "t.json"
    assert run(["tomo", "simulate", "--in", bell_file, "-o", records], capsys)[0] == 0
    assert records.read_text().startswith("setting_a,setting_b,probability\n")
    code, out, _ = run(["tomo", "invert", "--in", records, "-o", tensor], capsys)
    assert code == 0
    assert "condition_estimate 16" in out and "physical true" in out
    np.testing.assert_allclose(formats.parse_tensor(tensor.read_text()), np.diag([1, 1, 1, -1]), atol=1e-12)


def test_tomo_poisson(bell_file, tmp_path, capsys):
    records = tmp_path / "records.csv"
    argv = ["tomo", "simulate", "--in", bell_file, "--noise", "poisson", "--pairs", "1e6", "--seed", "3", "-o", records]
    assert run(argv, capsys)[0] == 0
    lines = records.read_text().splitlines()
    assert lines[0] == "setting_a,setting_b,counts"
    assert "R,R,0" in lines
    code, out, _ = run(["tomo", "invert", "--in", records], capsys)
    assert code == 0 and "flux_estimate" in out


def test_tomo_poisson_needs_pairs(bell_file, tmp_path, capsys):
    code, _, err = run(["tomo", "simulate", "--in", bell_file, "--noise", "poisson"], capsys)
    assert code == 2 and error_of(err) == "usage"


@pytest.mark.parametrize(
    "family, extra, rows",
    [
        ("vertices", [], 5),
        ("werner", ["--steps", "11"], 11),
        ("segment", ["--kind", "DE", "--steps", "7"], 7),
        ("segment", ["--kind", "all", "--steps", "5"], 15),
        ("cloud", ["--n", "20", "--kind", "haar-pure", "--seed", "2"], 20),
    ],
)
def test_region_families(family, extra, rows, tmp_path, capsys):
    data, svg = tmp_path / "data.csv", tmp_path / "out.svg"
    code, _, _ = run(["region", family, *extra, "-o", data, "--svg", svg], capsys)
    assert code == 0
    lines = data.read_text().splitlines()
    assert lines[0] == "x,y,purity,tag,param"
    assert len(lines) == rows + 1
    assert svg.read_text().startswith("<?xml")


def test_region_werner_from_state_file(tmp_path, capsys):
    path = tmp_path / "hh.json"
    run(["state", "make", "--kind", "product", "--jones1", "1,0", "--jones2", "1,0", "-o", path], capsys)
    code, out, _ = run(["region", "werner", "--in", path, "--steps", "3"], capsys)
    assert code == 0
    first = out.splitlines()[1].split(",")
    assert (float(first[0]), float(first[1])) == pytest.approx((0, 1), abs=1e-12)


@pytest.mark.parametrize(
    "argv, category, code",
    [
        (["state", "make", "--kind", "werner"], "usage", 2),
        (["state", "make", "--kind", "bell", "--bell", "ghz"], "usage", 2),
        (["state", "make", "--kind", "werner", "--lambda", "2"], "range", 1),
        (["state", "make", "--kind", "product", "--jones1", "0,0", "--jones2", "1,0"], "degenerate-state", 1),
        (["state", "make", "--kind", "product", "--jones1", "abc", "--jones2", "1,0"], "parse", 1),
        (["state", "make", "--kind", "random", "--rank", "7"], "spec", 1),
        (["stokes", "--in", "/nonexistent/state.json"], "io", 1),
        (["region", "segment", "--kind", "XY"], "spec", 1),
        (["region", "cloud", "--n", "0"], "spec", 1),
        (["frobnicate"], "usage", 2),
    ],
)
def test_error_categories(argv, category, code, capsys):
    rc, _, err = run(argv, capsys)
    assert rc == code
    assert error_of(err) == category


def test_validation_flags(fixtures, tmp_path, capsys):
    path = fixtures / "trace_two.json"
    rc, _, err = run(["stokes", "--in", path], capsys)
    assert rc == 1 and error_of(err) == "density"
    assert "trace_deviation" in json.loads(err)["message"]
    assert run(["stokes", "--in", path, "--normalize"], capsys)[0] == 0
    rc, out, _ = run(["stokes", "--in", path, "--no-validate"], capsys)
    assert rc == 0 and out.splitlines()[1].split()[1] == "+2.0000000000"
    # measures need S00 = 1 even when validation is skipped
    rc, _, err = run(["measures", "--in", path, "--no-validate"], capsys)
    assert rc == 1 and error_of(err) == "normalization"

    negative = tmp_path / "negative.json"
    negative.write_text(formats.serialize_state(np.diag([0.6, 0.6, -0.1, -0.1])))
    rc, _, err = run(["measures", "--in", negative], capsys)
    assert rc == 1 and "min_eigenvalue" in json.loads(err)["message"]
    rc, out, _ = run(["measures", "--in", negative, "--no-validate"], capsys)
    assert rc == 0 and "purity" in out


def test_parse_error_on_bad_records(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("setting_a,setting_b,counts\nH,X,1\n")
    rc, _, err = run(["tomo", "invert", "--in", bad], capsys)
    assert rc == 1 and error_of(err) == "parse"


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "twostokes", "region", "vertices"], capture_output=True, text=True, check=True
    )
    assert out.stdout.splitlines()[0] == "x,y,purity,tag,param"
