import json
import math

import pytest

import wlift as w
from wlift import serialize
from wlift.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main


def write_measure(tmp_path, name, mu):
    f = tmp_path / name
    f.write_text(json.dumps(serialize.measure_to_json(mu)))
    return str(f)


@pytest.fixture
def line_measures(tmp_path):
    sp = w.euclidean(1)
    mu = w.make_measure(sp, [[0.0], [2.0]], [0.5, 0.5])
    nu = w.make_measure(sp, [[1.0], [3.0]], [0.5, 0.5])
    return write_measure(tmp_path, "mu.json", mu), write_measure(tmp_path, "nu.json", nu)


def run_json(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    data = json.loads(out.read_text()) if out.exists() else None
    return code, data


def test_ot(line_measures, tmp_path):
    fmu, fnu = line_measures
    code, data = run_json(["ot", "--mu", fmu, "--nu", fnu, "--p", "2"], tmp_path)
    assert code == EXIT_OK
    assert data["cost"] == pytest.approx(1.0)
    assert data["wasserstein"] == pytest.approx(1.0)


def test_ot_bad_file(tmp_path, capsys):
    code = main(["ot", "--mu", str(tmp_path / "missing.json"), "--nu", str(tmp_path / "missing.json")])
    assert code == EXIT_INPUT
    assert "input error" in capsys.readouterr().err


def test_compat_feasible_and_infeasible(tmp_path, capsys):
    base = ["compat", "--family", "circle_splitting", "--param", "j=0", "--p", "2"]
    code, data = run_json(base + ["--times", "0,0.25,0.5"], tmp_path, "a.json")
    assert code == EXIT_OK
    assert data["feasible"] is True

    code, data = run_json(base + ["--times", "0,0.25,0.5,0.75"], tmp_path, "b.json")
    assert code == EXIT_NEGATIVE
    assert data["feasible"] is False
    assert data["max_pair_gap"] > 1e-6


def test_lift_csv(tmp_path):
    out = tmp_path / "diag.csv"
    code = main([
        "lift", "--family", "two_tent", "--levels", "1..3",
        "--construction", "B", "--out", str(out),
    ])
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("level,energy")
    assert len(lines) == 4


def test_norms_builtin_geodesic(tmp_path):
    code, data = run_json(
        ["norms", "--norm", "besov", "--builtin", "geodesic", "--alpha", "0.75", "--p", "2"],
        tmp_path,
    )
    assert code == EXIT_OK
    assert data["value"] == pytest.approx(2.0 + math.sqrt(2.0))


def test_norms_rejects_bad_exponents(capsys):
    code = main(["norms", "--norm", "besov", "--alpha", "0.4", "--p", "2"])
    assert code == EXIT_INPUT


def test_norms_curve_family(tmp_path):
    code, data = run_json(
        ["norms", "--norm", "besov", "--family", "circle_splitting", "--param", "j=0",
         "--alpha", "0.75", "--p", "2", "-M", "8"],
        tmp_path,
    )
    assert code == EXIT_OK
    want = w.reference_value(
        w.circle_splitting(0), "curve_besov_power", alpha=0.75, p=2.0
    )
    assert data["value"] == pytest.approx(want, rel=1e-9)


def test_bb(tmp_path):
    code, data = run_json(["bb", "--seed", "3", "--atoms", "4", "--alpha", "0.75", "--p", "2"], tmp_path)
    assert code == EXIT_OK
    assert data["identity_error"] <= 1e-9
    assert abs(data["excess_error"]) <= 1e-9


def test_example(tmp_path):
    code, data = run_json(["example", "two_tent", "--t", "0.5"], tmp_path)
    assert code == EXIT_OK
    mu = serialize.measure_from_json(data["measure"])
    assert mu.size == 2
    assert mu.atoms[0, 0] == pytest.approx(0.5)
    assert mu.atoms[1, 0] == pytest.approx(3.0)


def test_unknown_family(capsys):
    code = main(["example", "nope"])
    assert code == EXIT_INPUT


def test_unknown_subcommand():
    assert main(["frobnicate"]) == EXIT_INPUT
