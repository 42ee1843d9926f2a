import csv
import io
import json
import math

import numpy as np
import pytest

from dwf_extrema.census import census
from dwf_extrema.cli import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from dwf_extrema.mub import default_mub, mub_prime, mub_to_json
from dwf_extrema.reports import census_to_csv, census_to_dict, dwf_to_csv, load_state, state_from_json, state_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- reports ------------------------------------------------------------------


def test_census_dict_schema():
    doc = census_to_dict(census(default_mub(3)), meta={"partition": None})
    assert doc["dim"] == 3 and doc["partition"] is None
    assert [c["count"] for c in doc["classes"]] == [72, 9]
    assert doc["classes"][1]["spectrum"] == [-1.0, 1.0, 1.0]
    assert json.loads(json.dumps(doc)) == doc


def test_census_csv_rounding():
    text = census_to_csv(census(default_mub(2)), digits=3)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["count", "lambda_0", "lambda_1", "representative"]
    assert rows[1] == ["8", "-0.366", "1.366", "0 0 0"]


def test_dwf_csv_layout():
    w = np.arange(9) / 36
    rows = list(csv.reader(io.StringIO(dwf_to_csv(w, 3, digits=4))))
    assert rows[1] == ["0.0833", "0.1111", "0.1389"]


def test_state_round_trip(tmp_path):
    rho = np.array([[0.75, 0.25j], [-0.25j, 0.25]])
    path = tmp_path / "rho.json"
    path.write_text(json.dumps(state_to_json(rho)))
    np.testing.assert_array_equal(load_state(path), rho)
    vec = state_from_json({"vector": [[1, 0], [0, 1]]})
    np.testing.assert_allclose(vec, [[0.5, -0.5j], [0.5j, 0.5]], atol=1e-15)
    for bad in ({}, {"vector": [[0, 0]]}, {"vector": [1, 2]}, {"density": [[1, 0]]}):
        with pytest.raises(ValueError):
            state_from_json(bad)


# --- commands -----------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9])
def test_geometry(capsys, d):
    code, out, _ = run(capsys, "geometry", "--dim", str(d))
    doc = json.loads(out)
    assert code == EXIT_OK and doc["all_pass"]
    assert doc["points"] == d * d and doc["lines"] == d * (d + 1)


def test_geometry_lines_and_field_flags(capsys):
    code, out, _ = run(capsys, "geometry", "--p", "2", "--n", "3", "--modulus", "1,0,1,1", "--lines")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["modulus"] == [1, 0, 1, 1]
    assert len(doc["line_points"]) == 9 and all(len(s) == 8 for s in doc["line_points"])


@pytest.mark.parametrize(
    "argv,msg",
    [
        (["geometry", "--dim", "6"], "no finite field of order 6"),
        (["geometry", "--dim", "4", "--modulus", "1,0,1"], "reducible"),
        (["geometry"], "--dim"),
        (["mub", "--dim", "9"], "9"),
        (["mub", "--dim", "3", "--mub", "pauli-table"], "no Pauli table"),
        (["mub", "--dim", "8", "--mub", "pauli-table", "--partition", "1"], "d=4"),
        (["dwf", "--dim", "3", "--state", "basis:7,0"], "bad basis state"),
        (["dwf", "--dim", "3", "--state", "/nonexistent.json"], "cannot read state"),
    ],
)
def test_usage_errors(capsys, argv, msg):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert msg in err


def test_argparse_rejections(capsys):
    for argv in (["census", "--dim", "3", "--workers", "0"], ["qrac", "--dim", "2", "--simulate", "0"], ["nope"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_heavy_refusal(capsys):
    for cmd in ("census", "extrema", "qrac"):
        code, out, err = run(capsys, cmd, "--dim", "8")
        assert code == EXIT_USAGE and not out
        assert "134,217,728" in err and "--heavy" in err


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8])
def test_mub_command(capsys, d, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "mub", "--dim", str(d), "--out", str(path))
    doc = json.loads(out)
    assert code == EXIT_OK and doc["pass"]
    assert json.loads(path.read_text())["dimension"] == d


def test_mub_file_round_trip_through_census(capsys, tmp_path):
    path = tmp_path / "m4.json"
    run(capsys, "mub", "--dim", "4", "--out", str(path))
    _, a, _ = run(capsys, "census", "--dim", "4", "--format", "csv")
    _, b, _ = run(capsys, "census", "--dim", "4", "--format", "csv", "--mub", str(path))
    assert a == b


def test_mub_file_validation(capsys, tmp_path):
    doc = mub_to_json(mub_prime(3))
    doc["bases"][1] = doc["bases"][0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "census", "--dim", "3", "--mub", str(path))
    assert code == EXIT_USAGE and "deviation" in err
    path.write_text(json.dumps(mub_to_json(mub_prime(3))))
    code, _, err = run(capsys, "census", "--dim", "5", "--mub", str(path))
    assert code == EXIT_USAGE and "dimension 3" in err


def test_mub_tolerance_failure(capsys):
    # a negative tolerance cannot be met, so this exercises the failure exit
    code, out, _ = run(capsys, "mub", "--dim", "7", "--tol", "-1")
    assert code == EXIT_VALIDATION and json.loads(out)["pass"] is False


@pytest.mark.parametrize("partition", range(6))
def test_partitions_give_d4_census(capsys, partition):
    code, out, _ = run(capsys, "census", "--dim", "4", "--mub", "pauli-table", "--partition", str(partition))
    doc = json.loads(out)
    assert code == EXIT_OK and doc["partition"] == partition
    assert sum(c["count"] for c in doc["classes"]) == 1024


def test_census_json(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "census", "--dim", "3", "--out", str(path))
    assert code == EXIT_OK and not out
    doc = json.loads(path.read_text())
    assert [c["count"] for c in doc["classes"]] == [72, 9]
    assert doc["p_q"] == pytest.approx(7 / 18 + math.sqrt(5) / 9, abs=1e-12)
    assert doc["mub_source"] == "ivanovic" and doc["modulus"] == [0, 1]
    assert "version" in doc and "net" in doc


def test_census_csv_d4(capsys):
    code, out, _ = run(capsys, "census", "--dim", "4", "--format", "csv", "--round", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 4
    assert sorted(int(r[0]) for r in rows[1:]) == [320, 320, 384]


def test_extrema(capsys):
    code, out, _ = run(capsys, "extrema", "--dim", "4", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines() == ["d,W_max,W_min", "4,0.46651,-0.22420"]
    code, out, _ = run(capsys, "extrema", "--dim", "3")
    doc = json.loads(out)
    assert doc["W_min"] == pytest.approx(-1 / 3, abs=1e-9)
    assert doc["W_max"] == pytest.approx((1 + math.sqrt(5)) / 6, abs=1e-9)


def test_qrac(capsys):
    code, out, _ = run(capsys, "qrac", "--dim", "2", "--simulate", "100000", "--seed", "7")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["p_q_exact"] == pytest.approx((3 + math.sqrt(3)) / 6, abs=1e-12)
    assert abs(doc["deviation_in_sigma"]) <= 4 and doc["trials"] == 100000
    code, out2, _ = run(capsys, "qrac", "--dim", "2", "--simulate", "100000", "--seed", "7")
    assert json.loads(out2)["p_q_empirical"] == doc["p_q_empirical"]


def test_qrac_without_simulation(capsys):
    code, out, _ = run(capsys, "qrac", "--dim", "3")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["p_q_empirical"] is None


def read_grid(out):
    return np.array([[float(x) for x in row] for row in csv.reader(io.StringIO(out))])


def test_dwf_maximally_mixed(capsys):
    code, out, _ = run(capsys, "dwf", "--dim", "3", "--state", "maximally-mixed")
    assert code == EXIT_OK
    np.testing.assert_allclose(read_grid(out), 1 / 9, atol=1e-12)


def test_dwf_basis_state(capsys):
    code, out, _ = run(capsys, "dwf", "--dim", "2", "--state", "basis:0,0")
    grid = read_grid(out)
    assert code == EXIT_OK and grid.shape == (2, 2)
    # vertical lines are x = const, i.e. rows of the grid
    np.testing.assert_allclose(grid.sum(axis=1), [1, 0], atol=1e-12)


def test_dwf_state_file_and_random_net(capsys, tmp_path):
    rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(state_to_json(rho)))
    code, out, _ = run(capsys, "dwf", "--dim", "3", "--state", str(path), "--net", "random", "--seed", "4")
    grid = read_grid(out)
    assert code == EXIT_OK and grid.sum() == pytest.approx(1, abs=1e-10)
    path.write_text(json.dumps(state_to_json(np.eye(2) / 2)))
    code, _, err = run(capsys, "dwf", "--dim", "3", "--state", str(path))
    assert code == EXIT_USAGE and "dimension 2" in err
    path.write_text(json.dumps(state_to_json(np.eye(3))))
    code, _, err = run(capsys, "dwf", "--dim", "3", "--state", str(path))
    assert code == EXIT_USAGE and "trace" in err


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.strip() == "0.1.0"
