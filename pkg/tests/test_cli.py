import csv
import io
import json

import pytest

from majpop.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_instance(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


PEAK_INSTANCE = {"variant": "min_remaining", "row_sums": [4, 4, 3, 1, 1], "ceiling": [7, 6, 5, 4, 4]}
VALLEY_INSTANCE = {"variant": "min_combined", "row_sums": [4, 3, 3, 2, 1], "base": [8, 6, 5, 2, 2]}


def test_solve_golden(tmp_path, capsys):
    path = write_instance(tmp_path, "peak.json", PEAK_INSTANCE)
    code, out, err = run_cli(capsys, "solve", "--instance", path, "--tie-policy", "lowest-index")
    assert code == 0
    payload = json.loads(out)
    assert payload["canonical_objective"] == [3, 3, 3, 2, 2]
    assert payload["feasible"] is True
    assert err == ""


def test_solve_deterministic_output(tmp_path, capsys):
    path = write_instance(tmp_path, "peak.json", PEAK_INSTANCE)
    runs = set()
    for _ in range(3):
        code, out, _ = run_cli(
            capsys, "solve", "--instance", path, "--tie-policy", "random", "--seed", "42"
        )
        assert code == 0
        runs.add(out)
    assert len(runs) == 1


def test_solve_infeasible_exit_code(tmp_path, capsys):
    path = write_instance(
        tmp_path, "bad.json", {"variant": "min_remaining", "row_sums": [2, 2, 2, 2, 2, 2], "ceiling": [5, 5]}
    )
    code, out, _ = run_cli(capsys, "solve", "--instance", path)
    assert code == 1
    assert json.loads(out)["feasible"] is False


def test_feasible_exit_codes(tmp_path, capsys):
    good = write_instance(tmp_path, "good.json", PEAK_INSTANCE)
    code, out, _ = run_cli(capsys, "feasible", "--instance", good)
    assert code == 0 and json.loads(out) == {"feasible": True}
    bad = write_instance(
        tmp_path, "bad.json", {"variant": "min_remaining", "row_sums": [1], "ceiling": [0, 0]}
    )
    code, out, _ = run_cli(capsys, "feasible", "--instance", bad)
    assert code == 1 and json.loads(out) == {"feasible": False}


def test_malformed_instance_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out, err = run_cli(capsys, "solve", "--instance", str(path))
    assert code == 2 and out == "" and "malformed JSON" in err

    missing = write_instance(tmp_path, "missing.json", {"variant": "min_remaining"})
    code, _, err = run_cli(capsys, "solve", "--instance", missing)
    assert code == 2 and "row_sums" in err

    negative = write_instance(
        tmp_path, "neg.json", {"variant": "min_combined", "row_sums": [1], "base": [-1, 0]}
    )
    code, _, err = run_cli(capsys, "solve", "--instance", negative)
    assert code == 2 and "base[0]" in err

    unknown = write_instance(tmp_path, "weird.json", dict(PEAK_INSTANCE, extra=[1]))
    code, _, err = run_cli(capsys, "solve", "--instance", unknown)
    assert code == 2 and "extra" in err

    badvariant = write_instance(tmp_path, "var.json", {"variant": "maximize", "row_sums": [1]})
    code, _, err = run_cli(capsys, "solve", "--instance", badvariant)
    assert code == 2 and "variant" in err


def test_unknown_flag_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--no-such-flag"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_conjugate_command(capsys):
    code, out, _ = run_cli(capsys, "conjugate", "--vector", "5,4,2,1", "--dim", "7")
    assert code == 0 and json.loads(out) == [4, 3, 2, 2, 1, 0, 0]
    code, out, _ = run_cli(capsys, "conjugate", "--vector", "5,4,2,1")
    assert code == 0 and json.loads(out) == [4, 3, 2, 2, 1]
    code, _, err = run_cli(capsys, "conjugate", "--vector", "5,4", "--dim", "3")
    assert code == 2 and "lossy" in err


def test_lattice_commands(capsys):
    code, out, _ = run_cli(capsys, "lattice", "meet", "--x", "5,2,2,2", "--y", "4,3,3,1")
    assert code == 0 and json.loads(out) == [4, 3, 2, 2]
    code, out, _ = run_cli(capsys, "lattice", "join", "--x", "5,2,2,2", "--y", "4,3,3,1")
    assert code == 0 and json.loads(out) == [5, 3, 2, 1]
    code, out, _ = run_cli(
        capsys, "lattice", "covers", "--x", "6,6,6,4,4,4,2", "--y", "7,6,5,4,4,4,2"
    )
    assert code == 0 and json.loads(out) == {"covers": True}


def test_geth_command(capsys):
    code, out, _ = run_cli(capsys, "geth", "--ceiling", "7,6,5,4,4", "--threshold", "5,3,3,2,0")
    assert code == 0 and json.loads(out) == [5, 3, 3, 2, 0]
    code, _, err = run_cli(capsys, "geth", "--ceiling", "1,0", "--threshold", "3,1")
    assert code == 1 and "infeasible" in err


def test_construct_command(capsys):
    code, out, _ = run_cli(capsys, "construct", "--row-sums", "1", "--col-sums", "1,0,0")
    assert code == 0 and json.loads(out) == [[1, 0, 0]]
    code, _, err = run_cli(capsys, "construct", "--row-sums", "2,1,0", "--col-sums", "3,0")
    assert code == 1 and "prefix" in err


def test_enumerate_command(tmp_path, capsys):
    path = write_instance(tmp_path, "peak.json", PEAK_INSTANCE)
    code, out, _ = run_cli(capsys, "enumerate", "--instance", path)
    assert code == 0
    payload = json.loads(out)
    objectives = [tuple(rec["objective"]) for rec in payload["optima"]]
    assert (3, 3, 3, 2, 2) in objectives
    assert (2, 3, 2, 3, 3) in objectives
    assert payload["count"] == len(objectives)
    code, _, err = run_cli(capsys, "enumerate", "--instance", path, "--max-branches", "3")
    assert code == 2 and "budget" in err


def test_oracle_certify_command(tmp_path, capsys):
    path = write_instance(
        tmp_path,
        "gap.json",
        {"variant": "min_remaining", "row_sums": [4, 2], "ceiling": [8, 6, 6, 6, 4, 4, 4]},
    )
    code, out, _ = run_cli(
        capsys, "oracle", "certify", "--instance", path, "--absent", "6,6,6,4,4,4,2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert any(rec["claim"] == "claimed_absent_vector" for rec in payload["checks"])


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    path = write_instance(tmp_path, "peak.json", PEAK_INSTANCE)
    monkeypatch.setenv("MAJPOP_SEED", "77")
    code, out_env, _ = run_cli(capsys, "solve", "--instance", path, "--tie-policy", "random")
    monkeypatch.delenv("MAJPOP_SEED")
    code2, out_flag, _ = run_cli(
        capsys, "solve", "--instance", path, "--tie-policy", "random", "--seed", "77"
    )
    assert code == code2 == 0
    assert out_env == out_flag


def test_bench_record_count_and_format(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--rows", "4,8", "--cols", "6", "--repeats", "2", "--seed", "5"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4  # |rows| * |cols| * repeats
    assert set(rows[0]) == {"m", "n", "policy", "seed", "wall_time_ns", "feasible"}
    assert {r["m"] for r in rows} == {"4", "8"}

    code, out, _ = run_cli(
        capsys,
        "bench",
        "--rows",
        "4",
        "--cols",
        "6",
        "--repeats",
        "1",
        "--seed",
        "5",
        "--format",
        "json",
        "--variant",
        "min_combined",
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 1 and payload[0]["feasible"] is True


def test_bench_rejects_bad_ranges(capsys):
    code, _, err = run_cli(capsys, "bench", "--rows", "0", "--cols", "5")
    assert code == 2 and "positive" in err
