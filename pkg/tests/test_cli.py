"""Command-line interface: report schemas, determinism, exit codes."""

import json

import numpy as np
import pytest

import cylwidth.cli as cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tnorm_json_schema(capsys):
    code, out, err = run(["tnorm", "--d", "16", "--trials", "5", "--seed", "1"], capsys)
    assert code == 0
    assert err == ""
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["command"] == "tnorm"
    assert doc["config"]["seed"] == 1
    assert doc["config"]["d"] == [16]
    assert len(doc["rows"]) == 1
    assert set(doc["rows"][0]) == set(cli.COLUMNS["tnorm"])


def test_csv_header_matches_documented_columns(capsys):
    code, out, _ = run(
        ["tnorm", "--d", "8", "--trials", "3", "--seed", "2", "--format", "csv"],
        capsys,
    )
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.COLUMNS["tnorm"])


def test_help_documents_csv_columns(capsys):
    for command in cli.COLUMNS:
        with pytest.raises(SystemExit) as exc:
            cli.main([command, "--help"])
        assert exc.value.code == 0
        help_text = capsys.readouterr().out
        assert ", ".join(cli.COLUMNS[command]) in help_text


def test_reruns_are_byte_identical(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    argv = ["selberg-fuzz", "--trials", "12", "--seed", "9"]
    assert cli.main(argv + ["--out", str(first)]) == 0
    assert cli.main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_out_file_matches_stdout(tmp_path, capsys):
    argv = ["rip-fuzz", "--k", "1", "--trials", "3", "--seed", "4", "--format", "csv"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    path = tmp_path / "r.csv"
    assert cli.main(argv + ["--out", str(path)]) == 0
    capsys.readouterr()
    assert path.read_text() == out


def test_validation_exit_codes(capsys):
    code, _, err = run(
        ["scaling", "--d", "16", "--k", "8", "--trials", "2", "--seed", "1"], capsys
    )
    assert code == 2
    assert "k <= d/4" in err

    code, _, err = run(
        ["realize", "--group", "/no/such/file.json", "--base-point", "1,0", "--seed", "1"],
        capsys,
    )
    assert code == 2

    code, _, err = run(["tnorm", "--d", "1", "--trials", "2", "--seed", "1"], capsys)
    assert code == 2

    code, _, err = run(
        ["lowerbound", "--d", "4", "--k", "9", "--restarts", "1", "--steps", "5", "--seed", "1"],
        capsys,
    )
    assert code == 2


def test_missing_required_seed_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tnorm", "--d", "8", "--trials", "2"])
    assert exc.value.code == 2


def test_guarantee_missed_exit_code(monkeypatch, capsys):
    # force the floor out of reach; the report is still written but the
    # process signals the miss
    monkeypatch.setattr(cli, "LOWERBOUND_FLOOR", 1e6)
    code, out, _ = run(
        ["lowerbound", "--d", "4", "--k", "1", "--restarts", "1", "--steps", "20", "--seed", "3"],
        capsys,
    )
    assert code == 3
    doc = json.loads(out)
    assert doc["rows"][0]["ok"] is False


def test_lowerbound_small_grid(capsys):
    code, out, _ = run(
        ["lowerbound", "--d", "6", "--k", "1", "--restarts", "1", "--steps", "40", "--seed", "2"],
        capsys,
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["ok"] is True
    assert row["normalized"] == pytest.approx(
        row["min_width"] * np.sqrt(np.log(12.0))
    )


def test_realize_round_trip(tmp_path, capsys):
    gfile = tmp_path / "group.json"
    gfile.write_text(json.dumps({"d": 3, "kind": "signed_permutations"}))
    code, out, _ = run(
        [
            "realize",
            "--group",
            str(gfile),
            "--base-point",
            "0.9,0.4,0.1",
            "--k",
            "1",
            "--draws",
            "6",
            "--seed",
            "2",
        ],
        capsys,
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["orbit_size"] == 48
    assert row["ok"] is True
    assert row["ratio"] <= 2.0 + 1e-6
    assert row["s_2k"] >= 1.0 / np.sqrt(2.0) - 1e-9


def test_realize_rejects_bad_base_point(tmp_path, capsys):
    gfile = tmp_path / "group.json"
    gfile.write_text(json.dumps({"d": 3, "kind": "signed_permutations"}))
    for bad in ("1,0", "0,0,0", "a,b,c"):
        code, _, err = run(
            ["realize", "--group", str(gfile), "--base-point", bad, "--seed", "1"],
            capsys,
        )
        assert code == 2


def test_scaling_row_content(capsys):
    code, out, _ = run(
        ["scaling", "--d", "64", "--k", "1", "--trials", "6", "--restarts", "6", "--seed", "8"],
        capsys,
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["d"] == 64
    assert row["k"] == 1
    assert row["j_count"] == 5
    assert row["normalized_witness"] == pytest.approx(
        row["mean_sup2_witness"] * np.log(64.0)
    )
    assert 0.0 < row["mean_sup2_witness"] <= 1.0 + 1e-9
    assert 0.0 < row["mean_sup2_random"] <= 1.0 + 1e-9


def test_selberg_fuzz_reports_all_families(capsys):
    code, out, _ = run(["selberg-fuzz", "--trials", "9", "--seed", "6"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 9
    assert {r["family"] for r in rows} == {
        "complex_gaussian",
        "near_parallel",
        "rank_one",
    }
    assert all(r["holds"] for r in rows)


def test_rip_fuzz_row_shape(capsys):
    code, out, _ = run(["rip-fuzz", "--trials", "4", "--seed", "3"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 12  # default grid k in {1, 2, 3}
    assert {r["k"] for r in rows} == {1, 2, 3}
    assert all(r["ok"] for r in rows)
    assert all(r["ratio"] >= 0.1 for r in rows)
