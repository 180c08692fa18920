import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cam16.cli import DEFAULTS, EXIT_ALL_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE, build_parser, job_config

from oracle.make_goldens import CONDITIONS, run_cli

DATA = Path(__file__).parent / "data"
FIXTURE = (DATA / "fixture_xyz.csv").read_text()
GOLDEN_FWD = (DATA / "golden_forward.csv").read_text()
GOLDEN_INV = (DATA / "golden_inverse.csv").read_text()


def test_forward_matches_golden_bytes():
    code, out = run_cli(["forward", *CONDITIONS], FIXTURE)
    assert code == EXIT_OK
    assert out == GOLDEN_FWD


def test_inverse_matches_golden_bytes():
    code, out = run_cli(["inverse", *CONDITIONS, "--select", "J,C,h"], GOLDEN_FWD)
    assert code == EXIT_OK
    assert out == GOLDEN_INV


def test_goldens_via_files_and_jobs(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text(FIXTURE)
    for jobs in ("1", "3"):
        dst = tmp_path / f"out{jobs}.csv"
        code, _ = run_cli(["forward", *CONDITIONS, "--input", str(src), "--output", str(dst), "--jobs", jobs])
        assert code == EXIT_OK
        assert dst.read_text() == GOLDEN_FWD


def test_failed_row_keeps_position_and_is_logged(caplog):
    code, out = run_cli(["forward", *CONDITIONS], "X,Y,Z\n10,10,10\n0.5,0.2,80\n20,20,20\n")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 4
    assert lines[2] == ",,,,,,,"
    assert any(r.getMessage().startswith("row 2:") for r in caplog.records)


def test_unrepresentable_inverse_row_reported():
    code, out = run_cli(["inverse", *CONDITIONS], "J,C,h\n50,20,120\n10000,0,0\n")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[2] == ["", "", ""]
    assert all(v for v in rows[1])


def test_jsonl_round_trip():
    code, fwd = run_cli(["forward", *CONDITIONS, "--format", "jsonl"],
                        '{"X": 19.01, "Y": 20.0, "Z": 21.78}\n{"X": 0.5, "Y": 0.2, "Z": 80}\nnot json\n')
    assert code == EXIT_OK
    recs = [json.loads(line) for line in fwd.splitlines()]
    assert recs[0]["J"] == pytest.approx(41.73120790512664, rel=1e-15)
    assert recs[0]["H_c"] == "24G76B"
    assert recs[1]["row"] == 2 and "error" in recs[1]
    assert recs[2]["row"] == 3 and recs[2]["error"].startswith("invalid JSON")

    code, inv = run_cli(["inverse", *CONDITIONS, "--format", "jsonl", "--select", "Q,M,H"], fwd.splitlines()[0] + "\n")
    assert code == EXIT_OK
    back = json.loads(inv)
    assert [back[k] for k in "XYZ"] == pytest.approx([19.01, 20.0, 21.78], rel=1e-12)


@pytest.mark.parametrize("select", ["J,C,h", "J,M,h", "J,s,H", "Q,C,h", "Q,M,H", "Q,s,h"])
def test_forward_inverse_pipe(select):
    code, fwd = run_cli(["forward", *CONDITIONS], FIXTURE)
    code, inv = run_cli(["inverse", *CONDITIONS, "--select", select], fwd)
    assert code == EXIT_OK
    src = list(csv.DictReader(io.StringIO(FIXTURE)))
    for a, b in zip(src, csv.DictReader(io.StringIO(inv))):
        if b["X"] == "":
            continue
        for k in "XYZ":
            assert float(b[k]) == pytest.approx(float(a[k]), rel=1e-9, abs=1e-12)


def test_empty_input():
    code, out = run_cli(["forward"], "")
    assert (code, out) == (EXIT_OK, "J,C,h,Q,M,s,H,H_c\n")
    code, out = run_cli(["forward"], "X,Y,Z\n")
    assert (code, out) == (EXIT_OK, "J,C,h,Q,M,s,H,H_c\n")


def test_all_rows_failed():
    code, _ = run_cli(["forward"], "X,Y,Z\n0.5,0.2,80\nfoo,1,2\n")
    assert code == EXIT_ALL_FAILED


@pytest.mark.parametrize("argv", [
    ["forward", "--white", "1,2"],
    ["forward", "--surround", "bright"],
    ["forward", "--la", "-3"],
    ["forward", "--jobs", "0"],
    ["inverse", "--select", "J,h,C"],
    ["forward", "--format", "xml"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    try:
        code, _ = run_cli(argv, "X,Y,Z\n1,1,1\n")
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_missing_column_is_usage_error():
    code, _ = run_cli(["forward"], "A,B,C\n1,2,3\n")
    assert code == EXIT_USAGE


def test_io_errors(tmp_path):
    code, _ = run_cli(["forward", "--input", str(tmp_path / "nope.csv")])
    assert code == EXIT_IO
    src = tmp_path / "in.csv"
    src.write_text(FIXTURE)
    code, _ = run_cli(["forward", "--input", str(src), "--output", str(tmp_path / "no" / "dir.csv")])
    assert code == EXIT_IO
    src.write_bytes(b"X,Y,Z\n\xff\xfe,1,1\n")
    code, _ = run_cli(["forward", "--input", str(src)])
    assert code == EXIT_IO


def test_config_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"la": 64.0, "surround": "dim", "yb": 25}))
    args = build_parser().parse_args(["forward", "--config", str(cfg), "--la", "100"])
    job = job_config("forward", args)
    assert job.vc.l_a == 100.0  # flag beats file
    assert job.vc.surround.c == 0.59  # file beats default
    assert job.vc.y_b == 25.0
    assert tuple(job.vc.white) == tuple(float(v) for v in DEFAULTS["white"].split(","))


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"lux": 3}')
    code, _ = run_cli(["forward", "--config", str(cfg)], "")
    assert code == EXIT_USAGE
    cfg.write_text("[1, 2]")
    code, _ = run_cli(["forward", "--config", str(cfg)], "")
    assert code == EXIT_USAGE


def test_interpolated_surround_and_discount():
    code, out = run_cli(["forward", "--surround", "c=0.6", "--discount"], "X,Y,Z\n19.01,20,21.78\n")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 2


def test_output_is_deterministic():
    runs = {run_cli(["forward", *CONDITIONS], FIXTURE)[1] for _ in range(3)}
    assert len(runs) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cam16", "forward", *CONDITIONS],
        input=FIXTURE, capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_OK
    assert proc.stdout == GOLDEN_FWD
    assert "row 9:" in proc.stderr
