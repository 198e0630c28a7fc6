import subprocess
import sys

import pytest

from permcode.cli import main
from permcode.code_store import read_code


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_writes_code_and_events(tmp_path, capsys):
    out_file = tmp_path / "code.txt"
    events = tmp_path / "events.csv"
    status, out, _ = run_cli(
        capsys, "run", "--n", "6", "--d", "6", "--budget", "100000", "--seed", "1",
        "--output", str(out_file), "--events", str(events), "--no-timing",
    )
    assert status == 0
    header, row = out.splitlines()
    assert "wall_ms" not in header
    assert row.startswith("6,6,EA2,f3,1,6,")
    code = read_code(out_file)
    assert len(code) == 6
    assert events.read_text().splitlines()[:2] == ["evaluations,size,kind", "0,1,seed"]


def test_run_output_is_byte_identical(capsys):
    argv = ["run", "--n", "6", "--d", "5", "--budget", "20000", "--method", "rs", "--no-timing"]
    first = run_cli(capsys, *argv)[1]
    assert run_cli(capsys, *argv)[1] == first


def test_run_rejects_bad_config(capsys):
    status, _, err = run_cli(capsys, "run", "--n", "6", "--d", "4", "--tournament", "2")
    assert status == 2
    assert "tournament" in err


def test_sweep_outputs(tmp_path, capsys):
    out_csv = tmp_path / "runs.csv"
    summary = tmp_path / "summary.csv"
    status, _, _ = run_cli(
        capsys, "sweep", "--instances", "5,4;6,6", "--variants", "EA1,RS2", "--fitness", "f3",
        "--repetitions", "2", "--budget", "10000", "--output", str(out_csv),
        "--summary", str(summary), "--codes-dir", str(tmp_path / "codes"), "--no-timing",
    )
    assert status == 0
    assert len(out_csv.read_text().splitlines()) == 1 + 2 * 2 * 2
    assert len(summary.read_text().splitlines()) == 1 + 4
    assert len(list((tmp_path / "codes").iterdir())) == 8


def test_bounds(capsys):
    status, out, _ = run_cli(capsys, "bounds", "--n", "6", "--d", "4")
    assert status == 0
    assert out.splitlines()[1].startswith("6,4,")
    status, out, _ = run_cli(capsys, "bounds", "--table")
    assert len(out.splitlines()) == 16
    assert run_cli(capsys, "bounds")[0] == 2


def test_oracle_and_verify(tmp_path, capsys):
    path = tmp_path / "pa43.txt"
    status, out, _ = run_cli(capsys, "oracle", "--n", "4", "--d", "3", "--output", str(path))
    assert status == 0
    assert "size 12" in out
    status, out, _ = run_cli(capsys, "verify", str(path))
    assert status == 0
    assert out.startswith("OK")
    status, out, _ = run_cli(capsys, "oracle", "--n", "5", "--d", "4", "--greedy", "--seed", "3")
    assert status == 0


def test_oracle_refuses_large(capsys):
    status, _, err = run_cli(capsys, "oracle", "--n", "7", "--d", "5")
    assert status == 2
    assert "refused" in err


def test_verify_flags_bad_files(tmp_path, capsys):
    close = tmp_path / "close.txt"
    close.write_text("4 3 2\n1 2 3 4\n2 1 3 4\n")
    status, _, err = run_cli(capsys, "verify", str(close))
    assert status == 1
    assert "INVALID" in err
    broken = tmp_path / "broken.txt"
    broken.write_text("4 3 2\n1 2 3 4\n")
    assert run_cli(capsys, "verify", str(broken))[0] == 1
    assert run_cli(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 1


@pytest.mark.slow
def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "permcode.cli", "bounds", "--n", "7", "--d", "7"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert out.splitlines()[1].startswith("7,7,")
