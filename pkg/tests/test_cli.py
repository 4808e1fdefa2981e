"""Command-line interface tests, run in-process via cli.main."""

import json
import os
import subprocess
import sys

import pytest

from rhorace import cli
from rhorace import rho as rho_mod


def run_cli(*argv):
    """Invoke main() in-process, folding SystemExit into a return code."""
    try:
        return cli.main(list(argv))
    except SystemExit as exc:
        return exc.code


def test_factor_semiprime(capsys):
    assert run_cli("factor", "8051", "--workers", "1") == 0
    assert capsys.readouterr().out == "83^1\n97^1\n"


def test_factor_repeated_prime(capsys):
    assert run_cli("factor", "144", "--workers", "1") == 0
    assert capsys.readouterr().out == "2^4\n3^2\n"


def test_factor_one_prints_nothing(capsys):
    assert run_cli("factor", "1") == 0
    assert capsys.readouterr().out == ""


def test_factor_json_schema(capsys):
    assert run_cli("factor", "8051", "--workers", "1", "--json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"input", "factors", "wall_time_s", "workers"}
    assert payload["input"] == "8051"
    assert payload["factors"] == [{"p": "83", "k": 1}, {"p": "97", "k": 1}]
    assert payload["workers"] == 1
    assert payload["wall_time_s"] >= 0


def test_factor_json_round_trip(capsys):
    for n in ("97", "1", "360", "1000003", "100000980001501"):
        assert run_cli("factor", n, "--workers", "1", "--json") == 0
        payload = json.loads(capsys.readouterr().out)
        prod = 1
        for entry in payload["factors"]:
            prod *= int(entry["p"]) ** entry["k"]
        assert prod == int(n)


@pytest.mark.parametrize("text", ["abc", "-5", "0", "07", "1.5", ""])
def test_factor_rejects_bad_input(text, capsys):
    assert run_cli("factor", text) == 2
    assert "error" in capsys.readouterr().err


def test_factor_incomplete_exits_one(capsys):
    n = str(10000019 * 10000079)
    code = run_cli("factor", n, "--workers", "1", "--max-iters", "4", "--gcd-batch", "4")
    assert code == 1
    err = capsys.readouterr().err
    assert "gave up" in err


def test_factor_brent_detector(capsys):
    assert run_cli("factor", "8051", "--workers", "1", "--detector", "brent") == 0
    assert capsys.readouterr().out == "83^1\n97^1\n"


def test_gen_deterministic_and_sized(capsys):
    assert run_cli("gen", "--digits", "20", "--small", "6", "--seed", "5") == 0
    first = capsys.readouterr().out.strip()
    assert run_cli("gen", "--digits", "20", "--small", "6", "--seed", "5") == 0
    assert capsys.readouterr().out.strip() == first
    assert len(first) == 20


def test_gen_count(capsys):
    assert run_cli("gen", "--digits", "12", "--small", "4", "--count", "3") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert len(set(lines)) == 3
    assert all(len(line) == 12 for line in lines)


def test_gen_bad_params(capsys):
    assert run_cli("gen", "--digits", "3", "--small", "2") == 2


def test_bench_writes_outputs(tmp_path, capsys):
    out_dir = tmp_path / "bench"
    code = run_cli(
        "bench",
        "--classes", "12",
        "--per-class", "2",
        "--workers", "1,2",
        "--small-digits", "5",
        "--out", str(out_dir),
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert "speedup" in stdout
    records = (out_dir / "records.csv").read_text().strip().splitlines()
    assert records[0] == "digit_class,workers,input_index,wall_time_s,factor_count,verified"
    assert len(records) == 1 + 2 * 2
    summary = (out_dir / "summary.csv").read_text().strip().splitlines()
    assert summary[0] == "digit_class,workers,mean_time_s,speedup_vs_1"
    assert len(summary) == 1 + 2
    assert (out_dir / "plot_speedup.py").exists()


def test_bench_unwritable_out_exits_one(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    code = run_cli(
        "bench",
        "--classes", "12",
        "--per-class", "1",
        "--workers", "1",
        "--small-digits", "5",
        "--out", str(blocker),
    )
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_bench_rejects_zero_workers():
    assert run_cli("bench", "--workers", "0,1") == 2


def test_bench_rejects_garbage_classes():
    assert run_cli("bench", "--classes", "20,x") == 2


def test_no_subcommand_is_usage_error():
    assert run_cli() == 2


def test_selftest_passes(capsys):
    assert run_cli("selftest", "--limit", "2000") == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") == 7
    assert "0 failure(s)" in out


def test_selftest_report_is_deterministic(capsys):
    run_cli("selftest", "--limit", "500")
    first = capsys.readouterr().out
    run_cli("selftest", "--limit", "500")
    assert capsys.readouterr().out == first


def test_selftest_catches_sabotage(monkeypatch, capsys):
    # Break the gcd used by the attempt loop; the self-test must notice and
    # name a failing check rather than report success.
    monkeypatch.setattr(rho_mod, "gcd", lambda a, b: 1)
    assert run_cli("selftest", "--limit", "50") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_selftest_rejects_bad_limit(capsys):
    assert run_cli("selftest", "--limit", "0") == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rhorace", "factor", "8051", "--workers", "1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout == "83^1\n97^1\n"


def test_console_script_if_installed():
    from shutil import which

    exe = which("rhorace")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "factor", "91", "--workers", "1"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert proc.stdout == "7^1\n13^1\n"
