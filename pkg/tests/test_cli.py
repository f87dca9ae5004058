import json
import subprocess
import sys

import pytest

from shuffle_spectra import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_type_a_tsv_three(capsys):
    code, out, _ = run(capsys, "spectra", "type-a", "--n", "3")
    assert code == cli.EXIT_OK
    assert out.splitlines()[0] == "nu_111\tnu_21\tw0\tchi_3\tchi_21\tchi_111"
    assert out.splitlines()[1] == "6\t9\t1\t1\t0\t0"


def test_type_a_single_point(capsys):
    code, out, _ = run(capsys, "spectra", "type-a", "--n", "1", "--family", "columns")
    assert code == 0
    assert out.splitlines()[1:] == ["1\t1\t1"]


def test_type_a_markdown_uses_dots(capsys):
    code, out, _ = run(capsys, "spectra", "type-a", "--n", "5", "--format", "md")
    assert code == 0
    assert out.startswith("| ν_") and "·" in out
    assert len([l for l in out.splitlines() if l.startswith("|")]) == 2 + 18


def test_type_a_json_and_output_file(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "spectra", "type-a", "--n", "4", "--family", "two-blocks",
                       "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["schema"] == 1 and data["family"] == "two-blocks"


def test_full_and_fourier_outputs_identical(capsys):
    _, a, _ = run(capsys, "spectra", "type-a", "--n", "4", "--method", "full")
    _, b, _ = run(capsys, "spectra", "type-a", "--n", "4", "--method", "fourier")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["spectra", "type-a", "--n", "7"],
    ["spectra", "type-a", "--n", "0"],
    ["spectra", "type-a", "--n", "9", "--allow-large"],
    ["spectra", "type-a", "--n", "3", "--format", "csv"],
    ["spectra", "type-a", "--n", "3", "--jobs", "0"],
    ["spectra", "rank-one", "--type", "E7"],
    ["spectra", "rank-one", "--type", "Q2"],
    ["spectra", "rank-one", "--orbit", "short"],
    ["spectra", "rank-one", "--type", "B3", "--orbit", "orbit9"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "brown", "--n", "7"],
    ["frobnicate"],
])
def test_usage_errors_exit_one(capsys, argv):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == cli.EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_rank_one_h3_line(capsys):
    code, out, _ = run(capsys, "spectra", "rank-one", "--type", "H3", "--format", "tsv")
    assert code == 0
    assert out == "H3\tall\t(x^2-248x+3856)^3 (x-24)^4 (x-12)^5\n"


def test_rank_one_orbits_and_json(capsys):
    code, out, _ = run(capsys, "spectra", "rank-one", "--type", "B3", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["orbit"] for r in rows] == ["short", "long"]


def test_rank_one_parallel_is_deterministic(capsys):
    _, serial, _ = run(capsys, "spectra", "rank-one")
    _, parallel, _ = run(capsys, "spectra", "rank-one", "--jobs", "2")
    assert serial == parallel
    from shuffle_spectra.reflection_arrangements import DEFAULT_RANK_ONE_TYPES
    assert len(serial.splitlines()) == len(DEFAULT_RANK_ONE_TYPES)


@pytest.mark.parametrize("suite,n", [
    ("commutativity", 5), ("factorizations", 2), ("commuting-pairs", 5), ("filtration", 4),
    ("tableaux", 4), ("gelfand-model", 4), ("eulerian", 3), ("gessel-reutenauer", 3), ("derangements", 3),
])
def test_verify_suites_pass(capsys, suite, n):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--n", str(n))
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == 1 and report["n"] == n and report["passed"]
    assert [s["suite"] for s in report["suites"]] == [suite]
    assert all(c["passed"] for c in report["suites"][0]["checks"])


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eulerian", "--n", "3", "--format", "text")
    assert code == 0
    assert out.splitlines()[-1] == "PASS\toverall"


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(cli.SUITES, "eulerian", lambda n: [cli.Check("forced", False)])
    code, out, _ = run(capsys, "verify", "--suite", "eulerian")
    assert code == cli.EXIT_FINDING
    assert json.loads(out)["passed"] is False


def test_integrality_violation_exit_code(capsys, monkeypatch):
    from shuffle_spectra import operators as op

    def broken(*args, **kwargs):
        raise op.IntegralityViolation("eigenvalue 1/2")

    monkeypatch.setattr(op, "simultaneous_tables", broken)
    code, _, err = run(capsys, "spectra", "type-a", "--n", "3")
    assert code == cli.EXIT_FINDING
    assert "integrality violation" in err


def test_cache_cycle_with_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SHUFFLE_SPECTRA_CACHE", str(tmp_path))
    code, out, _ = run(capsys, "cache", "build", "--n", "4")
    assert code == 0
    first = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    run(capsys, "cache", "build", "--n", "4")
    assert {p.name: p.read_bytes() for p in tmp_path.iterdir()} == first
    code, out, _ = run(capsys, "cache", "inspect", "--n", "4")
    assert out.splitlines() == ["4\t1", "31\t3", "22\t2", "211\t3", "1111\t1"]
    code, _, _ = run(capsys, "cache", "clear")
    assert code == 0 and list(tmp_path.iterdir()) == []


def test_cache_dir_flag_and_missing_cache(capsys, tmp_path):
    code, _, err = run(capsys, "cache", "inspect", "--n", "3", "--dir", str(tmp_path))
    assert code == cli.EXIT_USAGE and "cache error" in err
    code, _, _ = run(capsys, "cache", "build", "--dir", str(tmp_path))
    assert code == cli.EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "shuffle_spectra.cli", "spectra", "type-a", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "nu_11\tw0\tchi_2\tchi_11"
