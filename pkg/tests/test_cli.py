import csv
import io
import json
import subprocess
import sys

import pytest

from trophurwitz import cli
from trophurwitz.signed import default_table

SMALL_CHECK = ["--sweep-degree", "4", "--sweep-r", "3", "--bridge-r", "3"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["real", "-g", "0", "-l", "5", "-n", "3,1,1", "-s", "++"], "1\n"),
        (["real", "-g", "0", "-l", "5", "-n", "3,1,1", "-s", "-+"], "3\n"),
        (["complex", "-g", "0", "-l", "5", "-n", "3,1,1"], "5\n"),
        (["oracle", "-g", "0", "-l", "5", "-n", "3,1,1"], "5\n"),
        (["complex", "-l", "4", "-n", "4"], "1/4\n"),
        (["oracle", "-g", "1", "-l", "2", "-n", "2"], "1/2\n"),
        (["real", "-l", "5", "-n", "1,1,3", "--signs", "-+"], "3\n"),
    ],
)
def test_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_json_value(capsys):
    code, out, _ = run(capsys, "real", "-l", "5", "-n", "3,1,1", "-s", "-+", "--format", "json")
    obj = json.loads(out)
    assert obj["value"] == {"num": 3, "den": 1}
    assert obj["signs"] == "-+"
    code, out, _ = run(capsys, "complex", "-g", "1", "-l", "2", "-n", "2", "--format", "json")
    assert json.loads(out)["value"] == {"num": 1, "den": 2}


def test_csv_value(capsys):
    _, out, _ = run(capsys, "oracle", "-l", "5", "-n", "3,1,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["command", "g", "lambda", "nu", "value"], ["oracle", "0", "5", "3,1,1", "5"]]


def test_real_all(capsys):
    _, out, _ = run(capsys, "real-all", "-l", "5", "-n", "3,1,1")
    assert out == "++ 1\n+- 3\n-+ 3\n-- 1\n"
    _, out, _ = run(capsys, "real-all", "-l", "5", "-n", "3,1,1", "--format", "json")
    values = json.loads(out)["values"]
    assert [v["signs"] for v in values] == ["++", "+-", "-+", "--"]


def test_enumerate_formats(capsys):
    _, out, _ = run(capsys, "enumerate", "-l", "5", "-n", "3,1,1")
    assert out.splitlines() == ["d=5;r=2;0-1:5,1-2:2,1-3:3,2-3:1,2-3:1 1", "d=5;r=2;0-1:5,1-2:4,1-3:1,2-3:1,2-3:3 4"]
    _, out, _ = run(capsys, "enumerate", "-l", "5", "-n", "3,1,1", "--format", "json")
    items = json.loads(out)
    assert [i["multiplicity"]["num"] for i in items] == [1, 4]
    _, out, _ = run(capsys, "enumerate", "-l", "5", "-n", "3,1,1", "-s", "++", "--format", "dot")
    assert out.count("digraph") == 1 and 'style="bold"' in out
    _, out, _ = run(capsys, "enumerate", "-l", "5", "-n", "3,1,1", "-s", "-+", "--format", "json")
    assert len(json.loads(out)) == 2


@pytest.mark.parametrize(
    "argv, code",
    [
        (["complex", "-l", "5", "-n", "3,x"], cli.EXIT_BAD_PARTITION),
        (["complex", "-l", "5", "-n", "0,5"], cli.EXIT_BAD_PARTITION),
        (["complex", "-l", "5", "-n", "3,1"], cli.EXIT_BAD_PARTITION),
        (["real", "-l", "5", "-n", "3,1,1", "-s", "+"], cli.EXIT_SIGN_MISMATCH),
        (["real", "-l", "5", "-n", "3,1,1"], cli.EXIT_BAD_PARTITION),
        (["oracle", "-l", "9", "-n", "9"], cli.EXIT_CEILING),
        (["oracle", "-l", "4", "-n", "4", "--max-degree", "3"], cli.EXIT_CEILING),
        (["frobnicate"], cli.EXIT_USAGE),
        (["complex", "-l", "5", "-n", "5", "--format", "dot"], cli.EXIT_BAD_PARTITION),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.startswith("error:") or "usage" in err


def test_exit_codes_are_distinct():
    codes = [cli.EXIT_CHECK_FAILED, cli.EXIT_USAGE, cli.EXIT_BAD_PARTITION, cli.EXIT_SIGN_MISMATCH, cli.EXIT_CEILING, cli.EXIT_UNSUPPORTED]
    assert len(set(codes)) == len(codes) and cli.EXIT_OK not in codes


def test_ceiling_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("TROPHURWITZ_MAX_DEGREE", "4")
    code, _, _ = run(capsys, "oracle", "-l", "5", "-n", "3,1,1")
    assert code == cli.EXIT_CEILING


def test_cache_round_trip(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    run(capsys, "real", "-l", "5", "-n", "3,1,1", "-s", "-+", "--cache", str(path))
    assert len(path.read_text().splitlines()) == 1
    # a hit returns the stored value without recomputing
    monkeypatch.setattr(cli, "real_tropical_double_hurwitz", lambda *a, **k: pytest.fail("cache miss"))
    code, out, _ = run(capsys, "real", "-l", "5", "-n", "3,1,1", "-s", "-+", "--cache", str(path))
    assert (code, out) == (0, "3\n")
    monkeypatch.setenv("TROPHURWITZ_CACHE", str(path))
    code, out, _ = run(capsys, "real", "-l", "5", "-n", "3,1,1", "-s", "-+")
    assert out == "3\n"


def test_check_small_sweep_passes_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "check", *SMALL_CHECK)
    code2, out2, _ = run(capsys, "check", *SMALL_CHECK, "--threads", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.rstrip().endswith("overall: PASS")


def test_check_fails_on_perturbed_rules(capsys, tmp_path):
    from importlib import resources

    obj = json.loads(resources.files("trophurwitz").joinpath("data/local_rules.json").read_text())
    for entry in obj["entries"]:
        if entry["family"] == "d_even_ab_odd" and entry["sign"] == "+":
            entry["signs"]["big"] = "+"
    path = tmp_path / "rules.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "check", *SMALL_CHECK, "--rules", str(path))
    assert code == cli.EXIT_CHECK_FAILED
    assert "overall: FAIL" in out
    assert default_table().digest() != cli.LocalRuleTable.load(path).digest()


def test_check_sweep_above_ceiling(capsys):
    code, _, err = run(capsys, "check", "--sweep-degree", "8")
    assert code == cli.EXIT_CEILING


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "trophurwitz", "real", "-g", "0", "-l", "5", "-n", "3,1,1", "-s", "-+"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "3\n"
