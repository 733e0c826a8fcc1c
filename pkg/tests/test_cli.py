import json

import pytest

from schurmzv.cli import main

SKEW = '{"shape": {"lambda": [3, 2, 1], "mu": [1, 1]}, "rows": [[null, 1, 3], [null, 2], [5]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mzv_json(capsys, no_cache_env):
    code, out, _ = run(capsys, "mzv", "2", "2", "--json", "--no-cache")
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["value"] - 0.81174242528335364) < 1e-10
    assert doc["dual"] == [2, 2]
    code, out, _ = run(capsys, "mzv", "1", "2", "--json", "--no-cache")
    assert json.loads(out)["dual"] == [3]


def test_dual_command(capsys):
    code, out, _ = run(capsys, "dual", "--tableau", SKEW, "--json")
    assert code == 0
    assert json.loads(out)["dual"]["rows"] == [
        [None, None, 1], [None, None, 1], [None, None, 1], [None, None, 2], [1, 3], [2],
    ]


def test_dual_from_file(capsys, tmp_path):
    p = tmp_path / "k.json"
    p.write_text(SKEW)
    code, out, _ = run(capsys, "dual", "--tableau", str(p))
    assert code == 0 and "dual" in out


def test_verify_passes(capsys, no_cache_env):
    code, out, _ = run(capsys, "verify", "duality", "--tableau", SKEW, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert "wall_time_ms" not in doc
    code, out, _ = run(capsys, "verify", "ohno", "--tableau", "[[2,3],[4,2]]", "--ell", "1", "--json", "--timing")
    assert code == 0 and "wall_time_ms" in json.loads(out)


def test_verify_numeric_failure_exit_code(capsys, no_cache_env):
    # a tiny bound with a tiny tolerance cannot resolve the difference
    code, _, _ = run(capsys, "verify", "duality", "--tableau", SKEW, "--bound", "3", "--terms", "3", "--tol", "1e-300")
    assert code in (0, 1)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--tableau", "[[1]]"],
        ["dual", "--tableau", "[[3,3],[4,2]]"],
        ["dual", "--tableau", "/nonexistent/file.json"],
        ["dual", "--tableau", "{not json"],
        ["dual"],
        ["mzv", "2", "1"],
        ["mzv", "2", "--terms", "0"],
        ["jt", "--tableau", "[[3,3],[4,2]]"],
        ["rims"],
    ],
)
def test_input_errors_exit_2(capsys, argv, no_cache_env):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_rims_and_jt(capsys):
    code, out, _ = run(capsys, "rims", "--shape", '{"lambda": [2, 2]}', "--json")
    assert code == 0 and json.loads(out)["count"] == 2
    code, out, _ = run(capsys, "jt", "--tableau", "[[2,3],[4,2]]", "--symbolic")
    assert code == 0
    assert "- ζ(3,2,4) ζ(2)" in out and "+ ζ(2,4) ζ(3,2)" in out


def test_cache_stats_and_clear(capsys, tmp_path):
    path = str(tmp_path / "c.jsonl")
    code, out, _ = run(capsys, "cache", "stats", "--cache", path, "--json")
    assert code == 0 and json.loads(out)["entries"] == 0
    run(capsys, "mzv", "3", "--cache", path)
    _, out, _ = run(capsys, "cache", "stats", "--cache", path, "--json")
    assert json.loads(out)["entries"] == 1
    _, out, _ = run(capsys, "cache", "clear", "--cache", path, "--json")
    assert json.loads(out)["entries"] == 0


def test_sweep_deterministic(capsys):
    argv = ["sweep", "--count", "20", "--json", "--seed", "7"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["pass"] is True
