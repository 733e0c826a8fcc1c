import pytest

from schurmzv.tableaux import parse_tableau


@pytest.fixture
def k22():
    """Straight (2,2) example used for the Ohno checks."""
    return parse_tableau({"shape": {"lambda": [2, 2]}, "rows": [[2, 3], [4, 2]]})


@pytest.fixture
def k_skew():
    """Four-cell skew tableau on (3,2,1)/(1,1)."""
    return parse_tableau({"shape": {"lambda": [3, 2, 1], "mu": [1, 1]}, "rows": [[None, 1, 3], [None, 2], [5]]})


@pytest.fixture
def k321():
    return parse_tableau({"shape": {"lambda": [3, 2, 1]}, "rows": [[2, 2, 3], [4, 2], [5]]})


@pytest.fixture
def no_cache_env(monkeypatch, tmp_path):
    monkeypatch.setenv("SCHURMZV_CACHE", str(tmp_path / "cache.jsonl"))
    return tmp_path / "cache.jsonl"
