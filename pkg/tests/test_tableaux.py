import json

import pytest
from hypothesis import given, strategies as st

from schurmzv.shapes import Cell, SkewShape
from schurmzv.tableaux import (
    Tableau,
    TableauError,
    diag_orbit,
    diag_orbit_multiplicities,
    in_convergence_region,
    is_diagonal_constant,
    parse_tableau,
    serialize_tableau,
)
from math import factorial, prod


def T(rows, mu=()):
    return Tableau.from_rows(rows, mu)


def test_parse_examples(k22, k_skew):
    assert [k22[c] for c in [(1, 1), (1, 2), (2, 1), (2, 2)]] == [2, 3, 4, 2]
    assert parse_tableau('{"shape":{"lambda":[1]},"rows":[[2]]}').values == (2,)
    assert k_skew.shape == SkewShape.of([3, 2, 1], [1, 1])
    assert k_skew[(3, 1)] == 5


def test_parse_infers_shape_from_rows():
    t = parse_tableau([[None, 1, 3], [None, 2], [5]])
    assert t.shape == SkewShape.of([3, 2, 1], [1, 1])


@pytest.mark.parametrize(
    "doc",
    [
        {"shape": {"lambda": [2]}, "rows": [[1]]},
        {"shape": {"lambda": [2]}, "rows": [[1, 1.5]]},
        {"shape": {"lambda": [2], "mu": [1]}, "rows": [[1, 2]]},
        {"shape": {"lambda": [2]}, "rows": [[None, 2]]},
        {"shape": {"lambda": [2]}},
        {"shape": {"lambda": [2]}, "rows": [[1, True]]},
    ],
)
def test_parse_errors(doc):
    with pytest.raises(TableauError):
        parse_tableau(doc)


def test_serialize_pads_inner_cells(k_skew):
    doc = json.loads(serialize_tableau(k_skew))
    assert doc["rows"][0] == [None, 1, 3]
    assert doc["shape"] == {"lambda": [3, 2, 1], "mu": [1, 1]}


small_tableaux = st.sampled_from(
    [SkewShape.of([2, 2]), SkewShape.of([3, 2, 1], [1, 1]), SkewShape.of([3, 1]), SkewShape.of([1, 1, 1]), SkewShape.of([4, 4], [2])]
).flatmap(lambda sh: st.lists(st.integers(1, 6), min_size=sh.size, max_size=sh.size).map(lambda v: Tableau(sh, tuple(v))))


@given(small_tableaux)
def test_serialization_roundtrip(t):
    assert parse_tableau(serialize_tableau(t)) == t


def test_diagonal_constant():
    assert is_diagonal_constant(T([[2, 3], [4, 2]]))
    assert not is_diagonal_constant(T([[3, 3], [4, 2]]))
    assert is_diagonal_constant(T([[7]]))


def test_regions():
    assert in_convergence_region(T([[2, 3], [4, 2]]), "W_JT")
    assert not in_convergence_region(T([[1]]), "W")
    assert in_convergence_region(T([[1, 2]]), "W")
    # corner fine but a column bottom is 1
    assert not in_convergence_region(T([[2, 2], [1]]), "W_JT")
    assert not in_convergence_region(T([[2, 2], [1]]), "W")  # (2,1) is a corner
    assert not in_convergence_region(T([[3, 3], [4, 2]]), "W_JT")
    assert in_convergence_region(T([[3, 3], [4, 2]]), "W_E")
    with pytest.raises(ValueError):
        in_convergence_region(T([[2]]), "bogus")


def test_diag_orbit_examples():
    orbit = diag_orbit(T([[3, 3], [4, 2]]))
    assert set(orbit) == {T([[3, 3], [4, 2]]), T([[2, 3], [4, 3]])}
    assert orbit[0] == T([[3, 3], [4, 2]])
    assert diag_orbit(T([[2, 4], [4, 2]])) == [T([[2, 4], [4, 2]])]
    assert diag_orbit_multiplicities(T([[2, 4], [4, 2]])) == {T([[2, 4], [4, 2]]): 2}


@given(small_tableaux)
def test_diag_orbit_closure_and_counts(t):
    orbit = set(diag_orbit(t))
    assert t in orbit
    for u in orbit:
        assert set(diag_orbit(u)) == orbit
    sizes = [len(cs) for cs in t.shape.diagonals().values()]
    total = prod(factorial(n) for n in sizes)
    assert total % len(orbit) == 0
    assert sum(diag_orbit_multiplicities(t).values()) == total


def test_column_and_rows(k321):
    assert k321.column(1) == [2, 4, 5]
    assert k321.column(3) == [3]
    assert k321.rows() == [[2, 2, 3], [4, 2], [5]]
    assert k321.weight == 18
    assert k321.get((5, 5)) is None
    assert k321[Cell(2, 2)] == 2
