import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from schurmzv.duality import (
    AdmissiblePiece,
    StructuralError,
    column_pieces,
    columns_form_skew_shape,
    diagonal_fillings,
    dualizable_column_fillings,
    dual_columns,
    dual_tableau,
    is_dualizable,
    ohno_product,
    ohno_schur,
    ohno_shifts,
    random_dualizable,
    skew_shapes,
    tableau_columns,
    verify_duality,
    verify_lemma31,
    verify_ohno,
)
from schurmzv.mzv import admissible_indices, dual_index, ohno_sum_classical, zeta_mzv
from schurmzv.shapes import SkewShape
from schurmzv.ssyt import zeta_schur_direct
from schurmzv.tableaux import Tableau, parse_tableau

A = AdmissiblePiece


def test_dualizable_examples(k22, k321, k_skew):
    assert is_dualizable(k22)
    assert is_dualizable(k321)
    assert is_dualizable(k_skew)
    assert not is_dualizable(Tableau.from_rows([[1, 2]]))
    assert not is_dualizable(Tableau.from_rows([[3, 3], [4, 2]]))
    # right of column 1's top is a 1
    assert not is_dualizable(Tableau.from_rows([[2, 1], [3, 2]]))


def test_column_pieces(k321):
    grid = column_pieces(k321)
    assert [p.piece for p in grid.columns[1]] == [A(1, 1), A(1, 3), A(1, 4)]
    assert [p.piece for p in grid.columns[2]] == [A(1, 1), A(1, 1)]
    assert [p.piece for p in grid.columns[3]] == [A(1, 2)]
    for col in (1, 2, 3):
        assert grid.column_index(col) == tuple(k321.column(col))
    # pieces on a common grid diagonal agree
    for (i, j), p in grid.rows.items():
        q = grid.rows.get((i + 1, j + 1))
        assert q is None or q == p


def test_dual_of_321(k321):
    d = dual_tableau(k321)
    assert d.dual_shape == SkewShape.of([3] * 8 + [1], [2] * 6 + [1])
    t = d.dual_tableau
    assert t.column(3) == [1, 1, 1, 2, 1, 1, 2, 2]
    assert t.column(2) == [2, 2]
    assert t.column(1) == [1, 2]


def test_dual_of_22(k22):
    d = dual_tableau(k22)
    assert d.dual_shape == SkewShape.of([2, 2, 2, 2, 1], [1, 1])
    assert d.dual_tableau.rows() == [[None, 1], [None, 1], [2, 2], [1, 2], [2]]


def test_dual_of_skew(k_skew):
    d = dual_tableau(k_skew)
    assert d.dual_shape == SkewShape.of([3, 3, 3, 3, 2, 1], [2, 2, 2, 2])
    assert d.dual_tableau.rows() == [
        [None, None, 1], [None, None, 1], [None, None, 1], [None, None, 2], [1, 3], [2],
    ]


def test_trivial_duals():
    assert dual_tableau(Tableau.from_rows([[2]])).dual_tableau == Tableau.from_rows([[2]])
    assert dual_tableau(Tableau.from_rows([[1], [2]])).dual_tableau == Tableau.from_rows([[3]])


def test_single_column_matches_dual_index():
    for w in range(2, 8):
        for k in admissible_indices(w):
            t = Tableau.from_rows([[x] for x in k])
            d = dual_tableau(t).dual_tableau
            assert tuple(x for row in d.rows() for x in row if x is not None) == dual_index(k)


def test_not_dualizable_raises():
    with pytest.raises(StructuralError):
        dual_tableau(Tableau.from_rows([[3, 3], [4, 2]]))


def test_unanchored_overlap_raises():
    dual_columns({1: (1, (2, 2)), 2: (1, (2, 2))})
    with pytest.raises(StructuralError):
        dual_columns({1: (1, (2,)), 2: (1, (1, 2))})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_random_involution(seed):
    k = random_dualizable(random.Random(seed), 2, 10, 5)
    d = dual_tableau(k)
    assert d.dual_tableau.weight == k.weight
    assert dual_tableau(d.dual_tableau).dual_tableau == k.normalized()


def test_involution_via_columns_matches_tableau_path(k321):
    cols = tableau_columns(k321)
    assert dual_columns(dual_columns(cols)) == cols


def test_ohno_shifts(k22):
    shifts = ohno_shifts(k22, 1)
    assert {t.values for t in shifts} == {(3, 3, 4, 2), (2, 4, 4, 2), (2, 3, 5, 2), (2, 3, 4, 3)}
    assert len(ohno_shifts(k22, 3)) == math.comb(3 + 3, 3)


def test_ohno_schur_trivial_cases(k22):
    assert ohno_schur(k22, 0, bound=2000).value == zeta_schur_direct(k22, 2000).value
    r = ohno_schur(Tableau.from_rows([[2]]), 2, bound=4000)
    assert abs(r.value - zeta_mzv((4,)).value) < 1e-9


def test_ohno_rims_matches_direct(k22, k_skew):
    for k in (k22, k_skew):
        for ell in (0, 1):
            a = ohno_schur(k, ell, "direct", bound=4000)
            b = ohno_schur(k, ell, "rims", terms=10**6)
            assert abs(a.value - b.value) <= a.err + b.err + 1e-12


def test_ohno_product_examples():
    # (2,4) x (3,2) at ℓ=1
    a = ohno_product([(2, 4), (3, 2)], 1, 10**6)
    b = (
        ohno_sum_classical((2, 4), 1).value * ohno_sum_classical((3, 2), 0).value
        + ohno_sum_classical((2, 4), 0).value * ohno_sum_classical((3, 2), 1).value
    )
    assert math.isclose(a.value, b, rel_tol=1e-13)
    assert ohno_product([(1, 3)], 2, 10**6).value == ohno_sum_classical((1, 3), 2).value


def test_ohno_product_reversal_with_duals():
    cols = [(2, 4), (3, 2)]
    flipped = [dual_index(c) for c in reversed(cols)]
    for ell in (0, 1, 2):
        a, b = ohno_product(cols, ell, 10**6), ohno_product(flipped, ell, 10**6)
        assert abs(a.value - b.value) <= a.err + b.err + 1e-10


def test_ohno_product_reversal_small_weights():
    idx = [k for w in range(2, 5) for k in admissible_indices(w)]
    for c1 in idx:
        for c2 in idx:
            if sum(c1) + sum(c2) > 8:
                continue
            flipped = [dual_index(c2), dual_index(c1)]
            for ell in (0, 1, 2):
                a, b = ohno_product([c1, c2], ell, 10**5), ohno_product(flipped, ell, 10**5)
                assert abs(a.value - b.value) <= a.err + b.err + 1e-9


def test_verify_reports(k_skew):
    rep = verify_duality(k_skew, 1e-4)
    assert rep.passed
    doc = rep.to_json()
    assert set(doc) >= {"lhs", "rhs", "lhs_err", "rhs_err", "diff", "tol", "pass", "params"}
    assert "wall_time_ms" not in doc
    col = verify_duality(Tableau.from_rows([[1], [2]]))
    assert col.passed and abs(col.lhs - 1.2020569031595942) < 1e-7
    assert verify_duality(Tableau.from_rows([[2]])).diff == 0.0


def test_verify_ohno_column():
    rep = verify_ohno(Tableau.from_rows([[1], [2]]), 1)
    assert rep.passed
    assert abs(rep.rhs - 1.0823232337111382) < 1e-7


def test_verify_lemma31_expansion():
    rep = verify_lemma31(parse_tableau([[3, 3], [4, 2]]))
    assert rep.passed
    assert len(rep.details["expansion"]) == 2


@pytest.mark.slow
def test_exhaustive_involution_small_shapes():
    shapes = list(skew_shapes(6))
    assert len(shapes) == len({frozenset(sh.cells) for sh in shapes}) == 1229
    count = 0
    for sh in shapes:
        for cols in dualizable_column_fillings(sh, 4):
            d = dual_columns(cols)
            assert columns_form_skew_shape(d)
            assert sum(map(sum, (v for _, v in d.values()))) == sum(map(sum, (v for _, v in cols.values())))
            assert dual_columns(d) == cols
            count += 1
    assert count == 637_632


def test_column_enumeration_agrees_with_is_dualizable():
    for sh in list(skew_shapes(4))[:60]:
        fast = list(dualizable_column_fillings(sh, 3))
        slow = [tableau_columns(t) for t in diagonal_fillings(sh, 3) if is_dualizable(t)]
        assert sorted(map(repr, fast)) == sorted(map(repr, slow))


def test_seeded_random_larger_cases():
    rng = random.Random(20240601)
    for _ in range(200):
        k = random_dualizable(rng, 7, 12, 5)
        d = dual_tableau(k).dual_tableau
        assert d.weight == k.weight
        assert dual_tableau(d).dual_tableau == k.normalized()
