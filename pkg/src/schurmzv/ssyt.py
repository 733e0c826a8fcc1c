"""Semi-standard tableaux over skew shapes and direct evaluation of ζ_δ(s).

ζ_δ(s) = Σ_M Π m_c^{-s_c} over semi-standard fillings M (rows weakly
increasing, columns strictly increasing).

The direct evaluator groups fillings by their *value pattern*: the ordered
set partition (B_1, ..., B_r) of the cells into level sets of M.  Summing over
the actual values v_1 < ... < v_r <= N turns each pattern into the truncated
classical MZV ζ_N(w(B_1), ..., w(B_r)) with w(B) = Σ_{c∈B} s_c, so the
truncated Schur sum is an exact finite combination of truncated MZVs and can
be extrapolated term by term.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterator

from .mzv import MzvResult, zeta_mzv
from .shapes import Cell, SkewShape
from .tableaux import Tableau, in_convergence_region

DEFAULT_BOUND = 4000


class RegionError(ValueError):
    """Tableau lies outside the convergence region required by an evaluator."""


def enumerate_ssyt(shape: SkewShape, bound: int, first_values: range | None = None) -> Iterator[tuple[int, ...]]:
    """Semi-standard fillings with entries in 1..bound, row-major vectors in lex order.

    ``first_values`` restricts the entry of the first cell, so disjoint ranges
    split the enumeration into independent chunks.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    cells = shape.cells
    n = len(cells)
    if n == 0:
        yield ()
        return
    index = shape.index
    left = [index.get(Cell(c.row, c.col - 1)) for c in cells]
    up = [index.get(Cell(c.row - 1, c.col)) for c in cells]
    # cells strictly below in the same column: a chain that must fit under bound
    depth_below = [0] * n
    for i in range(n - 1, -1, -1):
        below = index.get(Cell(cells[i].row + 1, cells[i].col))
        depth_below[i] = 0 if below is None else depth_below[below] + 1
    vals = [0] * n

    def rec(i: int):
        if i == n:
            yield tuple(vals)
            return
        lo = 1
        if left[i] is not None:
            lo = vals[left[i]]
        if up[i] is not None:
            lo = max(lo, vals[up[i]] + 1)
        hi = bound - depth_below[i]
        rng = range(lo, hi + 1)
        if i == 0 and first_values is not None:
            rng = range(max(lo, first_values.start), min(hi + 1, first_values.stop))
        for v in rng:
            vals[i] = v
            yield from rec(i + 1)

    yield from rec(0)


def ssyt_sum_bruteforce(s: Tableau, bound: int) -> float:
    """Σ over fillings with entries <= bound, by explicit enumeration (small bounds only)."""
    exps = s.values
    return math.fsum(math.prod(m ** (-e) for m, e in zip(filling, exps)) for filling in enumerate_ssyt(s.shape, bound))


def value_patterns(shape: SkewShape) -> list[tuple[frozenset, ...]]:
    """All value patterns of ``shape`` as tuples of cell blocks (smallest value first)."""
    return [tuple(blocks) for blocks in _patterns(frozenset(shape.cells))]


def _removable_blocks(rem: frozenset) -> Iterator[frozenset]:
    """Nonempty sets that can carry the smallest value among the cells ``rem``."""
    cand = [c for c in sorted(rem) if Cell(c.row - 1, c.col) not in rem]
    for r in range(1, len(cand) + 1):
        for block in itertools.combinations(cand, r):
            bs = set(block)
            if all(Cell(c.row, c.col - 1) not in rem or Cell(c.row, c.col - 1) in bs for c in block):
                yield frozenset(bs)


@lru_cache(maxsize=64)
def _patterns(rem: frozenset) -> list[tuple[frozenset, ...]]:
    if not rem:
        return [()]
    out = []
    for block in _removable_blocks(rem):
        for tail in _patterns(rem - block):
            out.append((block,) + tail)
    return out


def pattern_indices(s: Tableau) -> Counter:
    """Multiset of MZV indices (w(B_1), ..., w(B_r)) over all value patterns of ``s``."""
    weights = dict(s.items())

    @lru_cache(maxsize=None)
    def rec(rem: frozenset) -> Counter:
        if not rem:
            return Counter({(): 1})
        out: Counter = Counter()
        for block in _removable_blocks(rem):
            w = sum(weights[c] for c in block)
            for tail, mult in rec(rem - block).items():
                out[(w,) + tail] += mult
        return out

    return rec(frozenset(s.shape.cells))


def zeta_schur_direct(s: Tableau, bound: int = DEFAULT_BOUND, cache=None) -> MzvResult:
    """ζ_δ(s) summed over fillings with entries <= ``bound``, extrapolated in ``bound``.

    ``meta["partial"]`` is the plain truncated sum (nondecreasing in ``bound``);
    ``value`` adds the extrapolated tail of every pattern MZV and ``err`` sums
    their error estimates.
    """
    if s.shape.size == 0:
        return MzvResult(1.0, 0.0, {"method": "direct", "bound": bound, "patterns": 1, "partial": 1.0})
    if not in_convergence_region(s, "W"):
        raise RegionError("tableau is outside the convergence region (entries >= 1, corners > 1)")
    idx = pattern_indices(s)
    value = err = partial = 0.0
    terms = []
    for k, mult in sorted(idx.items()):
        r = zeta_mzv(k, bound, cache)
        terms.append(mult * r.value)
        err += mult * r.err
        partial += mult * r.meta.get("partial", r.value)
    value = math.fsum(terms)
    meta = {"method": "direct", "bound": bound, "patterns": sum(idx.values()), "partial": partial}
    return MzvResult(value, err, meta)
