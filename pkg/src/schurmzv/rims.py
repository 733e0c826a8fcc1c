"""E-rim decompositions, their permutation types and the signed rim expansion.

A decomposition assigns to every column ``j`` of the outer shape a ribbon
``θ_j`` (possibly empty).  A nonempty ribbon starts at the top cell of column
``j`` and walks down or left one cell at a time; it has to stop on the
diagonal of some column bottom ``(λ'_i, i)``, which fixes ``σ(j) = i``.  An
empty ribbon is assigned the column ``i`` whose bottom diagonal is the
diagonal just above the top of column ``j``.  The ribbons must be disjoint,
cover the shape, give a permutation ``σ``, and each initial union
``μ ∪ θ_1 ∪ ... ∪ θ_j`` must again be a Young diagram.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .mzv import MzvResult, is_admissible, zeta_mzv
from .shapes import Cell, SkewShape
from .ssyt import RegionError
from .tableaux import Tableau


def permutation_sign(perm: tuple[int, ...]) -> int:
    """Sign of a permutation of 1..n given in one-line notation."""
    seen, sign = set(), 1
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x - 1]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class RimDecomposition:
    shape: SkewShape
    ribbons: tuple[tuple[Cell, ...], ...]  # θ_1..θ_s, each read top-right to bottom-left
    sigma: tuple[int, ...]

    @property
    def sign(self) -> int:
        return permutation_sign(self.sigma)

    def assignment(self) -> dict[Cell, int]:
        return {c: j for j, rib in enumerate(self.ribbons, start=1) for c in rib}

    def label_rows(self) -> list[list[int | None]]:
        lab = self.assignment()
        sh = self.shape
        return [
            [None if j <= sh.inner.part(i) else lab[Cell(i, j)] for j in range(1, sh.outer.part(i) + 1)]
            for i in range(1, len(sh.outer) + 1)
        ]

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "labels": self.label_rows(),
            "sigma": list(self.sigma),
            "sign": self.sign,
        }


def is_ribbon(cells) -> bool:
    """Edge-connected and free of 2x2 blocks."""
    cs = set(cells)
    if not cs:
        return True
    if any({(r, c + 1), (r + 1, c), (r + 1, c + 1)} <= cs for r, c in cs):
        return False
    return _connected(cs)


def _connected(cs) -> bool:
    start = next(iter(cs))
    seen, stack = {start}, [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cs and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cs)


def _is_diagram(cells: set) -> bool:
    return all((r == 1 or (r - 1, c) in cells) and (c == 1 or (r, c - 1) in cells) for r, c in cells)


def enumerate_e_rim_decompositions(shape: SkewShape) -> list[RimDecomposition]:
    s = shape.ncols
    lam_c, mu_c = shape.outer_conj, shape.inner_conj
    bottom = {i - lam_c.part(i): i for i in range(1, s + 1)}
    cells = set(shape.cells)
    mu_cells = {(r, c) for r in range(1, len(shape.inner) + 1) for c in range(1, shape.inner.part(r) + 1)}
    out: list[RimDecomposition] = []

    def walks(path: list, used: set) -> Iterator[tuple[Cell, ...]]:
        r, c = path[-1]
        if c - r in bottom:
            yield tuple(path)
        for nxt in (Cell(r + 1, c), Cell(r, c - 1)):
            if nxt in cells and nxt not in used:
                path.append(nxt)
                used.add(nxt)
                yield from walks(path, used)
                path.pop()
                used.discard(nxt)

    def rec(j: int, used: set, sigma: list, ribbons: list):
        if j > s:
            if len(used) == len(cells):
                out.append(RimDecomposition(shape, tuple(ribbons), tuple(sigma)))
            return
        options = []
        empty_target = bottom.get(j - mu_c.part(j))
        if empty_target is not None:
            options.append(((), empty_target))
        top = Cell(mu_c.part(j) + 1, j)
        if top in cells and top not in used:
            used.add(top)
            for w in walks([top], used):
                options.append((w, bottom[w[-1].col - w[-1].row]))
            used.discard(top)
        for rib, i in options:
            if i in sigma or any(c in used for c in rib):
                continue
            grown = used | set(rib)
            if not _is_diagram(grown | mu_cells):
                continue
            rec(j + 1, grown, sigma + [i], ribbons + [rib])

    rec(1, set(), [], [])
    return out


def theta_reading(d: RimDecomposition, j: int, s: Tableau) -> tuple[int, ...]:
    """Entries of ``s`` along ``θ_j`` from its top-right end to its bottom-left end."""
    return tuple(s[c] for c in d.ribbons[j - 1])


@dataclass(frozen=True)
class SignedProduct:
    """``sign · Π ζ(f)`` over the index tuples ``factors``."""

    sign: int
    factors: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"sign": self.sign, "factors": [list(f) for f in self.factors]}

    def canonical(self) -> tuple:
        """Order-independent key for comparing expansions term by term."""
        return (self.sign, tuple(sorted(self.factors)))


def rim_terms(s: Tableau) -> list[SignedProduct]:
    """Signed products of ribbon readings, one per decomposition (empty ribbons dropped)."""
    terms = []
    for d in enumerate_e_rim_decompositions(s.shape):
        factors = tuple(r for r in (theta_reading(d, j, s) for j in range(1, len(d.ribbons) + 1)) if r)
        terms.append(SignedProduct(d.sign, factors))
    return terms


def evaluate_terms(terms, terms_m: int, cache=None) -> MzvResult:
    """Σ sign · Π ζ(factor) with first-order error propagation."""
    value_parts, err = [], 0.0
    for t in terms:
        prod = MzvResult(1.0, 0.0)
        for f in t.factors:
            if not is_admissible(f):
                raise RegionError(f"reading {f} is not admissible; tableau is outside W_E")
            prod = prod * zeta_mzv(f, terms_m, cache)
        value_parts.append(t.sign * prod.value)
        err += prod.err
    return MzvResult(math.fsum(value_parts), err)


def lemma31_rhs(s: Tableau, terms: int, cache=None) -> MzvResult:
    """Σ over E-rim decompositions of sign × Π ζ(θ_j reading); no diagonal symmetrization."""
    return evaluate_terms(rim_terms(s), terms, cache)


def e_pattern_types(shape: SkewShape, N: int | None = None) -> dict[tuple[int, ...], int]:
    """Types of E-patterns with the number of patterns of each type.

    Path ``ℓ_j`` runs from ``(s+1-j+μ'_j, 1)`` to ``(s+1-i+λ'_i, N+1)`` with
    unit up or up-right steps, so there are ``C(N, dx)`` choices for a
    horizontal displacement ``dx``.  ``N`` defaults to ``|δ|+1``, large enough
    for every displacement that can occur.
    """
    s = shape.ncols
    N = shape.size + 1 if N is None else N
    lam_c, mu_c = shape.outer_conj, shape.inner_conj
    start = [s + 1 - j + mu_c.part(j) for j in range(1, s + 1)]
    end = [s + 1 - i + lam_c.part(i) for i in range(1, s + 1)]
    out = {}
    for perm in itertools.permutations(range(1, s + 1)):
        count = 1
        for j, i in enumerate(perm):
            dx = end[i - 1] - start[j]
            count *= math.comb(N, dx) if 0 <= dx <= N else 0
            if not count:
                break
        if count:
            out[perm] = count
    return out
