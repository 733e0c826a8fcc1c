"""Integer tableaux over skew shapes: JSON I/O, diagonal structure, convergence regions."""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable

from .shapes import Cell, SkewShape

REGIONS = ("W", "W_E", "W_JT")


class TableauError(ValueError):
    """Malformed tableau document or shape/entry mismatch."""


@dataclass(frozen=True)
class Tableau:
    """Integer filling of a skew shape; ``values`` follow ``shape.cells`` (row-major)."""

    shape: SkewShape
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.shape.size:
            raise TableauError(f"{self.shape} has {self.shape.size} cells but {len(values)} entries were given")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, shape: SkewShape, entries: dict) -> Tableau:
        if set(map(tuple, entries)) != set(map(tuple, shape.cells)):
            raise TableauError("entries must cover exactly the cells of the shape")
        return cls(shape, tuple(entries[c] for c in shape.cells))

    @classmethod
    def from_rows(cls, rows: list[list], mu: Iterable[int] = ()) -> Tableau:
        """Straight (or skew, given ``mu``) tableau from ragged rows; ``None`` marks skipped cells."""
        mu = list(mu)
        lam = [len(r) for r in rows]
        shape = SkewShape.of(lam, mu)
        return _from_rows(shape, rows)

    def __getitem__(self, cell) -> int:
        return self.values[self.shape.index[Cell(*cell)]]

    def get(self, cell, default=None):
        i = self.shape.index.get(Cell(*cell))
        return default if i is None else self.values[i]

    def items(self):
        return zip(self.shape.cells, self.values)

    @property
    def weight(self) -> int:
        return sum(self.values)

    def rows(self) -> list[list[int | None]]:
        out = []
        for i in range(1, len(self.shape.outer) + 1):
            lo, hi = self.shape.inner.part(i), self.shape.outer.part(i)
            out.append([None] * lo + [self[(i, j)] for j in range(lo + 1, hi + 1)])
        return out

    def column(self, col: int) -> list[int]:
        """Entries of column ``col`` read top to bottom."""
        span = self.shape.column_span(col)
        if span is None:
            return []
        return [self[(r, col)] for r in range(span[0], span[1] + 1)]

    def diagonal_values(self) -> dict[int, int]:
        """``diagonal -> common entry``; only meaningful when diagonal-constant."""
        return {c.diagonal: v for c, v in self.items()}

    def with_values(self, values: Iterable[int]) -> Tableau:
        return Tableau(self.shape, tuple(values))

    def shifted(self, eps: Iterable[int]) -> Tableau:
        return Tableau(self.shape, tuple(v + e for v, e in zip(self.values, eps)))

    def normalized(self) -> Tableau:
        shape = self.shape.normalized()
        if shape == self.shape:
            return self
        r0 = min(c.row for c in self.shape.cells) - 1
        c0 = min(c.col for c in self.shape.cells) - 1
        return Tableau.from_mapping(shape, {Cell(c.row - r0, c.col - c0): v for c, v in self.items()})

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "rows": self.rows()}

    def __str__(self) -> str:
        width = max((len(str(v)) for v in self.values), default=1)
        lines = []
        for row in self.rows():
            lines.append(" ".join("." .rjust(width) if v is None else str(v).rjust(width) for v in row))
        return "\n".join(lines) if lines else "(empty)"


def _from_rows(shape: SkewShape, rows) -> Tableau:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise TableauError('"rows" must be a list of lists')
    if len(rows) != len(shape.outer):
        raise TableauError(f"expected {len(shape.outer)} rows for {shape}, got {len(rows)}")
    entries = {}
    for i, row in enumerate(rows, start=1):
        lo, hi = shape.inner.part(i), shape.outer.part(i)
        if len(row) != hi:
            raise TableauError(f"row {i} must have {hi} entries (with null for skipped cells), got {len(row)}")
        for j, v in enumerate(row, start=1):
            if j <= lo:
                if v is not None:
                    raise TableauError(f"cell ({i},{j}) belongs to the inner shape and must be null")
                continue
            if v is None:
                raise TableauError(f"cell ({i},{j}) is in the skew shape and cannot be null")
            if not isinstance(v, int) or isinstance(v, bool):
                raise TableauError(f"cell ({i},{j}) holds a non-integer entry {v!r}")
            entries[Cell(i, j)] = v
    return Tableau.from_mapping(shape, entries)


def parse_tableau(text: str | dict | list) -> Tableau:
    """Parse the tableau JSON format.

    Accepts ``{"shape": {"lambda": [...], "mu": [...]}, "rows": [[...], ...]}``.
    As a convenience a bare list of rows (or a document without ``shape``) is
    read as a straight shape, with leading nulls giving the inner partition.
    """
    doc = json.loads(text) if isinstance(text, str) else text
    if isinstance(doc, list):
        doc = {"rows": doc}
    if not isinstance(doc, dict) or "rows" not in doc:
        raise TableauError('tableau document needs a "rows" list')
    rows = doc["rows"]
    if "shape" in doc:
        try:
            shape = SkewShape.from_json(doc["shape"])
        except ValueError as exc:
            raise TableauError(str(exc)) from None
    else:
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise TableauError('"rows" must be a list of lists')
        lam = [len(r) for r in rows]
        mu = []
        for r in rows:
            n = 0
            while n < len(r) and r[n] is None:
                n += 1
            mu.append(n)
        try:
            shape = SkewShape.of(lam, mu)
        except ValueError as exc:
            raise TableauError(str(exc)) from None
    return _from_rows(shape, rows)


def serialize_tableau(t: Tableau) -> str:
    return json.dumps(t.to_json())


def is_diagonal_constant(t: Tableau) -> bool:
    seen: dict[int, int] = {}
    for c, v in t.items():
        if seen.setdefault(c.diagonal, v) != v:
            return False
    return True


def in_convergence_region(t: Tableau, region: str = "W") -> bool:
    """Membership in ``W`` (corners > 1), ``W_E`` (E-cells > 1) or ``W_JT``.

    All regions require every entry to be at least 1.  ``W_JT`` additionally
    asks for diagonal constancy and entries > 1 at every column bottom.
    """
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}; expected one of {REGIONS}")
    if any(v < 1 for v in t.values):
        return False
    sh = t.shape
    if region == "W":
        strict = sh.corners()
    elif region == "W_E":
        strict = sh.e_cells()
    else:
        if not is_diagonal_constant(t):
            return False
        strict = sh.corners() | sh.column_bottoms()
    return all(t[c] > 1 for c in strict)


def diag_orbit_multiplicities(t: Tableau) -> dict[Tableau, int]:
    """Distinct tableaux reached by permuting entries within each diagonal.

    The multiplicity of a tableau is the number of tuples of per-diagonal
    permutations producing it, so the multiplicities sum to prod(m_j!).
    """
    diags = t.shape.diagonals()
    keys = sorted(diags)
    per_diag = []
    for d in keys:
        vals = [t[c] for c in diags[d]]
        stab = prod(factorial(n) for n in Counter(vals).values())
        arrangements = sorted(set(itertools.permutations(vals)))
        per_diag.append([(arr, stab) for arr in arrangements])
    out: dict[Tableau, int] = {}
    for combo in itertools.product(*per_diag):
        entries = {}
        mult = 1
        for d, (arr, stab) in zip(keys, combo):
            entries.update(zip(diags[d], arr))
            mult *= stab
        out[Tableau.from_mapping(t.shape, entries)] = mult
    return out


def diag_orbit(t: Tableau) -> list[Tableau]:
    """Deduplicated diagonal-permutation orbit of ``t`` (``t`` itself is first)."""
    orbit = list(diag_orbit_multiplicities(t))
    orbit.remove(t)
    return [t] + orbit
