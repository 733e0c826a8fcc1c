"""Partitions, skew shapes and the special cell sets used by the evaluators.

Cells are 1-indexed ``(row, col)`` pairs and the diagonal index of a cell is
``col - row``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class Cell(NamedTuple):
    row: int
    col: int

    @property
    def diagonal(self) -> int:
        return self.col - self.row


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def part(self, i: int) -> int:
        """1-indexed part, zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> Partition:
        return conjugate(self)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram: ``p'_j = #{i : p_i >= j}``."""
    first = p.part(1)
    return Partition(tuple(sum(1 for x in p.parts if x >= j) for j in range(1, first + 1)))


def corners(p: Partition) -> set[Cell]:
    """Cells ``(i, p_i)`` whose right and lower neighbours lie outside ``p``."""
    return {Cell(i, p.part(i)) for i in range(1, len(p) + 1) if p.part(i + 1) < p.part(i)}


def e_cells(p: Partition) -> set[Cell]:
    """Cells lying on a diagonal through the bottom cell of some column."""
    return SkewShape(p).e_cells()


def cells(sh: SkewShape) -> list[Cell]:
    return list(sh.cells)


@dataclass(frozen=True)
class SkewShape:
    outer: Partition = field(default_factory=Partition)
    inner: Partition = field(default_factory=Partition)

    def __post_init__(self):
        outer = self.outer if isinstance(self.outer, Partition) else Partition(tuple(self.outer))
        inner = self.inner if isinstance(self.inner, Partition) else Partition(tuple(self.inner))
        if len(inner) > len(outer) or any(inner.part(i) > outer.part(i) for i in range(1, len(inner) + 1)):
            raise ValueError(f"inner {list(inner)} is not contained in outer {list(outer)}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    @classmethod
    def of(cls, outer: Iterable[int], inner: Iterable[int] = ()) -> SkewShape:
        return cls(Partition(tuple(outer)), Partition(tuple(inner)))

    @classmethod
    def from_cells(cls, cell_set: Iterable[tuple[int, int]]) -> SkewShape:
        """Recover ``lambda/mu`` from an explicit set of cells.

        Raises ``ValueError`` if the cells do not form a skew diagram.
        """
        cs = {Cell(*c) for c in cell_set}
        if not cs:
            return cls()
        if min(c.row for c in cs) < 1 or min(c.col for c in cs) < 1:
            raise ValueError("cells must have positive coordinates")
        nrows = max(c.row for c in cs)
        by_row: dict[int, list[int]] = {}
        for c in cs:
            by_row.setdefault(c.row, []).append(c.col)
        outer = [0] * nrows
        inner = [0] * nrows
        for r in range(nrows, 0, -1):
            cols = sorted(by_row.get(r, []))
            if cols:
                if cols != list(range(cols[0], cols[-1] + 1)):
                    raise ValueError(f"row {r} is not contiguous")
                outer[r - 1], inner[r - 1] = cols[-1], cols[0] - 1
            else:
                below = outer[r] if r < nrows else 0
                outer[r - 1] = inner[r - 1] = below
        try:
            shape = cls.of(outer, inner)
        except ValueError as exc:
            raise ValueError(f"cells do not form a skew shape: {exc}") from None
        if set(shape.cells) != cs:
            raise ValueError("cells do not form a skew shape")
        return shape

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        """Row-major list of the cells of ``outer / inner``."""
        return tuple(
            Cell(i, j)
            for i in range(1, len(self.outer) + 1)
            for j in range(self.inner.part(i) + 1, self.outer.part(i) + 1)
        )

    @cached_property
    def index(self) -> dict[Cell, int]:
        return {c: n for n, c in enumerate(self.cells)}

    @cached_property
    def outer_conj(self) -> Partition:
        return conjugate(self.outer)

    @cached_property
    def inner_conj(self) -> Partition:
        return conjugate(self.inner)

    @property
    def size(self) -> int:
        return self.outer.weight - self.inner.weight

    @property
    def ncols(self) -> int:
        """Number of columns of the outer partition."""
        return self.outer.part(1)

    def __contains__(self, cell) -> bool:
        r, c = cell
        return self.inner.part(r) < c <= self.outer.part(r)

    def __repr__(self) -> str:
        if len(self.inner):
            return f"SkewShape({list(self.outer)}/{list(self.inner)})"
        return f"SkewShape({list(self.outer)})"

    @property
    def is_straight(self) -> bool:
        return len(self.inner) == 0

    def column_span(self, col: int) -> tuple[int, int] | None:
        """``(top_row, bottom_row)`` of column ``col`` or None if it is empty."""
        top = self.inner_conj.part(col) + 1
        bottom = self.outer_conj.part(col)
        return (top, bottom) if top <= bottom else None

    def corners(self) -> set[Cell]:
        return {c for c in self.cells if (c.row, c.col + 1) not in self and (c.row + 1, c.col) not in self}

    def column_bottoms(self) -> set[Cell]:
        out = set()
        for col in range(1, self.ncols + 1):
            span = self.column_span(col)
            if span:
                out.add(Cell(span[1], col))
        return out

    def e_cells(self) -> set[Cell]:
        diags = {c.diagonal for c in self.column_bottoms()}
        return {c for c in self.cells if c.diagonal in diags}

    def diagonals(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for c in self.cells:
            out.setdefault(c.diagonal, []).append(c)
        return out

    def normalized(self) -> SkewShape:
        """Translate the diagram so that its first row and column are occupied."""
        if not self.cells:
            return SkewShape()
        r0 = min(c.row for c in self.cells) - 1
        c0 = min(c.col for c in self.cells) - 1
        return SkewShape.from_cells((c.row - r0, c.col - c0) for c in self.cells)

    def components(self) -> list[tuple[Cell, ...]]:
        """Edge-connected components, each in row-major order."""
        seen: set[Cell] = set()
        comps = []
        for start in self.cells:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                c = stack.pop()
                comp.append(c)
                for nb in ((c.row + 1, c.col), (c.row - 1, c.col), (c.row, c.col + 1), (c.row, c.col - 1)):
                    nb = Cell(*nb)
                    if nb in self and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            comps.append(tuple(sorted(comp)))
        return comps

    def to_json(self) -> dict:
        out = {"lambda": list(self.outer.parts)}
        if len(self.inner):
            out["mu"] = list(self.inner.parts)
        return out

    @classmethod
    def from_json(cls, doc) -> SkewShape:
        if isinstance(doc, list):
            return cls.of(doc)
        if not isinstance(doc, dict) or "lambda" not in doc:
            raise ValueError('shape must be a JSON array or {"lambda": [...], "mu": [...]}')
        return cls.of(_int_list(doc["lambda"]), _int_list(doc.get("mu") or []))


def _int_list(xs) -> list[int]:
    if not isinstance(xs, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in xs):
        raise ValueError(f"expected a list of integers, got {xs!r}")
    return xs


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of ``n`` in reverse lexicographic order."""
    if n == 0:
        yield Partition()
        return
    max_part = n if max_part is None else max_part
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)
