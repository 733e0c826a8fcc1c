"""Dual tableaux built from admissible pieces, Schur Ohno sums and the verifiers.

Each column of a dualizable tableau, read top to bottom, is an admissible
index and so splits into pieces A(a, b).  The dual column lists the swapped
pieces A(b, a) in reverse order, and the dual columns are laid out right to
left.  Vertical placement comes from *anchors*: when a piece P of column
j-1 starts on the row where a piece Q of column j ends, the dual piece Q†
starts on the row where P† ends.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .mzv import (
    AdmissiblePiece,
    MzvResult,
    decompose_pieces,
    is_admissible,
    ohno_sum_classical,
    weak_compositions,
)
from .rims import enumerate_e_rim_decompositions, lemma31_rhs, rim_terms, theta_reading
from .shapes import Cell, SkewShape
from .ssyt import RegionError, zeta_schur_direct
from .tableaux import Tableau, diag_orbit_multiplicities, in_convergence_region, is_diagonal_constant


class StructuralError(ValueError):
    """The dual construction cannot be carried out for this input."""


@dataclass(frozen=True)
class PlacedPiece:
    piece: AdmissiblePiece
    col: int
    top: int  # row of the first cell of the expansion

    @property
    def bottom(self) -> int:
        return self.top + self.piece.a - 1


@dataclass(frozen=True)
class PieceGrid:
    """Pieces of every nonempty column, top to bottom, with their grid rows.

    Anchored pieces of neighbouring columns share a grid row; rows are
    numbered from 1 at the top.
    """

    columns: dict[int, tuple[PlacedPiece, ...]]
    rows: dict[tuple[int, int], AdmissiblePiece] = field(default_factory=dict)

    def column_index(self, col: int) -> tuple[int, ...]:
        return tuple(x for p in self.columns.get(col, ()) for x in p.piece.expand())


@dataclass(frozen=True)
class DualResult:
    dual_shape: SkewShape
    dual_tableau: Tableau

    def to_json(self) -> dict:
        return self.dual_tableau.to_json()


def is_dualizable(k: Tableau) -> bool:
    """Diagonal-constant, admissible columns, and no 1 right of a column top."""
    if k.shape.size == 0 or not is_diagonal_constant(k):
        return False
    if any(v < 1 for v in k.values):
        return False
    for col in range(1, k.shape.ncols + 1):
        span = k.shape.column_span(col)
        if span is None:
            continue
        if not is_admissible(k.column(col)):
            return False
        if k.get((span[0], col + 1)) == 1:
            return False
    return True


def _anchors(left: tuple[PlacedPiece, ...], right: tuple[PlacedPiece, ...]):
    """Pairs (P, Q), P in the left column, Q in the right one, with top(P) = bottom(Q)."""
    by_bottom = {q.bottom: q for q in right}
    return [(p, by_bottom[p.top]) for p in left if p.top in by_bottom]


def column_pieces(k: Tableau) -> PieceGrid:
    if not is_dualizable(k):
        raise StructuralError("tableau is not dualizable")
    columns: dict[int, tuple[PlacedPiece, ...]] = {}
    for col in range(1, k.shape.ncols + 1):
        span = k.shape.column_span(col)
        if span is None:
            continue
        row, placed = span[0], []
        for piece in decompose_pieces(k.column(col)):
            placed.append(PlacedPiece(piece, col, row))
            row += piece.a
        columns[col] = tuple(placed)
    # grid rows: anchored neighbours share a row, otherwise stack below
    cols = sorted(columns, reverse=True)
    base = {cols[0]: 0}
    for right, left in zip(cols, cols[1:]):
        pairs = _anchors(columns[left], columns[right]) if left == right - 1 else []
        if pairs:
            p, q = pairs[0]
            base[left] = base[right] + columns[right].index(q) - columns[left].index(p)
        else:
            base[left] = base[right] + len(columns[right])
    lo = min(base[c] for c in cols)
    rows = {
        (base[c] - lo + n + 1, c): pp.piece for c in cols for n, pp in enumerate(columns[c])
    }
    return PieceGrid(columns, rows)


def _pieces(values: tuple[int, ...]) -> list[tuple[int, int]]:
    out, ones = [], 0
    for x in values:
        if x == 1:
            ones += 1
        else:
            out.append((ones + 1, x - 1))
            ones = 0
    return out


def tableau_columns(k: Tableau) -> dict[int, tuple[int, tuple[int, ...]]]:
    """``col -> (top_row, entries top to bottom)`` for the nonempty columns."""
    out = {}
    for col in range(1, k.shape.ncols + 1):
        span = k.shape.column_span(col)
        if span is not None:
            out[col] = (span[0], tuple(k[(r, col)] for r in range(span[0], span[1] + 1)))
    return out


def dual_columns(columns: dict[int, tuple[int, tuple[int, ...]]]) -> dict[int, tuple[int, tuple[int, ...]]]:
    """Column-level dual construction; output is translated to start at row 1, column 1.

    ``columns`` maps a column to its top row and entries, each column being
    an admissible index.  Raises StructuralError when the placement
    constraints are contradictory.
    """
    if not columns:
        return {}
    ncols = max(columns)
    # pieces as (a, b, top_row); dual pieces as (a', b', offset from dual top)
    pieces, duals, lengths = {}, {}, {}
    for c, (top, vals) in columns.items():
        row, placed = top, []
        for a, b in _pieces(vals):
            placed.append((a, b, row))
            row += a
        pieces[c] = placed
        off, d = 0, {}
        for a, b, r in reversed(placed):
            d[r] = (off, b)  # keyed by original top row; dual piece A(b, a) has length b
            off += b
        duals[c] = d
        lengths[c] = off

    order = sorted(columns, reverse=True)
    tops = {order[0]: 0}
    for c, a in zip(order, order[1:]):
        top_a, vals_a = columns[a]
        top_c, vals_c = columns[c]
        candidates = set()
        if a == c - 1:
            bottoms_c = {r + pa - 1: r for pa, _, r in pieces[c]}
            for pa, _, r in pieces[a]:
                q = bottoms_c.get(r)
                if q is not None:
                    q_off, _ = duals[c][q]
                    p_off, p_len = duals[a][r]
                    candidates.add(tops[c] + q_off - p_off - p_len + 1)
        if len(candidates) > 1:
            raise StructuralError(f"anchors between columns {a} and {c} disagree")
        if candidates:
            tops[a] = candidates.pop()
            continue
        bottom_c = top_c + len(vals_c) - 1
        if a == c - 1 and top_a <= bottom_c:
            raise StructuralError(f"columns {a} and {c} overlap without an anchor")
        tops[a] = tops[c] - (top_a - bottom_c) - lengths[a] + 1

    out = {}
    for c in columns:
        vals = []
        for a, b, _ in reversed(pieces[c]):
            vals.extend((1,) * (b - 1) + (a + 1,))
        out[ncols + 1 - c] = (tops[c], tuple(vals))
    r0 = min(top for top, _ in out.values()) - 1
    c0 = min(out) - 1
    return {c - c0: (top - r0, vals) for c, (top, vals) in sorted(out.items())}


def columns_form_skew_shape(columns: dict[int, tuple[int, tuple[int, ...]]]) -> bool:
    """Whether column intervals ``[top, top+len-1]`` are the columns of some λ/μ."""
    prev = None
    for c in sorted(columns):
        top, vals = columns[c]
        bottom = top + len(vals) - 1
        if top < 1 or not vals:
            return False
        if prev is not None:
            p_col, p_top, p_bottom = prev
            if bottom > p_bottom or top > p_top:
                return False
            if c > p_col + 1 and bottom > p_top - 1:
                return False
        prev = (c, top, bottom)
    return True


def dual_tableau(k: Tableau) -> DualResult:
    if not is_dualizable(k):
        raise StructuralError("tableau is not dualizable")
    cols = dual_columns(tableau_columns(k))
    if not columns_form_skew_shape(cols):
        raise StructuralError("dual diagram is not a skew shape")
    entries = {Cell(top + n, c): v for c, (top, vals) in cols.items() for n, v in enumerate(vals)}
    try:
        shape = SkewShape.from_cells(entries)
    except ValueError as exc:
        raise StructuralError(f"dual diagram is not a skew shape: {exc}") from None
    return DualResult(shape, Tableau.from_mapping(shape, entries))


# ---------------------------------------------------------------------------
# Ohno sums

def ohno_product(columns, ell: int, terms: int, cache=None) -> MzvResult:
    """Σ over compositions ℓ_1+...+ℓ_r = ℓ of Π ohno_sum_classical(column_t, ℓ_t)."""
    columns = [tuple(c) for c in columns]
    memo = {}

    def classical(t: int, e: int) -> MzvResult:
        if (t, e) not in memo:
            memo[(t, e)] = ohno_sum_classical(columns[t], e, terms, cache)
        return memo[(t, e)]

    parts, err = [], 0.0
    for split in weak_compositions(ell, len(columns)):
        prod = MzvResult(1.0, 0.0)
        for t, e in enumerate(split):
            prod = prod * classical(t, e)
        parts.append(prod.value)
        err += prod.err
    return MzvResult(math.fsum(parts), err)


def ohno_shifts(k: Tableau, ell: int) -> list[Tableau]:
    """All k + ε with ε >= 0 of total size ℓ (lex order on ε)."""
    return [k.shifted(eps) for eps in weak_compositions(ell, k.shape.size)]


def ohno_schur(k: Tableau, ell: int, method: str = "direct", bound: int = 4000, terms: int = 10**6, cache=None) -> MzvResult:
    """O(k:ℓ) = Σ_{|ε|=ℓ} ζ_δ(k+ε).

    ``method="direct"`` sums the direct evaluator over all shifts.
    ``method="rims"`` uses the signed rim expansion, where each term becomes
    an Ohno product of ribbon readings; it needs a diagonal-constant ``k``.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if not in_convergence_region(k, "W"):
        raise RegionError("tableau is outside the convergence region")
    if method == "direct":
        parts, err = [], 0.0
        for t in ohno_shifts(k, ell):
            r = zeta_schur_direct(t, bound, cache)
            parts.append(r.value)
            err += r.err
        return MzvResult(math.fsum(parts), err, {"method": "direct", "bound": bound, "shifts": len(parts)})
    if method == "rims":
        if not is_diagonal_constant(k):
            raise RegionError("the rim evaluation of Ohno sums needs a diagonal-constant tableau")
        parts, err = [], 0.0
        for d in enumerate_e_rim_decompositions(k.shape):
            readings = [r for r in (theta_reading(d, j, k) for j in range(1, len(d.ribbons) + 1)) if r]
            if not all(is_admissible(r) for r in readings):
                raise RegionError(f"ribbon reading outside the admissible range in {readings}")
            r = ohno_product(readings, ell, terms, cache)
            parts.append(d.sign * r.value)
            err += r.err
        return MzvResult(math.fsum(parts), err, {"method": "rims", "terms": terms})
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# verification reports

@dataclass
class Report:
    kind: str
    lhs: float
    rhs: float
    lhs_err: float
    rhs_err: float
    tol: float
    params: dict
    details: dict = field(default_factory=dict)
    wall_time_ms: float | None = None

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.diff <= self.tol + self.lhs_err + self.rhs_err

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhs_err": self.lhs_err,
            "rhs_err": self.rhs_err,
            "diff": self.diff,
            "tol": self.tol,
            "pass": self.passed,
            "params": self.params,
            **self.details,
        }
        if self.wall_time_ms is not None:
            out["wall_time_ms"] = self.wall_time_ms
        return out


def _evaluate_side(t: Tableau, method: str, bound: int, terms: int, cache) -> MzvResult:
    if method == "direct":
        return zeta_schur_direct(t, bound, cache)
    if method == "jt":
        from .jacobi_trudi import jt_eval

        return jt_eval(t, terms, cache)
    raise ValueError(f"unknown method {method!r}")


def verify_duality(k: Tableau, tol: float = 1e-4, method: str = "direct", bound: int = 4000, terms: int = 10**6, cache=None) -> Report:
    dual = dual_tableau(k)
    lhs = _evaluate_side(k, method, bound, terms, cache)
    rhs = _evaluate_side(dual.dual_tableau, method, bound, terms, cache)
    return Report(
        "duality", lhs.value, rhs.value, lhs.err, rhs.err, tol,
        {"method": method, "bound": bound, "terms": terms},
        {"tableau": k.to_json(), "dual": dual.to_json()},
    )


def verify_ohno(k: Tableau, ell: int, tol: float = 1e-4, method: str = "direct", bound: int = 4000, terms: int = 10**6, cache=None) -> Report:
    dual = dual_tableau(k)
    lhs = ohno_schur(k, ell, method, bound, terms, cache)
    rhs = ohno_schur(dual.dual_tableau, ell, method, bound, terms, cache)
    return Report(
        "ohno", lhs.value, rhs.value, lhs.err, rhs.err, tol,
        {"method": method, "bound": bound, "terms": terms, "ell": ell},
        {"tableau": k.to_json(), "dual": dual.to_json()},
    )


def verify_lemma31(s: Tableau, tol: float = 1e-4, bound: int = 4000, terms: int = 10**6, cache=None) -> Report:
    """Σ over the diagonal orbit (with multiplicity) of the direct sum vs the rim expansion."""
    if not in_convergence_region(s, "W_E"):
        raise RegionError("tableau is outside W_E (entries >= 1, E-cells > 1)")
    orbit = diag_orbit_multiplicities(s)
    lhs, rhs = MzvResult(0.0), MzvResult(0.0)
    expansion = []
    for t, mult in orbit.items():
        lhs = lhs + mult * zeta_schur_direct(t, bound, cache)
        rhs = rhs + mult * lemma31_rhs(t, terms, cache)
        expansion.append({"tableau": t.to_json(), "multiplicity": mult, "terms": [x.to_json() for x in rim_terms(t)]})
    return Report(
        "lemma31", lhs.value, rhs.value, lhs.err, rhs.err, tol,
        {"bound": bound, "terms": terms},
        {"tableau": s.to_json(), "expansion": expansion},
    )


# ---------------------------------------------------------------------------
# generators for sweeps and tests

def skew_shapes(max_cells: int, min_cells: int = 1):
    """Distinct skew diagrams with min_cells..max_cells cells, in normalized form."""
    from .shapes import partitions_of

    seen = set()
    for n in range(min_cells, 2 * max_cells + 1):
        for lam in partitions_of(n):
            if len(lam) > max_cells or lam.part(1) > max_cells:
                continue
            for mu in _sub_partitions(lam.parts):
                if mu and (mu[0] >= lam.part(1) or len(mu) >= len(lam)):
                    continue
                sh = SkewShape.of(lam.parts, mu)
                if not (min_cells <= sh.size <= max_cells):
                    continue
                # distinct (λ, μ) can describe the same cells; keep one canonical form
                sh = sh.normalized()
                if sh not in seen:
                    seen.add(sh)
                    yield sh


def _sub_partitions(lam: tuple[int, ...]):
    def rec(i: int, cap: int):
        if i == len(lam):
            yield ()
            return
        for x in range(min(cap, lam[i]), -1, -1):
            for rest in rec(i + 1, x):
                yield (x,) + rest

    for mu in rec(0, lam[0] if lam else 0):
        yield tuple(x for x in mu if x)


def diagonal_fillings(shape: SkewShape, max_entry: int):
    diags = sorted(shape.diagonals())
    for vals in itertools.product(range(1, max_entry + 1), repeat=len(diags)):
        a = dict(zip(diags, vals))
        yield Tableau(shape, tuple(a[c.diagonal] for c in shape.cells))


def dualizable_column_fillings(shape: SkewShape, max_entry: int):
    """Column data (as in ``tableau_columns``) of every dualizable filling with entries <= max_entry.

    A diagonal must carry at least 2 when it holds a column bottom
    (admissibility) or the cell right of a column top; all other diagonals
    range over 1..max_entry.
    """
    diags = sorted(shape.diagonals())
    spans = {c: shape.column_span(c) for c in range(1, shape.ncols + 1)}
    spans = {c: sp for c, sp in spans.items() if sp is not None}
    forced = {c - sp[1] for c, sp in spans.items()}
    forced |= {c + 1 - sp[0] for c, sp in spans.items() if Cell(sp[0], c + 1) in shape.index}
    ranges = [range(2 if d in forced else 1, max_entry + 1) for d in diags]
    for vals in itertools.product(*ranges):
        a = dict(zip(diags, vals))
        yield {c: (top, tuple(a[c - r] for r in range(top, bot + 1))) for c, (top, bot) in spans.items()}


def random_dualizable(rng: random.Random, min_cells: int, max_cells: int, max_entry: int, tries: int = 10_000) -> Tableau:
    """Rejection-sample a dualizable tableau on a random skew shape."""
    for _ in range(tries):
        nrows = rng.randint(1, max_cells)
        outer, inner = [], []
        prev_o, prev_i = max_cells, max_cells
        for _ in range(nrows):
            o = rng.randint(1, prev_o)
            i = rng.randint(0, min(prev_i, o - 1))
            outer.append(o)
            inner.append(i)
            prev_o, prev_i = o, i
        try:
            shape = SkewShape.of(outer, inner)
        except ValueError:
            continue
        if not (min_cells <= shape.size <= max_cells):
            continue
        shape = shape.normalized()
        a = {d: rng.randint(1, max_entry) for d in shape.diagonals()}
        t = Tableau(shape, tuple(a[c.diagonal] for c in shape.cells))
        if is_dualizable(t):
            return t
    raise RuntimeError("no dualizable tableau found; relax the constraints")
