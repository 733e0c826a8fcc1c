"""Jacobi–Trudi determinant for diagonal-constant tableaux.

For ``s`` constant on diagonals write ``a_d`` for the entry on diagonal ``d``.
Entry ``(i, j)`` of the ``s × s`` matrix (``s`` = number of columns) is
ζ(a_{j-1-μ'_j}, a_{j-2-μ'_j}, ..., a_{i-λ'_i}), an index of length
``L = λ'_i - μ'_j - i + j``.  ``L = 0`` gives 1; ``L < 0`` or a diagonal
missing from the shape gives 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .mzv import MzvResult
from .rims import SignedProduct, evaluate_terms, permutation_sign
from .ssyt import RegionError
from .tableaux import Tableau, in_convergence_region, is_diagonal_constant


@dataclass(frozen=True)
class JtEntry:
    kind: str  # "one", "zero" or "index"
    index: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "index":
            return "ζ(" + ",".join(map(str, self.index)) + ")"
        return "1" if self.kind == "one" else "0"

    def to_json(self):
        return list(self.index) if self.kind == "index" else (1 if self.kind == "one" else 0)


ONE = JtEntry("one")
ZERO = JtEntry("zero")


def Index(*parts: int) -> JtEntry:
    if not parts:
        raise ValueError("an index entry needs at least one part")
    return JtEntry("index", tuple(parts))


def jt_matrix(s: Tableau) -> list[list[JtEntry]]:
    if not is_diagonal_constant(s):
        raise RegionError("Jacobi–Trudi needs a diagonal-constant tableau")
    sh = s.shape
    a = s.diagonal_values()
    n = sh.ncols
    lam_c, mu_c = sh.outer_conj, sh.inner_conj
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            length = lam_c.part(i) - mu_c.part(j) - i + j
            if length < 0:
                row.append(ZERO)
            elif length == 0:
                row.append(ONE)
            else:
                diags = [j - 1 - mu_c.part(j) - t for t in range(length)]
                row.append(Index(*(a[d] for d in diags)) if all(d in a for d in diags) else ZERO)
        rows.append(row)
    return rows


def determinant_symbolic(m: list[list[JtEntry]]) -> list[SignedProduct]:
    """Leibniz expansion; terms with a zero factor are dropped and ones omitted."""
    n = len(m)
    terms = []
    for perm in itertools.permutations(range(n)):
        entries = [m[i][perm[i]] for i in range(n)]
        if any(e.kind == "zero" for e in entries):
            continue
        sign = permutation_sign(tuple(p + 1 for p in perm))
        terms.append(SignedProduct(sign, tuple(e.index for e in entries if e.kind == "index")))
    return terms


def jt_eval(s: Tableau, terms: int, cache=None) -> MzvResult:
    if s.shape.size == 0:
        return MzvResult(1.0, 0.0, {"method": "jt"})
    if not in_convergence_region(s, "W_JT"):
        raise RegionError("tableau is outside W_JT (diagonal-constant, entries >= 1, column bottoms and corners > 1)")
    expansion = determinant_symbolic(jt_matrix(s))
    res = evaluate_terms(expansion, terms, cache)
    return MzvResult(res.value, res.err, {"method": "jt", "terms": terms, "products": len(expansion)})
