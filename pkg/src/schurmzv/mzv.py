"""Classical multiple zeta values ζ(k1, ..., kr) = Σ_{0<m1<...<mr} Π m_i^{-k_i}.

Values are computed by a prefix-sum dynamic program truncated at an outer
bound ``M`` and then extrapolated to ``M -> ∞`` by fitting the known
asymptotic shape of the tail.  Admissible pieces, the dual index and the
classical Ohno sum live here as well.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

METHOD = "dp_tail"
DEFAULT_TERMS = 10**6
# below this bound the tail fit has too few well separated samples
MIN_FIT_TERMS = 256
_EPS = np.finfo(float).eps


class NotAdmissibleError(ValueError):
    """Raised for non-admissible or malformed indices."""


@dataclass(frozen=True)
class MzvResult:
    """Numeric approximation ``value`` with absolute error estimate ``err``."""

    value: float
    err: float = 0.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite value {self.value}")
        if not self.err >= 0:
            raise ValueError(f"error must be nonnegative, got {self.err}")

    def __add__(self, other: MzvResult) -> MzvResult:
        return MzvResult(self.value + other.value, self.err + other.err)

    def __sub__(self, other: MzvResult) -> MzvResult:
        return MzvResult(self.value - other.value, self.err + other.err)

    def __mul__(self, other):
        if isinstance(other, MzvResult):
            err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
            return MzvResult(self.value * other.value, err)
        return MzvResult(self.value * other, self.err * abs(other))

    __rmul__ = __mul__

    def __neg__(self) -> MzvResult:
        return MzvResult(-self.value, self.err)

    def to_json(self) -> dict:
        return {"value": self.value, "err": self.err, **({"meta": self.meta} if self.meta else {})}

    @staticmethod
    def total(results: Iterable[MzvResult]) -> MzvResult:
        value = err = 0.0
        for r in results:
            value += r.value
            err += r.err
        return MzvResult(value, err)


ONE = MzvResult(1.0, 0.0)
ZERO = MzvResult(0.0, 0.0)


@dataclass(frozen=True)
class AdmissiblePiece:
    """``A(a, b)``, the index ``(1^{a-1}, b+1)``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"piece arguments must be positive: A({self.a},{self.b})")

    def expand(self) -> tuple[int, ...]:
        return (1,) * (self.a - 1) + (self.b + 1,)

    @property
    def weight(self) -> int:
        return self.a + self.b

    def dagger(self) -> AdmissiblePiece:
        return AdmissiblePiece(self.b, self.a)

    def __str__(self) -> str:
        return f"A({self.a},{self.b})"


def check_index(k: Sequence[int], admissible: bool = True) -> tuple[int, ...]:
    k = tuple(k)
    if any(not isinstance(x, (int, np.integer)) or isinstance(x, bool) for x in k):
        raise NotAdmissibleError(f"index entries must be integers: {k}")
    k = tuple(int(x) for x in k)
    if any(x < 1 for x in k):
        raise NotAdmissibleError(f"index entries must be positive: {k}")
    if admissible and k and k[-1] < 2:
        raise NotAdmissibleError(f"index {k} is not admissible (last entry must be at least 2)")
    return k


def is_admissible(k: Sequence[int]) -> bool:
    return bool(k) and all(x >= 1 for x in k) and k[-1] >= 2


def decompose_pieces(k: Sequence[int]) -> list[AdmissiblePiece]:
    k = check_index(k)
    pieces, ones = [], 0
    for x in k:
        if x == 1:
            ones += 1
        else:
            pieces.append(AdmissiblePiece(ones + 1, x - 1))
            ones = 0
    return pieces


def expand(pieces: Iterable[AdmissiblePiece]) -> tuple[int, ...]:
    return tuple(x for p in pieces for x in p.expand())


def dual_index(k: Sequence[int]) -> tuple[int, ...]:
    """Reverse the piece list and swap the arguments of every piece."""
    return expand(p.dagger() for p in reversed(decompose_pieces(k)))


def admissible_indices(weight: int) -> Iterator[tuple[int, ...]]:
    """All admissible indices of the given weight (compositions ending in >= 2)."""
    for comp in compositions(weight):
        if comp[-1] >= 2:
            yield comp


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` nonnegative integers summing to ``total`` (lex order)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# numerics

@lru_cache(maxsize=16)
def _powers(s: int, M: int) -> np.ndarray:
    m = np.arange(1, M + 1, dtype=np.float64)
    out = m ** (-float(s))
    out.setflags(write=False)
    return out


def partial_sums(k: Sequence[int], M: int) -> np.ndarray:
    """``S[m-1] = Σ_{m1<...<mr<=m} Π m_i^{-k_i}`` for ``m = 1..M``."""
    k = check_index(k, admissible=False)
    if not k:
        return np.ones(M)
    acc = None
    for s in k:
        term = _powers(s, M)
        if acc is not None:
            inner = np.empty(M)
            inner[0] = 0.0
            np.cumsum(acc[:-1], out=inner[1:])
            term = term * inner
        acc = term
    return np.cumsum(acc)


def _ones_before_last(k: tuple[int, ...]) -> int:
    n = 0
    for x in reversed(k[:-1]):
        if x != 1:
            break
        n += 1
    return n


def _fit_limit(S: np.ndarray, kr: int, end: int, P: int, Q: int) -> float:
    """Least-squares limit of S(m) ~ V - Σ c_p m^{1-kr} log^p m - Σ e_p m^{-kr} log^p m."""
    npts = P + Q + 5
    # fit on [end/span, end]; steep tails get a narrower window so the basis
    # stays within about six orders of magnitude
    span = min(16.0, 1e6 ** (1 / kr))
    ratio = (1 / span) ** (1 / (npts - 1))
    ms = sorted({max(1, int(round(end * ratio**i))) for i in range(npts)})
    L = math.log(end)
    rows = []
    for m in ms:
        x, lm = m / end, math.log(m) / L
        row = [1.0]
        row += [x ** (1 - kr) * lm**p for p in range(P + 1)]
        row += [x ** (-kr) / end * lm**p for p in range(Q + 1)]
        rows.append(row)
    sol, *_ = np.linalg.lstsq(np.array(rows), S[np.array(ms) - 1], rcond=None)
    return float(sol[0])


def _evaluate(k: tuple[int, ...], M: int) -> tuple[float, float, float]:
    """(extrapolated value, error estimate, raw partial sum at M)."""
    S = partial_sums(k, M)
    partial = float(S[-1])
    if M < MIN_FIT_TERMS:
        half = float(S[M // 2 - 1]) if M >= 2 else 0.0
        return partial, float(2.0 * (partial - half)), partial
    # log powers: P for the leading m^{1-kr} tail; 1-runs deeper in the index
    # feed log powers into the next order, so that group gets one per 1 plus one
    kr, P = k[-1], _ones_before_last(k)
    Q = k.count(1) + 1
    V = _fit_limit(S, kr, M, P, Q)
    alt_end = _fit_limit(S, kr, M // 2, P, Q)
    alt_basis = _fit_limit(S, kr, M, P, Q + 1)
    err = 4.0 * max(abs(V - alt_end), abs(V - alt_basis))
    err += 1e-6 * abs(V - partial) + len(k) * math.sqrt(M) * _EPS * (abs(V) + 1.0)
    return V, float(err), partial


@lru_cache(maxsize=None)
def _zeta_memo(k: tuple[int, ...], M: int) -> tuple[float, float, float]:
    return _evaluate(k, M)


def zeta_mzv(k: Sequence[int], terms: int = DEFAULT_TERMS, cache=None) -> MzvResult:
    """ζ(k) for an admissible index ``k``; ``terms`` is the outer truncation bound.

    ``meta["partial"]`` holds the raw truncated sum over ``m_r <= terms``.
    """
    k = check_index(k)
    if not k:
        return MzvResult(1.0, 0.0, {"method": "exact"})
    if terms < 1:
        raise ValueError("terms must be at least 1")
    if cache is not None:
        hit = cache.get(k, terms)
        if hit is not None:
            return hit
    value, err, partial = _zeta_memo(k, int(terms))
    res = MzvResult(value, err, {"method": METHOD, "M": int(terms), "partial": partial})
    if cache is not None:
        cache.put(k, terms, res)
    return res


def ohno_sum_classical(k: Sequence[int], ell: int, terms: int = DEFAULT_TERMS, cache=None) -> MzvResult:
    """Σ_{|ε|=ℓ} ζ(k + ε) over weak compositions ε of ℓ into depth(k) parts."""
    k = check_index(k)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return MzvResult.total(
        zeta_mzv(tuple(a + e for a, e in zip(k, eps)), terms, cache) for eps in weak_compositions(ell, len(k))
    )
