"""Brute-force subgroup closure and conjugacy-class enumeration in tiny SL_n(q)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError, ResourceLimitError, SpecError
from ..gflinalg.field import FieldSpec
from ..gflinalg.matrix import FieldMatrix, matmul

DEFAULT_CLOSURE_CAP = 10 ** 7


def special_linear_order(n: int, q: int) -> int:
    """|SL_n(q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if q < 2:
        raise PreconditionError("q must be a prime power")
    return q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(2, n + 1))


def transvection_generators(n: int, F: FieldSpec) -> list[FieldMatrix]:
    """I + a E_{i,i+1} and I + a E_{i+1,i} for a in the power basis of F over GF(p).

    Their commutators give every elementary transvection, so they generate SL_n(q).
    """
    out = []
    for i in range(n - 1):
        for t in range(F.k):
            a = F.p ** t
            for (r, c) in ((i, i + 1), (i + 1, i)):
                m = np.eye(n, dtype=np.int64)
                m[r, c] = a
                out.append(FieldMatrix._wrap(F, m))
    return out


class ClosureStatus(str, enum.Enum):
    COMPLETE = "complete"
    FULL_BY_INDEX = "full_by_index"
    CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class ClosureResult:
    status: ClosureStatus
    order: int | None

    @property
    def exact(self) -> bool:
        return self.order is not None


class _KeyStore:
    """Set of matrices keyed by base-q digit integers, vectorized when keys fit in int64."""

    def __init__(self, F: FieldSpec, n: int):
        self.F = F
        self.n = n
        self.vectorized = F.q ** (n * n) < (1 << 62)
        if self.vectorized:
            self.powers = np.array([F.q ** i for i in range(n * n - 1, -1, -1)], dtype=np.int64)
            self.seen = np.zeros(0, dtype=np.int64)
        else:
            self.seen_set: set[bytes] = set()

    def __len__(self):
        return len(self.seen) if self.vectorized else len(self.seen_set)

    def add_new(self, mats: np.ndarray) -> np.ndarray:
        """Insert a batch; return the rows not seen before, deduplicated."""
        if not len(mats):
            return mats
        flat = mats.reshape(len(mats), -1)
        if self.vectorized:
            keys = flat @ self.powers
            keys, idx = np.unique(keys, return_index=True)
            fresh = ~np.isin(keys, self.seen, assume_unique=True)
            self.seen = np.union1d(self.seen, keys[fresh])
            return mats[idx[fresh]]
        keep = []
        for i, row in enumerate(flat):
            b = row.tobytes()
            if b not in self.seen_set:
                self.seen_set.add(b)
                keep.append(i)
        return mats[keep]


def bfs_group_closure(generators, cap: int = DEFAULT_CLOSURE_CAP, ambient_order: int | None = None) -> ClosureResult:
    """Order of the group generated by invertible matrices, by breadth-first search.

    With ``ambient_order`` = |G| for a group G containing the generators, the
    search stops once more than |G|/2 elements are found: by Lagrange the
    subgroup is then G itself.
    """
    if not generators:
        raise SpecError("need at least one generator")
    F = generators[0].field
    n = generators[0].n
    if any(g.field != F or g.n != n for g in generators):
        raise SpecError("generators must share a field and size")
    gens = [g.data for g in generators]
    store = _KeyStore(F, n)
    frontier = store.add_new(np.eye(n, dtype=np.int64)[None])
    while len(frontier):
        if len(store) > cap:
            return ClosureResult(ClosureStatus.CAP_EXCEEDED, None)
        if ambient_order is not None and 2 * len(store) > ambient_order:
            return ClosureResult(ClosureStatus.FULL_BY_INDEX, ambient_order)
        products = np.concatenate([matmul(F, frontier, g) for g in gens])
        frontier = store.add_new(products)
    if len(store) > cap:
        return ClosureResult(ClosureStatus.CAP_EXCEEDED, None)
    return ClosureResult(ClosureStatus.COMPLETE, len(store))


def conjugacy_class(x: FieldMatrix, cap: int = DEFAULT_CLOSURE_CAP) -> list[FieldMatrix]:
    """All SL_n(q)-conjugates of x, via the orbit under the transvection generators."""
    F, n = x.field, x.n
    gens = transvection_generators(n, F)
    pairs = [(g.data, g.inverse().data) for g in gens]
    store = _KeyStore(F, n)
    frontier = store.add_new(x.data[None].copy())
    while len(frontier):
        if len(store) > cap:
            raise ResourceLimitError(f"conjugacy class exceeds cap {cap}")
        images = [matmul(F, matmul(F, g, frontier), g_inv) for g, g_inv in pairs]
        frontier = store.add_new(np.concatenate(images))
    mats = _all_members(store, F, n)
    return [FieldMatrix._wrap(F, m) for m in mats]


def _all_members(store: _KeyStore, F: FieldSpec, n: int) -> np.ndarray:
    if store.vectorized:
        keys = store.seen.copy()
        digits = np.empty((len(keys), n * n), dtype=np.int64)
        for i in range(n * n - 1, -1, -1):
            digits[:, i] = keys % F.q
            keys //= F.q
        return digits.reshape(-1, n, n)
    rows = sorted(store.seen_set)
    return np.array([np.frombuffer(b, dtype=np.int64).reshape(n, n) for b in rows])


def generates_special_linear(generators, cap: int = DEFAULT_CLOSURE_CAP) -> ClosureResult:
    """Closure inside SL_n(q) with the index shortcut; status says whether the order is known."""
    F, n = generators[0].field, generators[0].n
    order = special_linear_order(n, F.q)
    return bfs_group_closure(generators, cap=cap, ambient_order=order)
