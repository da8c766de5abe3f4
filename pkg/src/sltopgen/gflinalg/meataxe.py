"""Irreducibility of matrix modules by the Holt-Rees form of the MeatAxe.

Matrices act on column vectors.  A proper invariant subspace is returned as a
row-echelon basis.  Irreducibility is certified by Norton's criterion: for an
algebra element theta and an irreducible factor g of its characteristic
polynomial, the module is irreducible iff every nonzero vector of ker g(theta)
spins to the whole space and some nonzero vector of ker g(theta)^T spins to
the whole space under the transposed generators.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import SpecError
from .field import FieldSpec
from .matrix import FieldMatrix, kernel_basis, matmul, matvec, rank, row_reduce
from .polynomial import factor_poly

# exhaustive Norton check over a kernel of at most this many points
KERNEL_SCAN_LIMIT = 4096


class Irreducibility(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IrreducibilityResult:
    status: Irreducibility
    subspace: np.ndarray | None = None  # echelon basis rows of an invariant subspace

    @property
    def irreducible(self) -> bool:
        return self.status is Irreducibility.IRREDUCIBLE

    @property
    def reducible(self) -> bool:
        return self.status is Irreducibility.REDUCIBLE


class _Echelon:
    """Incrementally maintained echelon basis of a subspace of F^n."""

    def __init__(self, F: FieldSpec, n: int):
        self.F = F
        self.n = n
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v):
        F = self.F
        v = np.array(v, dtype=np.int64, copy=True)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = F.vsub(v, F.vmul(row, int(v[c])))
        return v

    def add(self, v):
        """Insert v; return the reduced vector if it enlarged the space, else None."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return None
        c = int(nz[0])
        v = self.F.vmul(v, self.F.inv(int(v[c])))
        self.rows.append(v)
        self.pivots.append(c)
        return v

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        if not self.rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return row_reduce(self.F, np.array(self.rows))[0]


def spin(F: FieldSpec, gens: list[np.ndarray], vectors) -> np.ndarray:
    """Echelon basis of the smallest subspace containing ``vectors`` and invariant under ``gens``."""
    n = gens[0].shape[0]
    ech = _Echelon(F, n)
    queue = [w for w in (ech.add(v) for v in vectors) if w is not None]
    while queue and ech.dim < n:
        u = queue.pop()
        for g in gens:
            w = ech.add(matvec(F, g, u))
            if w is not None:
                queue.append(w)
    return ech.basis()


def _projective_points(F: FieldSpec, basis: np.ndarray):
    """One nonzero vector per line of the row space of ``basis``."""
    d = basis.shape[0]
    for lead in range(d):
        for tail in itertools.product(range(F.q), repeat=d - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            v = np.zeros(basis.shape[1], dtype=np.int64)
            for c, row in zip(coeffs, basis):
                if c:
                    v = F.vadd(v, F.vmul(row, c))
            yield v


def _random_algebra_element(F, gens, rng, words=4, length=3):
    n = gens[0].shape[0]
    theta = np.zeros((n, n), dtype=np.int64)
    pool = list(gens)
    for _ in range(words):
        w = pool[rng.integers(len(pool))]
        for _ in range(int(rng.integers(1, length + 1))):
            w = matmul(F, w, gens[rng.integers(len(gens))])
        pool.append(w)
    for m in pool:
        c = int(rng.integers(0, F.q))
        if c:
            theta = F.vadd(theta, F.vmul(m, c))
    return theta


def _dual_complement(F: FieldSpec, w_basis: np.ndarray) -> np.ndarray:
    """Annihilator of a subspace: invariant under gens when w_basis is invariant under gens^T."""
    return row_reduce(F, kernel_basis(F, w_basis))[0]


def irreducibility_test(generators, rng: np.random.Generator, max_tries: int = 64) -> IrreducibilityResult:
    """Decide whether the generators act irreducibly on F^n."""
    if not generators:
        raise SpecError("need at least one generator")
    F = generators[0].field
    if any(g.field != F for g in generators):
        raise SpecError("generators must share a field")
    n = generators[0].n
    gens = [g.data for g in generators]
    gens_t = [g.T.copy() for g in gens]
    if n == 1:
        return IrreducibilityResult(Irreducibility.IRREDUCIBLE)
    for _ in range(max_tries):
        theta = FieldMatrix._wrap(F, _random_algebra_element(F, gens, rng))
        for g, _mult in factor_poly(theta.char_poly(), rng):
            if g.degree < 1:
                continue
            N = theta.evaluate(g).data
            ker = kernel_basis(F, N)
            nullity = ker.shape[0]
            exhaustive = nullity == g.degree or F.q ** nullity <= KERNEL_SCAN_LIMIT
            if not exhaustive:
                continue
            candidates = [ker[0]] if nullity == g.degree else _projective_points(F, ker)
            for v in candidates:
                sub = spin(F, gens, [v])
                if sub.shape[0] < n:
                    return IrreducibilityResult(Irreducibility.REDUCIBLE, sub)
            w = kernel_basis(F, N.T)[0]
            sub_t = spin(F, gens_t, [w])
            if sub_t.shape[0] < n:
                return IrreducibilityResult(Irreducibility.REDUCIBLE, _dual_complement(F, sub_t))
            return IrreducibilityResult(Irreducibility.IRREDUCIBLE)
    return IrreducibilityResult(Irreducibility.INCONCLUSIVE)


def is_invariant(F: FieldSpec, generators, basis: np.ndarray) -> bool:
    r = rank(F, basis)
    for g in generators:
        images = matmul(F, g.data, basis.T).T
        if rank(F, np.vstack([basis, images])) != r:
            return False
    return True


def endomorphism_dimension(generators) -> int:
    """dim_F of the matrices commuting with every generator.

    Equal to 1 exactly when an irreducible module is absolutely irreducible.
    """
    F = generators[0].field
    n = generators[0].n
    eye = np.eye(n, dtype=np.int64)
    blocks = []
    for g in generators:
        # vec(G X - X G) = (I (x) G - G^T (x) I) vec(X) for column-stacked vec
        left = np.kron(eye, g.data)
        right = np.kron(g.data.T, eye)
        blocks.append(F.vsub(left, right))
    system = np.vstack(blocks)
    return n * n - rank(F, system)


def is_absolutely_irreducible(generators, rng: np.random.Generator, max_tries: int = 64) -> IrreducibilityResult:
    """Like :func:`irreducibility_test`, but an irreducible module with a larger
    endomorphism field is reported as reducible (it splits over the closure).
    The subspace is then None."""
    res = irreducibility_test(generators, rng, max_tries)
    if res.irreducible and endomorphism_dimension(generators) > 1:
        return IrreducibilityResult(Irreducibility.REDUCIBLE)
    return res
