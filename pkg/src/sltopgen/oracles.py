"""Self-checks run by ``sltopgen verify-oracles``.

Each check compares a closed formula or fast routine against an independent
computation (elimination over a finite field, brute-force closure, exhaustive
subspace search) at small sizes and reports pass/fail with a short detail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .classdata import (
    ClassTuple,
    centralizer_dimension,
    enumerate_shapes,
    gamma,
    generation_criterion,
    min_generators,
    restrict_tuple,
)
from .gflinalg.elements import random_conjugate, representative_matrix
from .gflinalg.field import FieldSpec, field_create, prime_field
from .gflinalg.matrix import FieldMatrix, block_diagonal, jordan_block, rank
from .gflinalg.meataxe import irreducibility_test, is_invariant
from .gflinalg.polynomial import Poly, expand, factor_poly
from .genexp.groups import bfs_group_closure, special_linear_order, transvection_generators
from .genexp.probability import exact_generation_probability
from .obstructions import parabolic_obstruction
from .stabbounds import threshold_check


@dataclass(frozen=True)
class OracleResult:
    name: str
    passed: bool
    detail: str


def jordan_realization(spec, F: FieldSpec) -> np.ndarray:
    """Jordan matrix with labels mapped to 0, 1, 2, ... in label order (no determinant condition)."""
    blocks = []
    for value, (_, parts) in enumerate(spec.profile.entries):
        blocks.extend(jordan_block(F, b, value) for b in parts)
    return block_diagonal(blocks)


def commutant_nullity(x: np.ndarray, F: FieldSpec, trace_zero: bool) -> int:
    """dim of {Y : xY = Yx}, optionally intersected with the trace-zero matrices."""
    n = x.shape[0]
    eye = np.eye(n, dtype=np.int64)
    system = F.vsub(np.kron(eye, x), np.kron(x.T, eye))
    if trace_zero:
        system = np.vstack([system, eye.reshape(1, -1)])
    return n * n - rank(F, system)


def _centralizer_check() -> OracleResult:
    F = prime_field(5)
    bad = []
    for n in range(2, 6):
        for spec in enumerate_shapes(n):
            x = jordan_realization(spec, F)
            if commutant_nullity(x, F, trace_zero=False) - 1 != centralizer_dimension(spec):
                bad.append(str(spec))
    return OracleResult("centralizer formula vs commutant over GF(5), n <= 5", not bad, f"mismatches: {bad}")


def _gamma_check() -> OracleResult:
    F = prime_field(7)
    bad = []
    for n in range(2, 6):
        for spec in enumerate_shapes(n):
            x = jordan_realization(spec, F)
            for value, (label, parts) in enumerate(spec.profile.entries):
                shifted = x.copy()
                idx = np.arange(n)
                shifted[idx, idx] = F.vsub(shifted[idx, idx], value)
                if n - rank(F, shifted) != len(parts):
                    bad.append((str(spec), label))
    return OracleResult("eigenspace dimension = block count, n <= 5", not bad, f"mismatches: {bad}")


def _tuples(n_max: int, e_max: int):
    for n in range(3, n_max + 1):
        shapes = enumerate_shapes(n)
        for e in range(1, e_max + 1):
            for combo in itertools.combinations_with_replacement(shapes, e):
                yield ClassTuple(combo)


def _parabolic_check() -> OracleResult:
    bad = 0
    total = 0
    for t in _tuples(7, 3):
        total += 1
        verdict = generation_criterion(t)
        if parabolic_obstruction(t) != (verdict.outcome.value == "EigenspaceObstruction"):
            bad += 1
    return OracleResult("fixed-line obstruction <=> eigenspace obstruction, n <= 7, e <= 3", bad == 0, f"{bad} of {total}")


def _restriction_check() -> OracleResult:
    bad = 0
    total = 0
    for t in _tuples(6, 3):
        if t.n < 4 or not generation_criterion(t).generating:
            continue
        total += 1
        r = restrict_tuple(t)
        if sum(gamma(c) for c in r) > (r.n) * (r.e - 1):
            bad += 1
    return OracleResult("restriction keeps sum of gamma <= (n-1)(e-1), n <= 6, e <= 3", bad == 0, f"{bad} of {total}")


def _min_generators_check() -> OracleResult:
    bad = []
    for n in range(3, 9):
        for spec in enumerate_shapes(n):
            d = min_generators(spec)
            for e in range(2, n + 1):
                gen = generation_criterion(ClassTuple((spec,) * e)).generating
                if gen != (e >= d):
                    bad.append((str(spec), e))
    return OracleResult("criterion on e copies <=> e >= min_generators, n <= 8", not bad, f"mismatches: {bad[:5]}")


def _threshold_check() -> OracleResult:
    bad = [n for n in range(3, 41) if not threshold_check(n)]
    return OracleResult("alpha upper bound <= 9/4 n^2, 3 <= n <= 40", not bad, f"failing n: {bad}")


def _charpoly_check() -> OracleResult:
    rng = np.random.default_rng(11)
    bad = 0
    for q in (2, 3, 4, 5, 7):
        F = field_create(*((2, 2) if q == 4 else (q, 1)))
        for n in (2, 3, 4):
            for _ in range(10):
                x = FieldMatrix(F, rng.integers(0, F.q, size=(n, n)))
                if random_conjugate(x, rng).char_poly() != x.char_poly():
                    bad += 1
                if x.evaluate(x.char_poly()).data.any():
                    bad += 1
    return OracleResult("char poly is a similarity invariant and annihilates its matrix", bad == 0, f"{bad} failures")


def _factor_check() -> OracleResult:
    rng = np.random.default_rng(12)
    bad = 0
    for p, k in ((2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)):
        F = field_create(p, k)
        for i in range(40):
            deg = int(rng.integers(1, 9))
            f = Poly(F, [int(c) for c in rng.integers(0, F.q, size=deg + 1)])
            if f.is_zero():
                continue
            if expand(factor_poly(f, seed=i), F) != f:
                bad += 1
    return OracleResult("factorization multiplies back", bad == 0, f"{bad} failures")


def _exhaustive_reducible(F: FieldSpec, gens, n: int) -> bool:
    vectors = [np.array(v) for v in itertools.product(range(F.q), repeat=n) if any(v)]
    for d in range(1, n):
        for combo in itertools.combinations(vectors, d):
            basis = np.array(combo)
            if rank(F, basis) == d and is_invariant(F, gens, basis):
                return True
    return False


def _meataxe_check() -> OracleResult:
    rng = np.random.default_rng(13)
    bad = 0
    for (p, k, n) in ((2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)):
        F = field_create(p, k)
        for _ in range(25):
            gens = [FieldMatrix(F, rng.integers(0, F.q, size=(n, n))) for _ in range(int(rng.integers(1, 3)))]
            res = irreducibility_test(gens, rng)
            if res.reducible != _exhaustive_reducible(F, gens, n):
                bad += 1
    return OracleResult("MeatAxe agrees with exhaustive subspace search", bad == 0, f"{bad} disagreements")


def _closure_check() -> OracleResult:
    bad = []
    for n, q in ((2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)):
        F = field_create(*((2, 2) if q == 4 else (q, 1)))
        res = bfs_group_closure(transvection_generators(n, F))
        if res.order != special_linear_order(n, q):
            bad.append((n, q, res.order))
    return OracleResult("closure of transvections has order |SL_n(q)|", not bad, f"mismatches: {bad}")


def _sl23_check() -> OracleResult:
    F = prime_field(3)
    order4 = FieldMatrix(F, [[0, 1], [2, 0]])
    order3 = FieldMatrix(F, [[1, 1], [0, 1]])
    got = (
        exact_generation_probability(order4, order3),
        exact_generation_probability(order4, order4),
        exact_generation_probability(order3, order3),
    )
    ok = got[0] == 1 and got[1] == 0 and 0 < got[2] < 1
    return OracleResult("SL_2(3) exact generation table", ok, f"values {[str(Fraction(v)) for v in got]}")


CHECKS: list[Callable[[], OracleResult]] = [
    _centralizer_check,
    _gamma_check,
    _parabolic_check,
    _restriction_check,
    _min_generators_check,
    _threshold_check,
    _charpoly_check,
    _factor_check,
    _meataxe_check,
    _closure_check,
    _sl23_check,
]


def run_all() -> list[OracleResult]:
    return [check() for check in CHECKS]
