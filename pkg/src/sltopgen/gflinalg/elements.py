"""Concrete group elements: class representatives, random sampling, orders."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Mapping

import numpy as np
from sympy import factorint

from ..classdata import ClassSpec
from ..errors import DeterminantError, PreconditionError, ResourceLimitError, SpecError
from .field import MAX_EXTENSION_DEGREE, FieldSpec, extension_field
from .matrix import FieldMatrix, block_diagonal, jordan_block
from .polynomial import Poly, factor_poly, gcd, roots

VALUE_SEARCH_CAP = 1_000_000


def _value_codes(spec: ClassSpec, F: FieldSpec, values: Mapping | None) -> dict[str, int]:
    raw = spec.values_map() if values is None else dict(values)
    if set(raw) != set(spec.profile.labels):
        raise SpecError(f"values must cover exactly the labels {spec.profile.labels}")
    out = {}
    for label, v in raw.items():
        out[label] = F.parse(v) if isinstance(v, str) else F.coerce(v)
    if len(set(out.values())) != len(out):
        raise SpecError(f"distinct labels must get distinct values, got {out}")
    if 0 in out.values():
        raise SpecError("eigenvalue 0 is not allowed in SL_n")
    return out


def _nth_root(F: FieldSpec, a: int, n: int) -> int | None:
    if F.q > 1 << 16:
        return None
    return next((c for c in range(1, F.q) if F.pow(c, n) == a), None)


def representative_matrix(spec: ClassSpec, F: FieldSpec, values: Mapping | None = None) -> FieldMatrix:
    """Block-diagonal Jordan form for the class, with the given eigenvalues.

    ``values`` overrides the class's own ``concrete_values``.  Raises
    :class:`DeterminantError` when the product of eigenvalues is not 1; the
    error carries ``det`` and, when one exists in F, a scalar c with c^n = det
    so that dividing every eigenvalue by c repairs the determinant.
    """
    codes = _value_codes(spec, F, values)
    det = 1
    blocks = []
    for label, parts in spec.profile.entries:
        lam = codes[label]
        det = F.mul(det, F.pow(lam, sum(parts)))
        blocks.extend(jordan_block(F, b, lam) for b in parts)
    if det != 1:
        c = _nth_root(F, det, spec.n)
        hint = "" if c is None else f"; divide every eigenvalue by {F.format(c)} (its {spec.n}-th power is the determinant)"
        raise DeterminantError(f"eigenvalues of {spec} give determinant {F.format(det)}{hint}", det=det, scalar=c)
    return FieldMatrix(F, block_diagonal(blocks))


def assign_values(spec: ClassSpec, F: FieldSpec, cap: int = VALUE_SEARCH_CAP) -> dict[str, int] | None:
    """First distinct nonzero eigenvalue assignment with determinant one, or None.

    Candidates run through ordered selections of F* in lexicographic order of
    codes, so the answer is deterministic.
    """
    labels = spec.profile.labels
    sizes = [sum(spec.profile.blocks(lab)) for lab in labels]
    for tried, choice in enumerate(itertools.permutations(range(1, F.q), len(labels))):
        if tried >= cap:
            raise ResourceLimitError(f"eigenvalue search for {spec} over {F} exceeded {cap} candidates")
        det = 1
        for lam, m in zip(choice, sizes):
            det = F.mul(det, F.pow(lam, m))
        if det == 1:
            return dict(zip(labels, choice))
    return None


def realize(spec: ClassSpec, F: FieldSpec) -> FieldMatrix:
    """Representative using the class's own values when present, else a searched assignment."""
    if spec.concrete_values is not None:
        return representative_matrix(spec, F)
    values = assign_values(spec, F)
    if values is None:
        raise DeterminantError(f"no determinant-one eigenvalue assignment for {spec} over {F}")
    return representative_matrix(spec, F, values)


def random_matrix(n: int, F: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, F.q, size=(n, n), dtype=np.int64)


def random_special_linear(n: int, F: FieldSpec, rng: np.random.Generator) -> FieldMatrix:
    """Uniform element of SL_n(q).

    Draw uniform invertible matrices by rejection, then divide the first row
    by the determinant.  Scaling the first row by c is a bijection from the
    matrices of determinant d onto those of determinant c*d, so every fibre of
    det has the same size and the result is uniform on SL_n(q).
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    while True:
        m = FieldMatrix._wrap(F, random_matrix(n, F, rng))
        d = m.determinant()
        if d:
            break
    data = m.data.copy()
    data[0] = F.vmul(data[0], F.inv(d))
    return FieldMatrix._wrap(F, data)


def random_conjugate(x: FieldMatrix, rng: np.random.Generator) -> FieldMatrix:
    g = random_special_linear(x.n, x.field, rng)
    return g @ x @ g.inverse()


@lru_cache(maxsize=None)
def _exponent_factors(n: int, p: int, k: int) -> dict[int, int]:
    """Prime factorization of an exponent of GL_n(p^k)."""
    q = p ** k
    a = 0
    while p ** a < n:
        a += 1
    out: dict[int, int] = {p: a}
    for i in range(1, n + 1):
        for r, e in factorint(q ** i - 1).items():
            out[int(r)] = max(out.get(int(r), 0), int(e))
    return {r: e for r, e in out.items() if e}


def group_exponent(n: int, F: FieldSpec) -> int:
    return math.prod(r ** e for r, e in _exponent_factors(n, F.p, F.k).items())


def element_order(x: FieldMatrix, cap: int | None = None) -> int:
    """Least t >= 1 with x^t = I.

    Starts from an exponent of GL_n(q) and strips prime factors while the
    power stays trivial.  Raises :class:`ResourceLimitError` when the order
    exceeds ``cap``.
    """
    factors = _exponent_factors(x.n, x.field.p, x.field.k)
    t = math.prod(r ** e for r, e in factors.items())
    if not (x ** t).is_identity():
        raise PreconditionError("matrix is not invertible")
    for r in factors:
        while t % r == 0 and (x ** (t // r)).is_identity():
            t //= r
    if cap is not None and t > cap:
        raise ResourceLimitError(f"element order {t} exceeds cap {cap}")
    return t


def embedding(F: FieldSpec, E: FieldSpec):
    """A field embedding F -> E as a function on codes."""
    if F.p != E.p or E.k % F.k:
        raise PreconditionError(f"{F} does not embed in {E}")
    if F.k == 1:
        return lambda a: a
    rho = roots(Poly(E, F.modulus))[0]
    powers = [E.pow(rho, i) for i in range(F.k)]

    def image(a: int) -> int:
        acc = 0
        for c, r in zip(F.digits(a), powers):
            if c:
                acc = E.add(acc, E.mul(c, r))
        return acc

    return image


def eigenvalues_in_splitting_field(x: FieldMatrix, seed=0) -> tuple[FieldSpec, list[int]]:
    """All eigenvalues with multiplicity, as codes in a splitting field of char_poly."""
    F = x.field
    f = x.char_poly()
    degrees = [g.degree for g, _ in factor_poly(f, seed)]
    deg = math.lcm(*degrees) if degrees else 1
    if F.k * deg > MAX_EXTENSION_DEGREE:
        raise ResourceLimitError(f"splitting field of degree {F.k * deg} over GF({F.p}) exceeds the cap")
    E = extension_field(F.p, F.k * deg)
    phi = embedding(F, E)
    rng = np.random.default_rng(seed)
    out = []
    for g, m in factor_poly(f, seed):
        out.extend(roots(g.map_coeffs(E, phi), rng) * m)
    return E, sorted(out)


def is_strongly_regular(x: FieldMatrix, seed=0) -> bool:
    """Regular semisimple with the n(n-1) ratios of distinct eigenvalues pairwise distinct."""
    f = x.char_poly()
    if gcd(f, f.derivative()).degree > 0:
        return False
    E, eig = eigenvalues_in_splitting_field(x, seed)
    ratios = {E.div(a, b) for a, b in itertools.permutations(eig, 2)}
    return len(ratios) == len(eig) * (len(eig) - 1)
