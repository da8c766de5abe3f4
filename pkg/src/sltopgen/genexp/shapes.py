"""Shapes of semisimple elements of prime order r in SL_n(q), r not dividing q.

Over GF(q) the nontrivial r-th roots of unity fall into Frobenius orbits
{z, z^q, z^(q^2), ...}, all of size l = ord(q mod r).  An element of order r
is determined up to conjugacy by the multiplicity a of eigenvalue 1 and the
multiplicity c_i of each orbit, with a + l * sum(c_i) = n.  Orbits are indexed
by the least exponent e with z^e in the orbit, for a fixed primitive r-th root
z taken from the power of the primitive element of GF(q^l).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from sympy import isprime, n_order, primefactors

from ..classdata import ClassSpec, ClassTuple, EigenBlockProfile, class_dimension, generation_criterion
from ..errors import PreconditionError, UnsupportedCase
from ..gflinalg.elements import embedding
from ..gflinalg.field import FieldSpec, extension_field, field_of_order
from ..gflinalg.matrix import FieldMatrix, block_diagonal, companion_matrix
from ..gflinalg.polynomial import Poly
from .groups import special_linear_order


@dataclass(frozen=True)
class Orbit:
    exponent: int  # least e with z^e in the orbit
    members: tuple[int, ...]  # exponents e * q^i mod r


@dataclass(frozen=True)
class ClassShape:
    n: int
    q: int
    r: int
    a: int
    orbit_degree: int
    counts: tuple[int, ...]  # multiplicity of each orbit, in orbit order
    orbits: tuple[Orbit, ...] = field(repr=False)
    det_one: bool = True

    @property
    def gamma(self) -> int:
        """Largest eigenspace over the algebraic closure."""
        return max(self.a, *self.counts)

    def class_spec(self) -> ClassSpec:
        """The class over the algebraic closure: one label per eigenvalue z^e."""
        blocks = {}
        if self.a:
            blocks["one"] = (1,) * self.a
        for orb, c in zip(self.orbits, self.counts):
            if c:
                for e in orb.members:
                    blocks[f"z{e}"] = (1,) * c
        return ClassSpec(self.n, EigenBlockProfile.from_mapping(blocks))

    @cached_property
    def dimension(self) -> int:
        return class_dimension(self.class_spec())

    @property
    def signature(self) -> tuple[int, tuple[int, ...]]:
        """(a, nonzero orbit counts in descending order): all that gamma, dimension and the criterion see."""
        return self.a, tuple(sorted((c for c in self.counts if c), reverse=True))

    def label(self) -> str:
        return f"1^{self.a}|" + ",".join(f"{o.exponent}^{c}" for o, c in zip(self.orbits, self.counts))

    def to_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "a": self.a,
            "orbit_degree": self.orbit_degree,
            "counts": list(self.counts),
            "orbit_exponents": [o.exponent for o in self.orbits],
            "gamma": self.gamma,
            "dimension": self.dimension,
            "det_one": self.det_one,
        }


def _check_prime_order(n: int, q: int, r: int):
    if not isprime(r):
        raise PreconditionError(f"r must be prime, got {r}")
    if q % r == 0:
        raise UnsupportedCase(f"r = {r} divides q = {q}: unipotent shapes are described by classdata directly")
    if special_linear_order(n, q) % r:
        raise PreconditionError(f"r = {r} does not divide |SL_{n}({q})|")


def frobenius_orbits(q: int, r: int) -> tuple[Orbit, ...]:
    seen: set[int] = set()
    out = []
    for e in range(1, r):
        if e in seen:
            continue
        members = []
        x = e
        while x not in members:
            members.append(x)
            x = x * q % r
        seen.update(members)
        out.append(Orbit(e, tuple(members)))
    return tuple(out)


def enumerate_prime_order_shapes(n: int, q: int, r: int) -> list[ClassShape]:
    """Every multiplicity profile of an order-r semisimple element of GL_n over GF(q), noncentral.

    ``det_one`` records whether the product of eigenvalues is 1.  For l > 1 it
    always is; for l = 1 the eigenvalues z^e need sum(e * c_e) = 0 mod r.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    _check_prime_order(n, q, r)
    l = int(n_order(q, r))
    orbits = frobenius_orbits(q, r)
    shapes = []
    for m in range(1, n // l + 1):
        for chosen in itertools.combinations_with_replacement(range(len(orbits)), m):
            counts = [0] * len(orbits)
            for i in chosen:
                counts[i] += 1
            a = n - l * m
            if l == 1 and a == 0 and len(set(chosen)) == 1:
                continue  # scalar
            det_one = l > 1 or sum(o.exponent * c for o, c in zip(orbits, counts)) % r == 0
            shapes.append(ClassShape(n, q, r, a, l, tuple(counts), orbits, det_one))
    shapes.sort(key=lambda s: (-s.a, tuple(-c for c in s.counts)))
    return shapes


@lru_cache(maxsize=None)
def _orbit_context(q: int, r: int):
    F = field_of_order(q)
    l = int(n_order(q, r))
    E = extension_field(F.p, F.k * l)
    z = E.pow(E.primitive_element, (E.q - 1) // r)
    phi = embedding(F, E)
    back = {phi(a): a for a in range(F.q)}
    return F, E, z, back


def orbit_polynomial(q: int, r: int, exponent: int) -> Poly:
    """Minimal polynomial over GF(q) of z^exponent: the product of x - z^(e q^i) over its orbit."""
    F, E, z, back = _orbit_context(q, r)
    g = Poly.constant(E, 1)
    e = exponent % r
    seen = set()
    while e not in seen:
        seen.add(e)
        g = g * Poly(E, [E.neg(E.pow(z, e)), 1])
        e = e * q % r
    return Poly(F, [back[c] for c in g.coeffs])


def realize_shape(shape: ClassShape) -> FieldMatrix:
    """Block-diagonal matrix over GF(q): identity, then companion matrices of the orbit polynomials."""
    if not shape.det_one:
        raise PreconditionError(f"shape {shape.label()} has no determinant-one element")
    F = field_of_order(shape.q)
    blocks = [np.eye(shape.a, dtype=np.int64)] if shape.a else []
    for orb, c in zip(shape.orbits, shape.counts):
        if c:
            comp = companion_matrix(orbit_polynomial(shape.q, shape.r, orb.exponent)).data
            blocks.extend(comp for _ in range(c))
    return FieldMatrix(F, block_diagonal(blocks))


@dataclass
class GoodBadReport:
    n: int
    q: int
    r: int
    s: int
    good: list[tuple[ClassShape, ClassShape]]
    bad: list[tuple[ClassShape, ClassShape]]
    max_bad_dimension: int | None
    max_dimensional_gammas: dict[int, list[int]]  # prime -> gammas of its top-dimensional shapes

    @property
    def good_exists(self) -> bool:
        return bool(self.good)

    def max_dimensional_below_half(self) -> bool:
        return all(2 * g < self.n for gs in self.max_dimensional_gammas.values() for g in gs)

    def to_dict(self):
        pair = lambda p: {"C": p[0].to_dict(), "D": p[1].to_dict(), "dim_omega": p[0].dimension + p[1].dimension}
        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "s": self.s,
            "good_exists": self.good_exists,
            "good": [pair(p) for p in self.good],
            "bad": [pair(p) for p in self.bad],
            "max_bad_dimension": self.max_bad_dimension,
            "max_dimensional_gammas": {str(k): v for k, v in self.max_dimensional_gammas.items()},
        }


def max_dimensional_shapes(shapes: list[ClassShape]) -> list[ClassShape]:
    top = max(s.dimension for s in shapes)
    return [s for s in shapes if s.dimension == top]


def shape_types(n: int, q: int, r: int) -> list[ClassShape]:
    """First determinant-one shape of each signature."""
    out: dict = {}
    for x in enumerate_prime_order_shapes(n, q, r):
        if x.det_one:
            out.setdefault(x.signature, x)
    return list(out.values())


def classify_good_bad(n: int, q: int, r: int, s: int) -> GoodBadReport:
    """Bad pairs fail the generation criterion; good pairs pass it and beat every bad pair in dim Omega.

    Only shapes with a determinant-one element over GF(q) take part, one per
    signature: shapes with equal signatures differ by relabelling orbits and
    get identical verdicts and dimensions.
    """
    if r == 2 and s == 2:
        raise UnsupportedCase("(r, s) = (2, 2) is excluded")
    if n < 3:
        raise UnsupportedCase("good/bad classification uses the n >= 3 criterion")
    shapes_r = shape_types(n, q, r)
    shapes_s = shape_types(n, q, s)
    if not shapes_r or not shapes_s:
        raise PreconditionError(f"SL_{n}({q}) has no noncentral elements of order {r} or {s}")
    generating, bad = [], []
    for c, d in itertools.product(shapes_r, shapes_s):
        verdict = generation_criterion(ClassTuple((c.class_spec(), d.class_spec())))
        (generating if verdict.generating else bad).append((c, d))
    dim = lambda p: p[0].dimension + p[1].dimension
    max_bad = max((dim(p) for p in bad), default=None)
    good = [p for p in generating if max_bad is None or dim(p) > max_bad]
    gammas = {r: [x.gamma for x in max_dimensional_shapes(shapes_r)]}
    gammas[s] = [x.gamma for x in max_dimensional_shapes(shapes_s)]
    return GoodBadReport(n, q, r, s, good, bad, max_bad, gammas)


def prime_orders(n: int, q: int, odd_only: bool = True) -> list[int]:
    """Primes r not dividing q that divide |SL_n(q)|."""
    out = [int(r) for r in primefactors(special_linear_order(n, q)) if q % r]
    return [r for r in out if r != 2] if odd_only else out


