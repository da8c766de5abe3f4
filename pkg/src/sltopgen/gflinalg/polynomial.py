"""Dense univariate polynomials over GF(q) and their factorization.

Coefficients are field codes listed from the constant term upward; the zero
polynomial has no coefficients.  Factorization runs squarefree decomposition,
distinct-degree splitting and randomized equal-degree splitting (quadratic
residues for odd q, the absolute trace for even q).
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .field import FieldSpec


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs):
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, (field.coerce(c),))

    @classmethod
    def from_roots(cls, field, roots):
        out = cls.constant(field, 1)
        for r in roots:
            out = out * cls._raw(field, (field.neg(field.coerce(r)), 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.format(c)
            if F.k > 1 and c >= F.p:
                cs = f"({cs})"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms)

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly._raw(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self):
        return Poly._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            other = Poly.constant(F, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly._raw(F, out)

    def scale(self, c: int):
        F = self.field
        return Poly._raw(F, [F.mul(c, x) for x in self.coeffs])

    def monic(self):
        if not self.coeffs or self.lc == 1:
            return self
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc)
        if len(r) <= db:
            return Poly._raw(F, ()), self
        quot = [0] * (len(r) - db)
        b = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            c = F.mul(c, inv_lc)
            quot[i - db] = c
            for j, y in enumerate(b):
                if y:
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, y))
        return Poly._raw(F, quot), Poly._raw(F, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self):
        F = self.field
        return Poly._raw(F, [F.mul(i % F.p, c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.constant(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def map_coeffs(self, target: FieldSpec, fn):
        return Poly._raw(target, [fn(c) for c in self.coeffs])


def gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pth_root(f: Poly) -> Poly:
    F = f.field
    e = F.q // F.p  # a -> a^(q/p) inverts Frobenius
    return Poly._raw(F, [F.pow(c, e) for c in f.coeffs[:: F.p]])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g_i, i) with f = prod g_i^i, each g_i squarefree and monic."""
    F = f.field
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.degree < 1:
        return out
    d = f.derivative()
    if d.is_zero():
        return [(g, m * F.p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w, c = y, c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * F.p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: pairs (g, d) where g is the product of degree-d factors."""
    F = f.field
    x = Poly.x(F)
    out = []
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(F, degree, rng):
    return Poly._raw(F, [int(c) for c in rng.integers(0, F.q, size=degree)])


def equal_degree(f: Poly, d: int, rng: np.random.Generator) -> list[Poly]:
    """Split squarefree monic f, all of whose irreducible factors have degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    if f.degree == 0:
        return []
    while True:
        a = _random_poly(F, f.degree, rng)
        if a.degree < 1:
            continue
        if F.q % 2:
            b = a.powmod((F.q ** d - 1) // 2, f) - Poly.constant(F, 1)
        else:
            b = Poly._raw(F, ())
            t = a % f
            for _ in range(F.k * d):
                b = b + t
                t = (t * t) % f
        g = gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_poly(f: Poly, seed=0) -> list[tuple[Poly, int]]:
    """Complete factorization into monic irreducibles with multiplicities.

    A non-monic input contributes its leading coefficient as a leading
    degree-zero factor, so the product always reproduces ``f``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    F = f.field
    out = []
    for g, mult in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            out.extend((fac, mult) for fac in equal_degree(h, d, rng))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    if f.lc != 1:
        out.insert(0, (Poly.constant(F, f.lc), 1))
    return out


def expand(factors, field: FieldSpec | None = None) -> Poly:
    """Multiply a factor list back together; ``field`` is needed only for an empty list."""
    if not factors:
        return Poly.constant(field, 1)
    return reduce(lambda acc, t: acc * _power(t[0], t[1]), factors[1:], _power(*factors[0]))


def _power(f: Poly, m: int) -> Poly:
    out = Poly.constant(f.field, 1)
    for _ in range(m):
        out = out * f
    return out


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test: gcd(f, x^(q^i) - x) = 1 for i <= deg/2."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    f = f.monic()
    x = Poly.x(F)
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(F.q, f)
        if gcd(f, h - x).degree > 0:
            return False
    return True


def roots(f: Poly, rng=None) -> list[int]:
    """Distinct roots in the coefficient field."""
    rng = np.random.default_rng(0) if rng is None else rng
    F = f.field
    f = f.monic()
    if f.degree < 1:
        return []
    x = Poly.x(F)
    lin = gcd(f, x.powmod(F.q, f) - x)
    return sorted(F.neg(g.coeffs[0]) for g in equal_degree(lin, 1, rng)) if lin.degree > 0 else []
