"""Finite fields GF(p^k) with integer-coded elements.

An element c_0 + c_1 x + ... + c_{k-1} x^{k-1} of GF(p)[x]/(m) is stored as the
integer sum(c_i * p^i), i.e. its coefficient vector read little-endian in base
p.  The modulus m is the lexicographically least monic irreducible of degree k,
comparing coefficients from the constant term upward, so every field is
reproducible without external tables.

Scalar operations work on Python ints.  The ``v*`` methods work elementwise on
numpy integer arrays and back the matrix code; for k > 1 they need lookup
tables, which are built lazily for q <= 2**16.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint, isprime

from ..errors import ResourceLimitError, SpecError

TABLE_LIMIT = 1 << 16
DENSE_TABLE_LIMIT = 256
MAX_DEGREE = 16
MAX_EXTENSION_DEGREE = 64
MAX_PRIME = 1 << 31


class FieldSpec:
    """GF(p^k).  Obtain instances through :func:`field_create`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus  # low-to-high, monic, length k + 1

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (extension_field, (self.p, self.k))

    # -- digits ----------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        a = 0
        for c in reversed(list(ds)):
            a = a * self.p + c % self.p
        return a

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self):
        return range(self.q)

    # -- scalar arithmetic -----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= DENSE_TABLE_LIMIT:
            return int(self._add_table[a, b])
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= DENSE_TABLE_LIMIT:
            return int(self._mul_table[a, b])
        if self.q <= TABLE_LIMIT:
            exp, log = self._exp_log
            return int(exp[(log[a] + log[b]) % (self.q - 1)])
        return self._poly_mul(a, b)

    def _poly_mul(self, a: int, b: int) -> int:
        p, k, m = self.p, self.k, self.modulus
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg] % p
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] -= c * m[i]
        return self.from_digits(prod[:k])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._poly_mul(result, a)
            a = self._poly_mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self.q <= TABLE_LIMIT:
            exp, log = self._exp_log
            return int(exp[(-log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- tables ----------------------------------------------------------

    @cached_property
    def primitive_element(self) -> int:
        if self.q == 2:
            return 1
        exponents = [(self.q - 1) // r for r in factorint(self.q - 1)]
        power = self.pow if self.k == 1 else self._slow_pow
        for g in range(2, self.q):
            if all(power(g, e) != 1 for e in exponents):
                return g
        raise AssertionError("no primitive element found")

    @cached_property
    def _exp_log(self):
        if self.q > TABLE_LIMIT:
            raise ResourceLimitError(f"log tables are built only for q <= {TABLE_LIMIT}")
        g = self.primitive_element
        exp = np.empty(self.q - 1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        a = 1
        for i in range(self.q - 1):
            exp[i] = a
            log[a] = i
            a = self._poly_mul(a, g) if self.k > 1 else a * g % self.p
        return exp, log

    @cached_property
    def _mul_table(self):
        exp, log = self._exp_log
        idx = (log[:, None] + log[None, :]) % (self.q - 1)
        table = exp[idx]
        table[0, :] = 0
        table[:, 0] = 0
        return table

    @cached_property
    def _add_table(self):
        d = np.array([self.digits(a) for a in range(self.q)], dtype=np.int64)
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s * (self.p ** np.arange(self.k))).sum(axis=2)

    @cached_property
    def _neg_table(self):
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def _inv_table(self):
        t = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            t[a] = self.inv(a)
        return t

    # -- vectorized arithmetic -------------------------------------------

    def _check_vector(self):
        if self.k == 1:
            if self.p >= MAX_PRIME:
                raise ResourceLimitError("array arithmetic needs p < 2**31")
        elif self.q > TABLE_LIMIT:
            raise ResourceLimitError(f"array arithmetic over extension fields needs q <= {TABLE_LIMIT}")

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.q <= DENSE_TABLE_LIMIT:
            return self._add_table[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        scale = 1
        for _ in range(self.k):
            out += ((a // scale + b // scale) % self.p) * scale
            scale *= self.p
        return out

    def vneg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if self.q <= DENSE_TABLE_LIMIT:
            return self._mul_table[a, b]
        exp, log = self._exp_log
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        if self.k == 1:
            return np.array([pow(int(x), -1, self.p) for x in np.ravel(a)], dtype=np.int64).reshape(np.shape(a))
        return self._inv_table[a]

    def vsum(self, a, axis):
        """Field sum along an axis."""
        if self.k == 1:
            return np.sum(a, axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(np.asarray(a), axis, 0)
        out = a[0]
        for part in a[1:]:
            out = self.vadd(out, part)
        return out

    # -- elements and parsing --------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.parse(value) if isinstance(value, str) else self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise SpecError(f"element of {value.field} used in {self}")
            return value.code
        value = int(value)
        if self.k == 1:
            return value % self.p
        if not 0 <= value < self.q:
            raise SpecError(f"integer code {value} out of range for {self}")
        return value

    _TERM = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")

    def parse(self, text: str) -> int:
        """Parse an integer code or a polynomial in x such as ``"x^2+2*x+1"``."""
        text = text.replace(" ", "")
        if not text:
            raise SpecError("empty field element")
        if re.fullmatch(r"-?\d+", text):
            return self.coerce(int(text))
        if self.k == 1:
            raise SpecError(f"prime field elements are integers, got {text!r}")
        coeffs = [0] * max(self.k, 1)
        for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
            m = self._TERM.match(term)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise SpecError(f"cannot parse field element {text!r}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            deg = 0 if m.group(2) is None else int(m.group(3) or 1)
            if sign == "-":
                c = -c
            while deg >= len(coeffs):
                coeffs.append(0)
            coeffs[deg] += c
        # reduce modulo the defining polynomial
        m = self.modulus
        for deg in range(len(coeffs) - 1, self.k - 1, -1):
            c = coeffs[deg] % self.p
            if c:
                for i in range(self.k + 1):
                    coeffs[deg - self.k + i] -= c * m[i]
        return self.from_digits(coeffs[: self.k])

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return "+".join(terms) or "0"

    def encode_width(self) -> int:
        return max(1, ((self.q - 1).bit_length() + 7) // 8)


class FieldElement:
    """A value of a :class:`FieldSpec` with operator overloading."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    def _other(self, other):
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.code)})"


def _is_irreducible_over_prime(coeffs: tuple[int, ...], p: int) -> bool:
    from .polynomial import Poly, is_irreducible

    return is_irreducible(Poly(prime_field(p), coeffs))


def field_create(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the lexicographically least monic irreducible modulus."""
    if not 1 <= k <= MAX_DEGREE:
        raise SpecError(f"extension degree must lie in 1..{MAX_DEGREE}, got {k}")
    return extension_field(p, k)


def prime_field(p: int) -> FieldSpec:
    return extension_field(p, 1)


@lru_cache(maxsize=None)
def extension_field(p: int, k: int) -> FieldSpec:
    """Like :func:`field_create` but allows the larger degrees used for splitting fields."""
    if not isinstance(p, int) or not isprime(p):
        raise SpecError(f"characteristic must be prime, got {p}")
    if not 1 <= k <= MAX_EXTENSION_DEGREE:
        raise ResourceLimitError(f"extension degree capped at {MAX_EXTENSION_DEGREE}, got {k}")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue
        if _is_irreducible_over_prime(low + (1,), p):
            return FieldSpec(p, k, low + (1,))
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


def field_of_order(q: int) -> FieldSpec:
    fac = factorint(q)
    if len(fac) != 1:
        raise SpecError(f"{q} is not a prime power")
    (p, k), = fac.items()
    return field_create(int(p), int(k))


def parse_field_order(text: str) -> FieldSpec:
    """Accept ``"9"``, ``"3^2"`` or ``"3**2"``."""
    text = text.strip().replace("**", "^")
    if "^" in text:
        p, k = text.split("^")
        return field_create(int(p), int(k))
    return field_of_order(int(text))
