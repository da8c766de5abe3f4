"""Dense square matrices over GF(q) stored as integer-code numpy arrays."""

from __future__ import annotations

import numpy as np

from ..errors import SpecError
from .field import FieldSpec
from .polynomial import Poly

_INT64_SAFE = 1 << 62


def _prime_matmul_safe(F: FieldSpec, inner: int) -> bool:
    return F.k == 1 and inner * (F.p - 1) ** 2 < _INT64_SAFE


def matmul(F: FieldSpec, a, b):
    """Field matrix product with numpy broadcasting over leading axes."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if _prime_matmul_safe(F, inner):
        return np.matmul(a, b) % F.p
    if F.k == 1:
        out = np.matmul(a.astype(object), b.astype(object)) % F.p
        return out.astype(np.int64)
    prod = F.vmul(a[..., :, :, None], b[..., None, :, :])
    return F.vsum(prod, axis=-2)


def matvec(F: FieldSpec, a, v):
    return matmul(F, a, np.asarray(v, dtype=np.int64)[:, None])[:, 0]


def row_reduce(F: FieldSpec, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=np.int64, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = F.vmul(m[r], F.inv(int(m[r, c])))
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = F.vsub(m[hit], F.vmul(col[hit, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(F: FieldSpec, a) -> int:
    return len(row_reduce(F, a)[1])


def kernel_basis(F: FieldSpec, a) -> np.ndarray:
    """Rows spanning {v : a v = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    rref, pivots = row_reduce(F, a)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = F.neg(int(rref[i, f]))
    return basis


def determinant(F: FieldSpec, a) -> int:
    m = np.array(a, dtype=np.int64, copy=True)
    n = m.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            det = F.neg(det)
        piv = int(m[c, c])
        det = F.mul(det, piv)
        below = m[c + 1 :, c]
        hit = np.nonzero(below)[0] + c + 1
        if hit.size:
            factors = F.vmul(m[hit, c], F.inv(piv))
            m[hit] = F.vsub(m[hit], F.vmul(factors[:, None], m[c][None, :]))
    return det


def inverse(F: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    rref, pivots = row_reduce(F, np.hstack([a, np.eye(n, dtype=np.int64)]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return rref[:, n:]


def berkowitz(F: FieldSpec, a) -> list[int]:
    """Coefficients of det(xI - a), highest degree first, using ring operations only."""
    a = [[int(v) for v in row] for row in np.asarray(a)]
    n = len(a)
    add, mul, neg = F.add, F.mul, F.neg
    poly = [1, neg(a[0][0])]
    for r in range(1, n):
        M = [row[:r] for row in a[:r]]
        R = a[r][:r]
        S = [a[i][r] for i in range(r)]
        col = [1, neg(a[r][r])]
        vec = S
        for _ in range(r):
            s = 0
            for x, y in zip(R, vec):
                s = add(s, mul(x, y))
            col.append(neg(s))
            nxt = []
            for row in M:
                t = 0
                for x, y in zip(row, vec):
                    t = add(t, mul(x, y))
                nxt.append(t)
            vec = nxt
        # Toeplitz (r+2) x (r+1) lower-triangular times poly
        new = []
        for i in range(r + 2):
            t = 0
            for j in range(min(i, r) + 1):
                t = add(t, mul(col[i - j], poly[j]))
            new.append(t)
        poly = new
    return poly


class FieldMatrix:
    """An n x n matrix over a :class:`FieldSpec`; treat instances as immutable."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise SpecError(f"matrix must be square, got shape {arr.shape}")
        if field.k == 1:
            arr %= field.p
        elif arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise SpecError(f"entry codes out of range for {field}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def _wrap(cls, field, arr):
        obj = cls.__new__(cls)
        arr = np.asarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        obj.field = field
        obj.data = arr
        return obj

    @classmethod
    def identity(cls, field, n):
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, field, n, c):
        return cls._wrap(field, np.eye(n, dtype=np.int64) * field.coerce(c))

    @classmethod
    def diag(cls, field, values):
        return cls._wrap(field, np.diag([field.coerce(v) for v in values]).astype(np.int64))

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, [[field.coerce(v) if not isinstance(v, str) else field.parse(v) for v in r] for r in rows])

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def _same(self, other):
        if not isinstance(other, FieldMatrix) or other.field != self.field:
            raise SpecError("matrices must share a field")
        if other.n != self.n:
            raise SpecError("matrix sizes differ")

    def __matmul__(self, other):
        self._same(other)
        return FieldMatrix._wrap(self.field, matmul(self.field, self.data, other.data))

    __mul__ = __matmul__

    def __add__(self, other):
        self._same(other)
        return FieldMatrix._wrap(self.field, self.field.vadd(self.data, other.data))

    def __sub__(self, other):
        self._same(other)
        return FieldMatrix._wrap(self.field, self.field.vsub(self.data, other.data))

    def __neg__(self):
        return FieldMatrix._wrap(self.field, self.field.vneg(self.data))

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = FieldMatrix.identity(self.field, self.n)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, FieldMatrix) and self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field, self.data.tobytes()))

    def __repr__(self):
        rows = "; ".join(" ".join(self.field.format(int(v)) for v in row) for row in self.data)
        return f"FieldMatrix({self.field!r}, [{rows}])"

    def transpose(self):
        return FieldMatrix._wrap(self.field, self.data.T.copy())

    T = property(transpose)

    def scale(self, c):
        return FieldMatrix._wrap(self.field, self.field.vmul(self.data, self.field.coerce(c)))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.data, np.eye(self.n, dtype=np.int64)))

    def is_scalar(self) -> bool:
        d = self.data
        return bool(np.all(d == np.eye(self.n, dtype=np.int64) * d[0, 0]))

    def rank(self) -> int:
        return rank(self.field, self.data)

    def kernel_basis(self) -> np.ndarray:
        return kernel_basis(self.field, self.data)

    def nullity(self) -> int:
        return self.n - self.rank()

    def determinant(self) -> int:
        return determinant(self.field, self.data)

    det = determinant

    def inverse(self):
        return FieldMatrix._wrap(self.field, inverse(self.field, self.data))

    def char_poly(self) -> Poly:
        return Poly(self.field, berkowitz(self.field, self.data)[::-1])

    def evaluate(self, f: Poly) -> "FieldMatrix":
        """f(self) by Horner's rule."""
        acc = FieldMatrix._wrap(self.field, np.zeros_like(self.data))
        ident = FieldMatrix.identity(self.field, self.n)
        for c in reversed(f.coeffs):
            acc = acc @ self + ident.scale(c)
        return acc

    def encode(self) -> bytes:
        """n as two bytes, then row-major entries at the field's fixed width, big-endian."""
        w = self.field.encode_width()
        body = b"".join(int(v).to_bytes(w, "big") for v in self.data.ravel())
        return self.n.to_bytes(2, "big") + body

    def key(self) -> int:
        """Injective integer key: entries as base-q digits, row-major."""
        k = 0
        for v in self.data.ravel():
            k = k * self.field.q + int(v)
        return k

    def to_lists(self) -> list[list[int]]:
        return self.data.tolist()


def jordan_block(F: FieldSpec, size: int, value) -> np.ndarray:
    m = np.eye(size, dtype=np.int64) * F.coerce(value)
    for i in range(size - 1):
        m[i, i + 1] = 1
    return m


def block_diagonal(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        s = b.shape[0]
        out[i : i + s, i : i + s] = b
        i += s
    return out


def companion_matrix(f: Poly) -> FieldMatrix:
    """Companion matrix of a monic polynomial; its characteristic polynomial is f."""
    F = f.field
    f = f.monic()
    d = f.degree
    m = np.zeros((d, d), dtype=np.int64)
    for i in range(1, d):
        m[i, i - 1] = 1
    for i in range(d):
        m[i, d - 1] = F.neg(f.coeffs[i])
    return FieldMatrix._wrap(F, m)
