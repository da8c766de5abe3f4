"""Bounds on generic stabilizers of linear SL_n-varieties.

If every class C needing d elements to generate SL_n topologically satisfies
dim V > d * dim C, generic stabilizers on V are trivial.  The quantities here
bound max_d d * alpha_d, where alpha_d is the largest dimension of such a
class, and compare the result against 9/4 n^2.  All arithmetic is exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .classdata import ENUMERATION_CAP, class_dimension, enumerate_shapes, min_generators
from .errors import PreconditionError, ResourceLimitError


def threshold(n: int) -> Fraction:
    return Fraction(9, 4) * n * n


def beta(n: int, d: int) -> int:
    """ceil(n(d-2)/(d-1)): forced size of a GL block in the centralizer."""
    if n < 3 or not 3 <= d <= n:
        raise PreconditionError(f"beta needs n >= 3 and 3 <= d <= n, got n={n}, d={d}")
    return -(-n * (d - 2) // (d - 1))


def alpha_d_upper(n: int, d: int) -> int:
    if n < 3 or not 2 <= d <= n:
        raise PreconditionError(f"alpha_d needs n >= 3 and 2 <= d <= n, got n={n}, d={d}")
    if d == 2:
        return n * n - n
    b = beta(n, d)
    return n * n - b * b - (n - b)


def alpha_upper(n: int) -> int:
    return max(d * alpha_d_upper(n, d) for d in range(2, n + 1))


def threshold_check(n: int) -> bool:
    """alpha_upper(n) <= floor(9/4 n^2)."""
    return alpha_upper(n) <= threshold(n).__floor__()


@dataclass
class AlphaRow:
    d: int
    alpha_d_upper: int
    alpha_d_exact: int | None = None


@dataclass
class AlphaTable:
    n: int
    rows: list[AlphaRow]
    alpha_upper: int
    alpha_exact: int | None = None
    threshold: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        if not self.threshold:
            self.threshold = threshold(self.n)

    def row(self, d: int) -> AlphaRow:
        return next(r for r in self.rows if r.d == d)

    def check(self) -> bool:
        ok = self.alpha_upper == max(r.d * r.alpha_d_upper for r in self.rows)
        ok &= self.alpha_upper <= self.threshold
        if self.alpha_exact is not None:
            ok &= self.alpha_exact <= self.alpha_upper
        for r in self.rows:
            if r.alpha_d_exact is not None:
                ok &= r.alpha_d_exact <= r.alpha_d_upper
        return ok

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "d", "alpha_d_upper", "alpha_d_exact", "d_times_alpha_d", "alpha_upper", "threshold"])
        for r in self.rows:
            best = r.alpha_d_exact if r.alpha_d_exact is not None else r.alpha_d_upper
            writer.writerow(
                [self.n, r.d, r.alpha_d_upper, "" if r.alpha_d_exact is None else r.alpha_d_exact,
                 r.d * best, self.alpha_upper, self.threshold]
            )
        return out.getvalue()


def alpha_table(n: int) -> AlphaTable:
    """Upper-bound rows only; no enumeration."""
    rows = [AlphaRow(d, alpha_d_upper(n, d)) for d in range(2, n + 1)]
    return AlphaTable(n, rows, alpha_upper(n))


def alpha_exact(n: int, cap: int = ENUMERATION_CAP) -> AlphaTable:
    """Exact alpha_d over every noncentral Jordan type.

    This ranges over all noncentral classes, a superset of the prime-order and
    unipotent classes the bound is about, so the result is an upper bound for
    the restricted quantity.
    """
    if n < 3:
        raise PreconditionError("alpha_exact needs n >= 3")
    if n > cap:
        raise ResourceLimitError(f"alpha_exact enumerates shapes only up to n = {cap}")
    best: dict[int, int] = {}
    for spec in enumerate_shapes(n, cap=cap):
        d = min_generators(spec)
        best[d] = max(best.get(d, 0), class_dimension(spec))
    rows = [AlphaRow(d, alpha_d_upper(n, d), best.get(d)) for d in range(2, n + 1)]
    exact = max(d * a for d, a in best.items())
    table = AlphaTable(n, rows, alpha_upper(n), exact)
    if not table.check():
        raise AssertionError(f"exact alpha table violates its upper bounds at n = {n}")
    return table


def vc_dimension_bound(dim_V: int, dim_C: int, d: int) -> tuple[Fraction, bool]:
    """Bound d/(d-1) dim V + dim C on dim V(C), and whether dim V > d dim C.

    The second value is the sufficient condition for dim V(C) < dim V that the
    stabilizer argument actually uses.
    """
    if d < 2:
        raise PreconditionError("d must be at least 2")
    if dim_V < 1 or dim_C < 0:
        raise PreconditionError("need dim V >= 1 and dim C >= 0")
    bound = Fraction(d, d - 1) * dim_V + dim_C
    return bound, dim_V > d * dim_C
