"""Dimension and fixed-point arithmetic behind the generation criterion.

Contains the table of maximal positive-dimensional closed subgroups of SL_n in
the geometric and classical families, the fixed-line bound on projective
space, and a reproduction of the SL_3 base-case dimension count.  The
``dim(C ∩ M)`` caps used by the audit are taken as data from the published
case analysis; they are not derived here.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .classdata import ClassTuple, dim_omega, gamma, generation_criterion, is_quadratic
from .errors import PreconditionError

FAMILIES = ("C1", "C2", "C4a", "C4b", "C6-symplectic", "C6-orthogonal")


@dataclass(frozen=True)
class MaximalSubgroupEntry:
    family: str
    structure: str
    parameters: dict
    condition: str
    rank: int


def _divisor_pairs(n):
    return [(m, n // m) for m in range(1, n + 1) if n % m == 0]


def _integer_root(n, t):
    m = round(n ** (1.0 / t))
    for cand in (m - 1, m, m + 1):
        if cand > 1 and cand ** t == n:
            return cand
    return None


def maximal_subgroup_table(n: int, characteristic: int = 0) -> list[MaximalSubgroupEntry]:
    """Rows of the maximal subgroup table instantiated at n.

    Orthogonal rows are omitted in characteristic 2.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    rows = []
    for m in range(1, n):
        rows.append(MaximalSubgroupEntry("C1", f"P_{m}", {"m": m}, "1 <= m <= n-1", n - 2))
    for m, t in _divisor_pairs(n):
        if t >= 2:
            rows.append(MaximalSubgroupEntry("C2", f"GL_{m} wr S_{t}", {"m": m, "t": t}, "n = mt, t >= 2", t * (m - 1)))
    for n1, n2 in _divisor_pairs(n):
        if 2 <= n1 < n2:
            rows.append(
                MaximalSubgroupEntry(
                    "C4a", f"GL_{n1} (x) GL_{n2}", {"n1": n1, "n2": n2}, "n = n1*n2, 2 <= n1 < n2", n1 + n2 - 2
                )
            )
    t = 2
    while 3 ** t <= n:
        m = _integer_root(n, t)
        if m is not None and m >= 3:
            rows.append(
                MaximalSubgroupEntry("C4b", f"(GL_{m})^(x{t}).S_{t}", {"m": m, "t": t}, "n = m^t, m >= 3, t >= 2", t * (m - 1))
            )
        t += 1
    if n % 2 == 0:
        rows.append(MaximalSubgroupEntry("C6-symplectic", f"Sp_{n}", {}, "n even", n // 2))
    if characteristic != 2:
        rows.append(MaximalSubgroupEntry("C6-orthogonal", f"SO_{n}", {}, "p != 2", n // 2))
    return rows


def fixed_point_dim_projective(spec) -> int:
    """Dimension of the fixed locus of a class element on P^{n-1}."""
    return gamma(spec) - 1


def parabolic_obstruction(classes: ClassTuple) -> bool:
    """True when every tuple of the classes fixes a common line."""
    n, e = classes.n, classes.e
    return sum(fixed_point_dim_projective(c) for c in classes) >= (e - 1) * (n - 1)


def ym_dimension_bound(dim_delta: int, dim_coset: int) -> int:
    """Upper bound dim Δ + dim G/M on the variety of tuples landing in some conjugate of M."""
    if dim_delta < 0 or dim_coset < 0:
        raise PreconditionError("dimensions must be non-negative")
    return dim_delta + dim_coset


@dataclass(frozen=True)
class AuditRecord:
    subgroup: str
    dim_coset: int
    cap_sum: int
    dim_omega: int
    strict_pass: bool

    def to_dict(self):
        return asdict(self)


# dim G/M and per-class caps on dim(C ∩ M) for SL_3
_SO3 = ("SO_3", 5)
_NT = ("N(T)", 6)
_SUBFIELD = ("subfield", 8)


def sl3_base_case_audit(classes: ClassTuple) -> list[AuditRecord]:
    """Check dim Ω > Σ dim(C_j ∩ M) + dim G/M for each non-parabolic maximal M of SL_3.

    Parabolics are handled by the fixed-line argument and are not listed.
    """
    if classes.n != 3:
        raise PreconditionError("the base-case audit is for SL_3")
    verdict = generation_criterion(classes)
    if not verdict.generating:
        raise PreconditionError(f"audit requires a generating tuple, got {verdict.outcome.value}")
    total = dim_omega(classes)
    caps = {
        _SO3: [2 for _ in classes],
        _NT: [1 if is_quadratic(c) else 2 for c in classes],
        _SUBFIELD: [0 for _ in classes],
    }
    records = []
    for (name, dim_coset), per_class in caps.items():
        bound = ym_dimension_bound(sum(per_class), dim_coset)
        records.append(AuditRecord(name, dim_coset, sum(per_class), total, total > bound))
    return records


def audit_passes(records) -> bool:
    return all(r.strict_pass for r in records)


__all__ = [
    "FAMILIES",
    "MaximalSubgroupEntry",
    "maximal_subgroup_table",
    "fixed_point_dim_projective",
    "parabolic_obstruction",
    "ym_dimension_bound",
    "AuditRecord",
    "sl3_base_case_audit",
    "audit_passes",
]
