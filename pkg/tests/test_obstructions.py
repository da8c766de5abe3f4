import itertools
import math

import numpy as np
import pytest

from sltopgen.classdata import ClassSpec, ClassTuple, Outcome, enumerate_shapes, generation_criterion
from sltopgen.errors import PreconditionError
from sltopgen.obstructions import (
    audit_passes,
    fixed_point_dim_projective,
    maximal_subgroup_table,
    parabolic_obstruction,
    sl3_base_case_audit,
    ym_dimension_bound,
)

S = ClassSpec.from_blocks


def T(*specs):
    return ClassTuple(tuple(specs))


def _rows(n, char=0):
    return {r.structure: r for r in maximal_subgroup_table(n, char)}


def test_table_n6():
    rows = _rows(6)
    assert rows["Sp_6"].rank == 3
    assert rows["GL_3 wr S_2"].rank == 4
    assert rows["GL_2 (x) GL_3"].rank == 3
    assert rows["SO_6"].rank == 3
    assert {f"P_{m}" for m in range(1, 6)} <= set(rows)


def test_table_n3_has_so3():
    rows = _rows(3)
    assert rows["SO_3"].rank == 1
    assert "SO_3" not in _rows(3, char=2)
    assert not any(r.family == "C6-symplectic" for r in rows.values())


def test_table_tensor_power():
    rows = _rows(9)
    assert rows["(GL_3)^(x2).S_2"].rank == 4
    assert "GL_3 wr S_3" in rows and "GL_1 wr S_9" in rows


def test_table_rejects_small_n():
    with pytest.raises(PreconditionError):
        maximal_subgroup_table(1)


def fixed_line_dimension_by_count(spec, p=3):
    """Projective dimension of the fixed locus, from counting fixed lines over GF(p)."""
    n = spec.n
    x = np.zeros((n, n), dtype=np.int64)
    i = 0
    for v, (_, parts) in enumerate(spec.profile.entries, start=1):
        for b in parts:
            x[i:i + b, i:i + b] = np.eye(b, dtype=np.int64) * v + np.eye(b, k=1, dtype=np.int64)
            i += b
    per_value = {}
    for vec in itertools.product(range(p), repeat=n):
        v = np.array(vec)
        if not v.any():
            continue
        w = x @ v % p
        for lam in range(1, p):
            if np.array_equal(w, lam * v % p):
                per_value[lam] = per_value.get(lam, 0) + 1
    lines = max(per_value.values()) // (p - 1)
    return round(math.log(lines * (p - 1) + 1, p)) - 1


@pytest.mark.parametrize("spec, expected", [(S(a=[2, 1, 1]), 2), (S(a=[1], b=[1], c=[1]), 0), (S(a=[2, 2], b=[1]), 1)])
def test_fixed_point_examples(spec, expected):
    assert fixed_point_dim_projective(spec) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fixed_point_dim_by_counting_lines(n):
    # two labels at most, so eigenvalues 1 and 2 both exist in GF(3)
    for spec in enumerate_shapes(n, max_labels=2):
        assert fixed_point_dim_projective(spec) == fixed_line_dimension_by_count(spec), spec


def test_parabolic_examples():
    tv = S(a=[2, 1])
    reg = S(a=[1], b=[1], c=[1])
    assert parabolic_obstruction(T(tv, tv))
    assert not parabolic_obstruction(T(reg, reg))
    tv4 = S(a=[2, 1, 1])
    assert parabolic_obstruction(T(tv4, tv4, tv4))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_parabolic_matches_eigenspace_obstruction(n):
    shapes = enumerate_shapes(n)
    for e in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(shapes, e):
            ct = ClassTuple(combo)
            assert parabolic_obstruction(ct) == (generation_criterion(ct).outcome is Outcome.EIGENSPACE)


@pytest.mark.parametrize("args, expected", [((4, 5), 9), ((0, 8), 8), ((0, 0), 0)])
def test_ym_bound(args, expected):
    assert ym_dimension_bound(*args) == expected


def test_ym_bound_rejects_negative():
    with pytest.raises(PreconditionError):
        ym_dimension_bound(-1, 3)


REG = S(a=[1], b=[1], c=[1])
QUAD = S(a=[1, 1], b=[1])


def _audit(*specs):
    return {r.subgroup: r for r in sl3_base_case_audit(T(*specs))}


def test_audit_two_regular():
    recs = _audit(REG, S(a=[3]))
    assert all(r.dim_omega == 12 for r in recs.values())
    assert recs["SO_3"].cap_sum + recs["SO_3"].dim_coset == 9
    assert recs["N(T)"].cap_sum + recs["N(T)"].dim_coset == 10
    assert recs["subfield"].cap_sum + recs["subfield"].dim_coset == 8
    assert audit_passes(recs.values())


def test_audit_quadratic_and_regular():
    recs = _audit(QUAD, REG)
    assert recs["SO_3"].cap_sum + recs["SO_3"].dim_coset == 9
    assert recs["N(T)"].cap_sum + recs["N(T)"].dim_coset == 9
    assert all(r.dim_omega == 10 and r.strict_pass for r in recs.values())


def test_audit_three_quadratic():
    tv = S(a=[2, 1])
    recs = _audit(QUAD, tv, QUAD)
    assert recs["SO_3"].cap_sum + recs["SO_3"].dim_coset == 11
    assert recs["N(T)"].cap_sum + recs["N(T)"].dim_coset == 9
    assert audit_passes(recs.values())


def test_audit_passes_on_every_generating_sl3_tuple():
    shapes = enumerate_shapes(3)
    for e in (2, 3, 4):
        for combo in itertools.combinations_with_replacement(shapes, e):
            ct = ClassTuple(combo)
            if generation_criterion(ct).generating:
                assert audit_passes(sl3_base_case_audit(ct)), ct


def test_audit_preconditions():
    with pytest.raises(PreconditionError):
        sl3_base_case_audit(T(S(a=[2, 1]), S(a=[2, 1])))
    with pytest.raises(PreconditionError):
        sl3_base_case_audit(T(S(a=[4]), S(a=[4])))
