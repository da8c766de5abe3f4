import csv
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sltopgen.classdata import class_dimension, enumerate_shapes, gamma, is_quadratic
from sltopgen.errors import PreconditionError, ResourceLimitError
from sltopgen.stabbounds import (
    alpha_d_upper,
    alpha_exact,
    alpha_table,
    alpha_upper,
    beta,
    threshold,
    threshold_check,
    vc_dimension_bound,
)


@pytest.mark.parametrize("args, expected", [((6, 3), 3), ((5, 4), 4), ((7, 7), 6)])
def test_beta_examples(args, expected):
    assert beta(*args) == expected


@given(st.integers(3, 200).flatmap(lambda n: st.tuples(st.just(n), st.integers(3, n))))
def test_beta_is_exact_ceiling(nd):
    n, d = nd
    assert beta(n, d) == math.ceil(Fraction(n * (d - 2), d - 1))


# (4, 4): beta = 3, so 16 - 9 - 1 = 6
@pytest.mark.parametrize("args, expected", [((3, 2), 6), ((6, 3), 24), ((4, 4), 6), ((3, 3), 4)])
def test_alpha_d_upper_examples(args, expected):
    assert alpha_d_upper(*args) == expected


def test_alpha_upper_small():
    assert alpha_upper(3) == 12
    assert alpha_upper(4) <= 36
    assert alpha_upper(6) <= 81


def test_threshold_is_exact():
    assert threshold(3) == Fraction(81, 4)
    assert math.floor(threshold(6)) == 81


def test_threshold_check_range():
    assert all(threshold_check(n) for n in range(3, 41))


def test_preconditions():
    with pytest.raises(PreconditionError):
        beta(2, 2)
    with pytest.raises(PreconditionError):
        alpha_d_upper(5, 6)
    with pytest.raises(PreconditionError):
        alpha_exact(2)
    with pytest.raises(ResourceLimitError):
        alpha_exact(13)


def brute_min_generators(spec):
    """Least d with d*gamma <= n(d-1), skipping d = 2 for quadratic classes."""
    n, g = spec.n, gamma(spec)
    for d in range(2, 10 * n):
        if d * g <= n * (d - 1) and not (d == 2 and is_quadratic(spec)):
            return d
    raise AssertionError


@pytest.mark.parametrize("n", range(3, 9))
def test_alpha_exact_against_direct_maxima(n):
    table = alpha_exact(n)
    best = {}
    for spec in enumerate_shapes(n):
        d = brute_min_generators(spec)
        best[d] = max(best.get(d, 0), class_dimension(spec))
    for row in table.rows:
        assert row.alpha_d_exact == best.get(row.d)
        if row.alpha_d_exact is not None:
            assert row.alpha_d_exact <= row.alpha_d_upper
    assert table.row(2).alpha_d_exact == n * n - n
    assert table.alpha_exact == max(d * a for d, a in best.items())
    assert table.check()


def test_alpha_exact_n3():
    table = alpha_exact(3)
    assert table.row(2).alpha_d_exact == 6
    assert table.row(3).alpha_d_exact == 4
    d3 = {s.shape_key() for s in enumerate_shapes(3) if brute_min_generators(s) == 3}
    # exactly the quadratic shapes; {[2],[1]} has a cubic minimal polynomial
    assert d3 == {((1, 1), (1,)), ((2, 1),)}
    assert d3 == {s.shape_key() for s in enumerate_shapes(3) if is_quadratic(s)}


def test_csv_schema():
    text = alpha_table(6).to_csv()
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["n", "d", "alpha_d_upper", "alpha_d_exact", "d_times_alpha_d", "alpha_upper", "threshold"]
    assert [int(r["d"]) for r in rows] == [2, 3, 4, 5, 6]
    assert all(int(r["alpha_upper"]) <= 81 for r in rows)
    assert all(r["alpha_d_exact"] == "" for r in rows)


def test_table_check_catches_inconsistency():
    table = alpha_table(5)
    assert table.check()
    table.alpha_upper += 1
    assert not table.check()


@pytest.mark.parametrize("args, strict", [((100, 6, 2), True), ((12, 6, 2), False), ((21, 6, 3), True)])
def test_vc_bound(args, strict):
    bound, ok = vc_dimension_bound(*args)
    dim_V, dim_C, d = args
    assert bound == Fraction(d, d - 1) * dim_V + dim_C
    assert ok is strict
