import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from statsmodels.stats.proportion import proportion_confint

from sltopgen.classdata import ClassSpec, ClassTuple, enumerate_shapes, gamma
from sltopgen.errors import PreconditionError, ResourceLimitError, SpecError, UnsupportedCase
from sltopgen.genexp import (
    ClosureStatus,
    ExperimentConfig,
    Mode,
    PairStatus,
    bfs_group_closure,
    classify_good_bad,
    classify_pair,
    conjugacy_class,
    enumerate_prime_order_shapes,
    estimate_generation_probability,
    exact_generation_probability,
    frobenius_orbits,
    generates_special_linear,
    orbit_polynomial,
    prime_orders,
    realize_shape,
    sample_rng,
    shape_types,
    special_linear_order,
    transvection_generators,
    verify_intersection_formula,
    wilson_interval,
)
from sltopgen.gflinalg import FieldMatrix, Poly, element_order, field_create, field_of_order, is_irreducible, prime_field

S = ClassSpec.from_blocks
F3 = prime_field(3)
ORDER4 = FieldMatrix(F3, [[0, 1], [2, 0]])
ORDER3 = FieldMatrix(F3, [[1, 1], [0, 1]])


def all_special_linear(n, F):
    out = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        m = FieldMatrix._wrap(F, np.array(entries, dtype=np.int64).reshape(n, n))
        if m.det() == 1:
            out.append(m)
    return out


def brute_closure(gens):
    seen = {g.key(): g for g in gens}
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                if b.key() not in seen:
                    seen[b.key()] = b
                    nxt.append(b)
        frontier = nxt
    return len(seen)


# -- group orders and closure ----------------------------------------------


@pytest.mark.parametrize("args, expected", [((3, 2), 168), ((2, 5), 120), ((3, 4), 60480)])
def test_order_examples(args, expected):
    assert special_linear_order(*args) == expected


@pytest.mark.parametrize("n, p, k", [(2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 5, 1), (3, 2, 1)])
def test_order_by_counting(n, p, k):
    F = field_create(p, k)
    assert len(all_special_linear(n, F)) == special_linear_order(n, F.q)


def test_closure_examples():
    up, low = ORDER3, ORDER3.T
    assert bfs_group_closure([up, low]).order == 24
    F5 = prime_field(5)
    assert bfs_group_closure([FieldMatrix.scalar(F5, 2, 4)]).order == 2


def test_order4_pairs_stay_in_quaternion_group():
    cls = conjugacy_class(ORDER4)
    assert len(cls) == 6
    for a, b in itertools.product(cls, repeat=2):
        order = bfs_group_closure([a, b]).order
        assert 8 % order == 0


@pytest.mark.parametrize("n, p, k", [(2, 3, 1), (2, 2, 2), (3, 2, 1), (3, 3, 1), (3, 2, 2), (4, 2, 1)])
def test_transvections_generate(n, p, k):
    F = field_create(p, k)
    res = bfs_group_closure(transvection_generators(n, F))
    assert res.status is ClosureStatus.COMPLETE
    assert res.order == special_linear_order(n, F.q)


def test_closure_matches_brute_force_on_random_pairs():
    F = prime_field(3)
    rng = np.random.default_rng(11)
    from sltopgen.gflinalg import random_special_linear

    for _ in range(25):
        gens = [random_special_linear(2, F, rng) for _ in range(2)]
        assert bfs_group_closure(gens).order == brute_closure(gens)


def test_closure_index_shortcut_and_cap():
    F = prime_field(3)
    gens = transvection_generators(3, F)
    res = generates_special_linear(gens)
    assert res.status is ClosureStatus.FULL_BY_INDEX and res.order == 5616
    res = bfs_group_closure(gens, cap=100)
    assert res.status is ClosureStatus.CAP_EXCEEDED and not res.exact
    with pytest.raises(ResourceLimitError):
        conjugacy_class(ORDER4, cap=3)


def test_conjugacy_class_sizes_sl2_3():
    sizes = sorted(len(conjugacy_class(x)) for x in (ORDER4, ORDER3, ORDER3.T, FieldMatrix.scalar(F3, 2, 2)))
    assert sizes == [1, 4, 4, 6]
    # the two order-3 classes of SL_2(3) are distinct
    assert {m.key() for m in conjugacy_class(ORDER3)}.isdisjoint({m.key() for m in conjugacy_class(ORDER3 @ ORDER3)})


def test_conjugacy_class_by_brute_conjugation():
    G = all_special_linear(2, F3)
    for x in (ORDER4, ORDER3):
        brute = {(g @ x @ g.inverse()).key() for g in G}
        assert brute == {m.key() for m in conjugacy_class(x)}


# -- exact generation probability ------------------------------------------


def test_sl2_3_exact_table():
    assert exact_generation_probability(ORDER4, ORDER3) == 1
    assert exact_generation_probability(ORDER4, ORDER4) == 0
    p = exact_generation_probability(ORDER3, ORDER3)
    assert 0 < p < 1 and p == Fraction(3, 4)
    assert exact_generation_probability(ORDER3, ORDER3, full_pairs=True) == p


def test_sl3_2_exact_by_both_routes():
    F2 = prime_field(2)
    x = realize_shape(shape_types(3, 2, 7)[0])
    assert element_order(x) == 7
    fast = exact_generation_probability(x, x)
    assert fast == exact_generation_probability(x, x, full_pairs=True)
    assert fast == Fraction(7, 8)
    assert x.field == F2


def test_exact_probability_preconditions():
    with pytest.raises(ResourceLimitError):
        exact_generation_probability(ORDER3, ORDER3, cap=10)
    with pytest.raises(SpecError):
        exact_generation_probability(ORDER3, FieldMatrix.identity(prime_field(5), 2))


# -- Wilson interval --------------------------------------------------------


@given(st.integers(1, 2000).flatmap(lambda n: st.tuples(st.integers(0, n), st.just(n))))
def test_wilson_matches_statsmodels(kn):
    k, n = kn
    lo, hi = wilson_interval(k, n)
    ref_lo, ref_hi = proportion_confint(k, n, alpha=0.05, method="wilson")
    assert lo == pytest.approx(ref_lo, abs=1e-12)
    assert hi == pytest.approx(ref_hi, abs=1e-12)


# -- Monte Carlo -----------------------------------------------------------


def test_sl3_2_estimate_contains_exact():
    cfg = ExperimentConfig(n=3, p=2, r=7, s=7, sample_count=500, master_seed=1, mode=Mode.EXACT)
    rep = estimate_generation_probability(cfg)
    assert rep.exact == Fraction(7, 8)
    assert rep.ci[0] <= 7 / 8 <= rep.ci[1]
    assert sum(rep.counts.values()) == 500
    assert rep.counts["inconclusive"] == 0


def test_quadratic_pair_in_sl3_is_always_reducible():
    cfg = ExperimentConfig(n=3, p=5, classes=(S(a=[2, 1]), S(a=[1, 1], b=[1])), sample_count=120, master_seed=2)
    rep = estimate_generation_probability(cfg)
    assert rep.p_hat == 0
    assert rep.counts["reducible"] == 120


def test_quadratic_pair_in_sl4_never_generates():
    cfg = ExperimentConfig(n=4, p=3, classes=(S(a=[2, 2]), S(b=[1, 1], c=[1, 1])), sample_count=60, master_seed=3)
    rep = estimate_generation_probability(cfg)
    assert rep.counts["generating"] == 0
    assert rep.counts["reducible"] + rep.counts["proper_irreducible"] == 60


@pytest.mark.parametrize("p", [2, 3])
def test_transvection_pair_never_generates(p):
    tv = S(a=[2, 1])
    rep = estimate_generation_probability(ExperimentConfig(n=3, p=p, classes=(tv, tv), sample_count=100, master_seed=4))
    assert rep.p_hat == 0
    assert rep.counts["reducible"] == 100


def test_estimate_is_deterministic_and_serializable():
    cfg = ExperimentConfig(n=3, p=2, r=7, s=7, sample_count=60, master_seed=9)
    a, b = estimate_generation_probability(cfg), estimate_generation_probability(cfg)
    assert a.to_csv() == b.to_csv() and a.to_json() == b.to_json()
    row = a.to_csv().splitlines()
    assert row[0].split(",") == list(a.CSV_FIELDS)
    doc = json.loads(a.to_json())
    assert doc["seed"] == 9 and "wall_time" not in doc


def test_sample_rng_streams_are_independent_of_order():
    first = [sample_rng(5, i).integers(0, 1 << 30) for i in range(5)]
    again = [sample_rng(5, i).integers(0, 1 << 30) for i in reversed(range(5))][::-1]
    assert first == again
    assert len(set(first)) == 5


def test_classify_pair_buckets():
    rng = np.random.default_rng(0)
    assert classify_pair(ORDER4, ORDER3, rng, 10 ** 6) is PairStatus.GENERATING
    assert classify_pair(ORDER3, ORDER3, rng, 10 ** 6) is PairStatus.REDUCIBLE
    q8 = conjugacy_class(ORDER4)
    assert classify_pair(q8[0], q8[1], rng, 10 ** 6) in (PairStatus.PROPER_IRREDUCIBLE, PairStatus.REDUCIBLE)
    # closure cap below |SL_2(3)| leaves an irreducible pair undecided
    assert classify_pair(ORDER4, ORDER3, rng, 10) is PairStatus.INCONCLUSIVE


def test_config_validation():
    with pytest.raises(SpecError):
        ExperimentConfig(n=3, p=2)
    with pytest.raises(SpecError):
        ExperimentConfig(n=3, p=2, r=7, s=7, sample_count=0)
    with pytest.raises(SpecError):
        ExperimentConfig(n=3, p=2, r=7, s=7, mode="exact", closure_cap=10)


# -- prime-order shapes ----------------------------------------------------


def test_shape_examples():
    shapes = enumerate_prime_order_shapes(3, 2, 7)
    assert all(s.orbit_degree == 3 and s.gamma == 1 and s.a == 0 for s in shapes)
    assert len(shape_types(3, 2, 7)) == 1
    shapes = enumerate_prime_order_shapes(3, 4, 3)
    sig = {(s.a, tuple(sorted(s.counts, reverse=True))): s.gamma for s in shapes}
    assert sig[(1, (1, 1))] == 1
    assert sig[(2, (1, 0))] == 2 and sig[(0, (2, 1))] == 2
    assert (3, (0, 0)) not in sig and (0, (3, 0)) not in sig
    shapes = shape_types(4, 3, 5)
    assert len(shapes) == 1 and shapes[0].orbit_degree == 4 and shapes[0].gamma == 1


def test_shape_preconditions():
    with pytest.raises(UnsupportedCase):
        enumerate_prime_order_shapes(3, 4, 2)
    with pytest.raises(PreconditionError):
        enumerate_prime_order_shapes(3, 2, 4)
    with pytest.raises(PreconditionError):
        enumerate_prime_order_shapes(3, 2, 5)


def test_frobenius_orbits_partition():
    orbits = frobenius_orbits(2, 7)
    assert [o.members for o in orbits] == [(1, 2, 4), (3, 6, 5)]
    for q, r in [(3, 13), (4, 5), (5, 31), (7, 19)]:
        members = sorted(e for o in frobenius_orbits(q, r) for e in o.members)
        assert members == list(range(1, r))


@pytest.mark.parametrize("q, r", [(2, 7), (3, 13), (4, 7), (2, 5), (5, 3), (9, 5)])
def test_orbit_polynomials_are_irreducible_factors(q, r):
    F = field_of_order(q)
    for orb in frobenius_orbits(q, r):
        g = orbit_polynomial(q, r, orb.exponent)
        assert g.degree == len(orb.members) and is_irreducible(g)
        assert g.field == F
        # z^e is a root: g divides x^r - 1
        xr = [0] * r + [1]
        xr[0] = F.neg(1)
        assert (Poly(F, xr) % g).is_zero()


@pytest.mark.parametrize("n, p, k", [(2, 5, 1), (2, 7, 1), (3, 2, 1), (2, 3, 2), (2, 2, 2)])
def test_shapes_match_char_polys_of_order_r_elements(n, p, k):
    F = field_create(p, k)
    G = all_special_linear(n, F)
    for r in prime_orders(n, F.q, odd_only=False):
        brute = {tuple(x.char_poly().coeffs) for x in G if not x.is_scalar() and (x ** r).is_identity()}
        shapes = [s for s in enumerate_prime_order_shapes(n, F.q, r) if s.det_one]
        realized = {tuple(realize_shape(s).char_poly().coeffs) for s in shapes}
        assert realized == brute, (n, F.q, r)
        for s in shapes:
            x = realize_shape(s)
            assert x.det() == 1 and element_order(x) == r


def test_shape_signature_determines_gamma_and_dimension():
    for n, q, r in [(5, 4, 3), (4, 7, 3), (6, 5, 3), (5, 2, 3)]:
        by_sig = {}
        for s in enumerate_prime_order_shapes(n, q, r):
            by_sig.setdefault(s.signature, set()).add((s.gamma, s.dimension))
        assert all(len(v) == 1 for v in by_sig.values())


def test_shape_dimension_matches_class_spec():
    for s in enumerate_prime_order_shapes(4, 4, 3):
        spec = s.class_spec()
        assert gamma(spec) == s.gamma
        assert spec.n == 4


def test_classify_examples():
    rep = classify_good_bad(3, 2, 7, 7)
    assert rep.good_exists and not rep.bad
    assert all(c.gamma + d.gamma <= 3 for c, d in rep.good)
    rep = classify_good_bad(3, 7, 3, 3)
    assert rep.good_exists
    assert rep.max_dimensional_below_half()
    with pytest.raises(UnsupportedCase):
        classify_good_bad(4, 3, 2, 2)
    with pytest.raises(UnsupportedCase):
        classify_good_bad(2, 5, 3, 3)


def test_good_pairs_beat_every_bad_pair():
    rep = classify_good_bad(4, 7, 3, 3)
    dims = lambda p: p[0].dimension + p[1].dimension
    assert rep.bad and rep.good
    assert min(map(dims, rep.good)) > max(map(dims, rep.bad)) == rep.max_bad_dimension


def test_prime_orders():
    assert prime_orders(3, 2) == [3, 7]
    assert prime_orders(3, 2, odd_only=False) == [3, 7]
    assert prime_orders(2, 5, odd_only=False) == [2, 3]


# -- intersection count ----------------------------------------------------


def test_intersection_two_transvections_sl3():
    tv = S(a=[2, 1])
    rep = verify_intersection_formula(ClassTuple((tv, tv)), prime_field(7), samples=100, seed=0)
    assert rep.t == 1 and rep.lower_bound_holds


def test_intersection_generic_equality_sl4():
    tv = S(a=[2, 1, 1])
    rep = verify_intersection_formula(ClassTuple((tv, tv)), prime_field(7), samples=200, seed=0)
    assert rep.t == 2 and rep.lower_bound_holds and rep.equality_rate >= 0.95
    assert rep.to_dict()["histogram"]


def test_intersection_precondition():
    reg = S(a=[1], b=[1], c=[1])
    with pytest.raises(PreconditionError):
        verify_intersection_formula(ClassTuple((reg, reg)), prime_field(7), samples=10, seed=0)


def test_intersection_uses_given_values():
    spec = S(a=[2, 1, 1], values={"a": "1"})
    rep = verify_intersection_formula(ClassTuple((spec, spec, spec)), prime_field(5), samples=30, seed=1)
    assert rep.t == 1 and rep.lower_bound_holds


def test_enumerated_shapes_realize_over_gf7_with_correct_gamma():
    from sltopgen.gflinalg import realize

    F = prime_field(7)
    for spec in enumerate_shapes(4):
        x = realize(spec, F)
        eig = [v for v in range(1, 7) if (x - FieldMatrix.scalar(F, 4, v)).nullity()]
        assert max((x - FieldMatrix.scalar(F, 4, v)).nullity() for v in eig) == gamma(spec)
