"""Generation probabilities in tiny SL_n(q): exact counts and seeded Monte Carlo."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from ..classdata import ClassSpec
from ..errors import PreconditionError, ResourceLimitError, SpecError
from ..gflinalg.elements import random_conjugate, realize
from ..gflinalg.field import FieldSpec, field_create
from ..gflinalg.matrix import FieldMatrix
from ..gflinalg.meataxe import endomorphism_dimension, irreducibility_test
from .groups import DEFAULT_CLOSURE_CAP, ClosureStatus, conjugacy_class, generates_special_linear, special_linear_order
from .shapes import max_dimensional_shapes, realize_shape, shape_types

Z95 = NormalDist().inv_cdf(0.975)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials < 1:
        raise PreconditionError("need at least one trial")
    if not 0 <= successes <= trials:
        raise PreconditionError("successes must lie in [0, trials]")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, centre - half), min(1.0, centre + half)


def _generates(x: FieldMatrix, y: FieldMatrix, cap: int) -> bool:
    res = generates_special_linear([x, y], cap=cap)
    if res.status is ClosureStatus.CAP_EXCEEDED:
        raise ResourceLimitError(f"closure exceeded cap {cap}")
    return res.order == special_linear_order(x.n, x.field.q)


def exact_generation_probability(
    C: FieldMatrix, D: FieldMatrix, cap: int = DEFAULT_CLOSURE_CAP, full_pairs: bool = False
) -> Fraction:
    """Proportion of pairs in C x D generating SL_n(q), C and D given by representatives.

    Conjugating a pair by g preserves whether it generates, so fixing the
    first element at the representative gives the same proportion; set
    ``full_pairs`` to enumerate both classes instead.
    """
    if C.field != D.field or C.n != D.n:
        raise SpecError("representatives must share a field and size")
    order = special_linear_order(C.n, C.field.q)
    if order > cap:
        raise ResourceLimitError(f"|SL_{C.n}({C.field.q})| = {order} exceeds the closure cap {cap}")
    Ds = conjugacy_class(D, cap)
    if not full_pairs:
        hits = sum(_generates(C, d, cap) for d in Ds)
        return Fraction(hits, len(Ds))
    Cs = conjugacy_class(C, cap)
    hits = sum(_generates(c, d, cap) for c in Cs for d in Ds)
    return Fraction(hits, len(Cs) * len(Ds))


class Mode(str, enum.Enum):
    EXACT = "exact"
    MONTECARLO = "montecarlo"


@dataclass
class ExperimentConfig:
    n: int
    p: int
    k: int = 1
    classes: tuple[ClassSpec, ClassSpec] | None = None
    r: int | None = None
    s: int | None = None
    sample_count: int = 500
    master_seed: int = 0
    closure_cap: int = DEFAULT_CLOSURE_CAP
    mode: Mode = Mode.MONTECARLO

    def __post_init__(self):
        self.mode = Mode(self.mode)
        if self.sample_count < 1:
            raise SpecError("sample_count must be at least 1")
        if self.classes is None and (self.r is None or self.s is None):
            raise SpecError("give either two classes or the orders r and s")
        if self.classes is not None and len(self.classes) != 2:
            raise SpecError("exactly two classes are needed")
        if self.mode is Mode.EXACT and self.closure_cap < special_linear_order(self.n, self.q):
            raise SpecError("exact mode needs closure_cap >= |SL_n(q)|")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def field(self) -> FieldSpec:
        return field_create(self.p, self.k)

    def representatives(self) -> tuple[FieldMatrix, FieldMatrix]:
        """Class representatives; for orders r, s the first top-dimensional shape of each."""
        if self.classes is not None:
            return tuple(realize(c, self.field) for c in self.classes)
        out = []
        for t in (self.r, self.s):
            top = max_dimensional_shapes(shape_types(self.n, self.q, t))[0]
            out.append(realize_shape(top))
        return tuple(out)

    def shape_labels(self) -> str:
        if self.classes is not None:
            return " x ".join(str(c) for c in self.classes)
        return f"order {self.r} x order {self.s}"

    def to_dict(self):
        return {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "classes": None if self.classes is None else [str(c) for c in self.classes],
            "r": self.r,
            "s": self.s,
            "sample_count": self.sample_count,
            "master_seed": self.master_seed,
            "closure_cap": self.closure_cap,
            "mode": self.mode.value,
        }


class PairStatus(str, enum.Enum):
    GENERATING = "generating"
    REDUCIBLE = "reducible"
    PROPER_IRREDUCIBLE = "proper_irreducible"
    INCONCLUSIVE = "inconclusive"


@dataclass
class GenerationReport:
    config: ExperimentConfig
    counts: dict[str, int]
    p_hat: float
    ci: tuple[float, float]
    seed: int
    wall_time: float = field(default=0.0, compare=False)
    exact: Fraction | None = None

    CSV_FIELDS = (
        "n", "p", "k", "r", "s", "shapes", "samples", "generating", "reducible",
        "proper_irreducible", "inconclusive", "p_hat", "ci_lo", "ci_hi", "seed",
    )

    def csv_row(self) -> dict:
        c = self.config
        return {
            "n": c.n, "p": c.p, "k": c.k,
            "r": "" if c.r is None else c.r, "s": "" if c.s is None else c.s,
            "shapes": c.shape_labels(), "samples": c.sample_count,
            **{k: self.counts[k] for k in (s.value for s in PairStatus)},
            "p_hat": f"{self.p_hat:.6f}", "ci_lo": f"{self.ci[0]:.6f}", "ci_hi": f"{self.ci[1]:.6f}",
            "seed": self.seed,
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.DictWriter(out, fieldnames=self.CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerow(self.csv_row())
        return out.getvalue()

    def to_dict(self, include_timing: bool = False):
        d = {
            "config": self.config.to_dict(),
            "counts": dict(self.counts),
            "p_hat": self.p_hat,
            "ci": list(self.ci),
            "seed": self.seed,
        }
        if self.exact is not None:
            d["exact"] = str(self.exact)
        if include_timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"


def classify_pair(x: FieldMatrix, y: FieldMatrix, rng: np.random.Generator, closure_cap: int) -> PairStatus:
    """Sort a pair into one of the four buckets; only an exact closure certifies generation.

    An irreducible pair whose commutant is larger than the scalars acts
    irreducibly but not absolutely irreducibly, so it lies in a proper
    subgroup and counts as proper_irreducible.
    """
    res = irreducibility_test([x, y], rng)
    if res.reducible:
        return PairStatus.REDUCIBLE
    if not res.irreducible:
        return PairStatus.INCONCLUSIVE
    if endomorphism_dimension([x, y]) > 1:
        return PairStatus.PROPER_IRREDUCIBLE
    if special_linear_order(x.n, x.field.q) > closure_cap:
        return PairStatus.INCONCLUSIVE
    closure = generates_special_linear([x, y], cap=closure_cap)
    if closure.status is ClosureStatus.CAP_EXCEEDED:
        return PairStatus.INCONCLUSIVE
    if closure.order == special_linear_order(x.n, x.field.q):
        return PairStatus.GENERATING
    return PairStatus.PROPER_IRREDUCIBLE


def sample_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream per sample, so results do not depend on evaluation order."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def estimate_generation_probability(config: ExperimentConfig) -> GenerationReport:
    start = time.perf_counter()
    C, D = config.representatives()
    counts = {s.value: 0 for s in PairStatus}
    for i in range(config.sample_count):
        rng = sample_rng(config.master_seed, i)
        x = random_conjugate(C, rng)
        y = random_conjugate(D, rng)
        counts[classify_pair(x, y, rng, config.closure_cap).value] += 1
    gen = counts[PairStatus.GENERATING.value]
    exact = None
    if config.mode is Mode.EXACT:
        exact = exact_generation_probability(C, D, config.closure_cap)
    return GenerationReport(
        config,
        counts,
        gen / config.sample_count,
        wilson_interval(gen, config.sample_count),
        config.master_seed,
        time.perf_counter() - start,
        exact,
    )
