"""Conjugacy classes of SL_n over an algebraically closed field.

A noncentral class is recorded by its Jordan type: a set of opaque eigenvalue
labels, each carrying the partition of its Jordan block sizes.  Everything in
this module (largest eigenspace, minimal polynomial degree, class dimension,
the topological generation criterion) depends only on that combinatorial data,
so no field arithmetic happens here.  Concrete eigenvalues, when attached, are
strings interpreted by :mod:`sltopgen.gflinalg`.

The generation criterion is stated for uncountable algebraically closed
fields; in characteristic zero it holds over any field, and in positive
characteristic over any algebraically closed field that is not algebraic over
a finite field.  We treat it as field independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, ResourceLimitError, SpecError, UnsupportedCase

Partition = tuple[int, ...]

ENUMERATION_CAP = 12
ORDER_MOD_CENTER = ("involution", "other")


def _as_partition(blocks: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(b) for b in blocks), reverse=True))
    if not parts:
        raise SpecError("empty block partition")
    if parts[-1] < 1:
        raise SpecError(f"block sizes must be positive, got {parts}")
    return parts


def transpose(parts: Sequence[int]) -> Partition:
    """Conjugate partition: column lengths of the Young diagram."""
    if not parts:
        return ()
    return tuple(sum(1 for b in parts if b > j) for j in range(max(parts)))


@dataclass(frozen=True)
class EigenBlockProfile:
    """Eigenvalue labels with their Jordan block partitions, sorted by label."""

    entries: tuple[tuple[str, Partition], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise SpecError(f"duplicate eigenvalue labels in {labels}")
        if not self.entries:
            raise SpecError("profile has no eigenvalues")
        canon = tuple(sorted((str(label), _as_partition(blocks)) for label, blocks in self.entries))
        object.__setattr__(self, "entries", canon)

    @classmethod
    def from_mapping(cls, blocks: Mapping[str, Iterable[int]]) -> "EigenBlockProfile":
        return cls(tuple((label, tuple(b)) for label, b in blocks.items()))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    @property
    def size(self) -> int:
        return sum(sum(parts) for _, parts in self.entries)

    def blocks(self, label: str) -> Partition:
        for lab, parts in self.entries:
            if lab == label:
                return parts
        raise KeyError(label)

    def shape_key(self) -> tuple[Partition, ...]:
        """Partitions in descending order; equal keys mean equal up to relabelling."""
        return tuple(sorted((parts for _, parts in self.entries), reverse=True))


@dataclass(frozen=True)
class ClassSpec:
    """A noncentral conjugacy class of SL_n, up to scalar rescaling.

    ``order_mod_center`` is only consulted when ``n == 2``.  ``concrete_values``
    maps labels to field element strings and is only used when realizing
    matrices over a finite field.
    """

    n: int
    profile: EigenBlockProfile
    order_mod_center: str | None = None
    concrete_values: tuple[tuple[str, str], ...] | None = field(default=None)

    def __post_init__(self):
        if not isinstance(self.profile, EigenBlockProfile):
            object.__setattr__(self, "profile", EigenBlockProfile.from_mapping(self.profile))
        if self.n < 2:
            raise SpecError(f"n must be at least 2, got {self.n}")
        if self.profile.size != self.n:
            raise SpecError(f"block sizes sum to {self.profile.size}, expected n = {self.n}")
        entries = self.profile.entries
        if len(entries) == 1 and all(b == 1 for b in entries[0][1]):
            raise SpecError("central class (a single eigenvalue with only 1x1 blocks)")
        if self.order_mod_center is not None and self.order_mod_center not in ORDER_MOD_CENTER:
            raise SpecError(f"order_mod_center must be one of {ORDER_MOD_CENTER}")
        if self.concrete_values is not None:
            values = self.concrete_values
            if isinstance(values, Mapping):
                values = values.items()
            values = tuple(sorted((str(k), str(v)) for k, v in values))
            if {k for k, _ in values} != set(self.profile.labels):
                raise SpecError("concrete values must cover exactly the profile labels")
            object.__setattr__(self, "concrete_values", values)

    @classmethod
    def from_blocks(cls, n: int | None = None, order_mod_center=None, values=None, **blocks) -> "ClassSpec":
        """Convenience constructor: ``ClassSpec.from_blocks(a=[2, 1], b=[1])``."""
        profile = EigenBlockProfile.from_mapping(blocks)
        return cls(profile.size if n is None else n, profile, order_mod_center, values)

    def __hash__(self):
        # cached: specs are hashed on every memoized class-function call
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.n, self.profile, self.order_mod_center, self.concrete_values))
            object.__setattr__(self, "_hash", h)
            return h

    def values_map(self) -> dict[str, str]:
        return dict(self.concrete_values or ())

    def shape_key(self) -> tuple[Partition, ...]:
        return self.profile.shape_key()

    def __str__(self):
        body = ", ".join(f"{label}:{list(parts)}" for label, parts in self.profile.entries)
        return f"SL_{self.n}{{{body}}}"


@dataclass(frozen=True)
class ClassTuple:
    """An ordered tuple of classes C_1, ..., C_e of the same SL_n."""

    classes: tuple[ClassSpec, ...]

    def __post_init__(self):
        classes = tuple(self.classes)
        if not classes:
            raise SpecError("a class tuple needs at least one class")
        ns = {c.n for c in classes}
        if len(ns) != 1:
            raise SpecError(f"classes live in different dimensions: {sorted(ns)}")
        object.__setattr__(self, "classes", classes)

    @property
    def n(self) -> int:
        return self.classes[0].n

    @property
    def e(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)


class Outcome(str, enum.Enum):
    GENERATING = "Generating"
    EIGENSPACE = "EigenspaceObstruction"
    QUADRATIC_PAIR = "QuadraticPairObstruction"
    SL2_INVOLUTION = "SL2InvolutionObstruction"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: int | None = None

    def __post_init__(self):
        if (self.outcome is Outcome.EIGENSPACE) != (self.witness is not None):
            raise SpecError("witness is present exactly for eigenspace obstructions")
        if self.witness is not None and self.witness < 1:
            raise SpecError("eigenspace witness must be positive")

    @property
    def generating(self) -> bool:
        return self.outcome is Outcome.GENERATING


@lru_cache(maxsize=8192)
def gamma(spec: ClassSpec) -> int:
    """Dimension of the largest eigenspace (most Jordan blocks on one eigenvalue)."""
    return max(len(parts) for _, parts in spec.profile.entries)


@lru_cache(maxsize=8192)
def minimal_polynomial_degree(spec: ClassSpec) -> int:
    return sum(parts[0] for _, parts in spec.profile.entries)


def is_quadratic(spec: ClassSpec) -> bool:
    return minimal_polynomial_degree(spec) == 2


@lru_cache(maxsize=8192)
def centralizer_dimension(spec: ClassSpec) -> int:
    """dim C_G(x): sum of squared column lengths over all labels, minus one."""
    return sum(sum(m * m for m in transpose(parts)) for _, parts in spec.profile.entries) - 1


def class_dimension(spec: ClassSpec) -> int:
    return spec.n * spec.n - 1 - centralizer_dimension(spec)


def dim_omega(classes: ClassTuple) -> int:
    return sum(class_dimension(c) for c in classes)


def eigenspace_intersection_lower_bound(classes: ClassTuple) -> int:
    """Forced dimension of the common intersection of largest eigenspaces."""
    return max(0, sum(gamma(c) for c in classes) - classes.n * (classes.e - 1))


def generation_criterion(classes: ClassTuple) -> Verdict:
    """Decide whether some tuple in C_1 x ... x C_e topologically generates SL_n.

    For n >= 3: generating iff sum(gamma) <= n(e-1) and not (e == 2 with both
    classes quadratic).  For n == 2 only pairs are decided, using the
    involution-modulo-center annotation.
    """
    n, e = classes.n, classes.e
    if n == 2:
        if e != 2:
            raise UnsupportedCase(f"SL_2 is only decided for pairs of classes, got e = {e}")
        if any(c.order_mod_center is None for c in classes):
            raise SpecError("SL_2 classes must carry order_mod_center")
        if all(c.order_mod_center == "involution" for c in classes):
            return Verdict(Outcome.SL2_INVOLUTION)
        return Verdict(Outcome.GENERATING)
    excess = sum(gamma(c) for c in classes) - n * (e - 1)
    if excess > 0:
        return Verdict(Outcome.EIGENSPACE, excess)
    if e == 2 and all(is_quadratic(c) for c in classes):
        return Verdict(Outcome.QUADRATIC_PAIR)
    return Verdict(Outcome.GENERATING)


def min_generators(spec: ClassSpec) -> int:
    """Least d such that some d elements of the class generate SL_n topologically."""
    n = spec.n
    if n == 2:
        raise UnsupportedCase("min_generators is not defined for SL_2")
    g = gamma(spec)
    d = max(2, -(-n // (n - g)))
    if d == 2 and is_quadratic(spec):
        d = 3
    return d


@lru_cache(maxsize=8192)
def restrict_class(spec: ClassSpec) -> ClassSpec:
    """Shrink one minimal block on a largest eigenspace, giving a class of SL_{n-1}.

    Ties are broken by taking the first label (in sorted order) among those
    with the most blocks.  A 1x1 block is removed outright.
    """
    label = largest_eigenspace_label(spec)
    entries = []
    for lab, parts in spec.profile.entries:
        if lab == label:
            k = parts[-1]
            parts = parts[:-1] + ((k - 1,) if k > 1 else ())
            if not parts:
                continue
        entries.append((lab, parts))
    values = None
    if spec.concrete_values is not None:
        kept = {lab for lab, _ in entries}
        values = tuple((lab, v) for lab, v in spec.concrete_values if lab in kept)
    try:
        return ClassSpec(spec.n - 1, EigenBlockProfile(tuple(entries)), spec.order_mod_center, values)
    except SpecError as exc:
        raise PreconditionError(f"restriction of {spec} collapses: {exc}") from None


def restrict_tuple(classes: ClassTuple) -> ClassTuple:
    """Restrict every class of a generating tuple from SL_n to SL_{n-1}."""
    if classes.n < 4:
        raise PreconditionError("restriction requires n >= 4")
    verdict = generation_criterion(classes)
    if not verdict.generating:
        raise PreconditionError(f"restriction requires a generating tuple, got {verdict.outcome.value}")
    return ClassTuple(tuple(restrict_class(c) for c in classes))


def _partitions(n: int, largest: int | None = None):
    """Partitions of n in descending lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest or n), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _label(i: int) -> str:
    return chr(ord("a") + i) if i < 26 else f"l{i}"


def spec_from_shape(shape: Sequence[Partition], n: int | None = None) -> ClassSpec:
    """Build a spec with labels a, b, c, ... from a list of partitions."""
    shape = sorted((tuple(p) for p in shape), reverse=True)
    profile = EigenBlockProfile(tuple((_label(i), p) for i, p in enumerate(shape)))
    return ClassSpec(profile.size if n is None else n, profile)


@lru_cache(maxsize=None)
def _shape_keys(n: int) -> tuple[tuple[Partition, ...], ...]:
    pool = [p for size in range(n, 0, -1) for p in _partitions(size)]
    pool.sort(reverse=True)
    found = []

    def extend(start, remaining, chosen):
        if remaining == 0:
            found.append(tuple(chosen))
            return
        for i in range(start, len(pool)):
            p = pool[i]
            if sum(p) <= remaining:
                chosen.append(p)
                extend(i, remaining - sum(p), chosen)
                chosen.pop()

    extend(0, n, [])
    central = ((1,) * n,)
    keys = sorted((k for k in found if k != central), reverse=True)
    keys.sort(key=len)
    return tuple(keys)


def enumerate_shapes(n: int, max_labels: int | None = None, cap: int = ENUMERATION_CAP) -> list[ClassSpec]:
    """All noncentral Jordan types of SL_n up to relabelling, in canonical order."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if n > cap:
        raise ResourceLimitError(f"shape enumeration capped at n = {cap}, got {n}")
    keys = _shape_keys(n)
    if max_labels is not None:
        keys = tuple(k for k in keys if len(k) <= max_labels)
    return [spec_from_shape(k, n) for k in keys]


@lru_cache(maxsize=8192)
def largest_eigenspace_label(spec: ClassSpec) -> str:
    """First label (sorted order) whose eigenspace has dimension gamma(spec)."""
    g = gamma(spec)
    return next(lab for lab, parts in spec.profile.entries if len(parts) == g)
