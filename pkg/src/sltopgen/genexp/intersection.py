"""Empirical check of the common-eigenvector count for random conjugates.

For classes C_1..C_e of SL_n with largest eigenspaces of dimensions gamma_i,
the chosen eigenspaces of any x_i in C_i meet in dimension at least
t = sum(gamma_i) - n(e - 1), with equality for generic tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..classdata import ClassTuple, eigenspace_intersection_lower_bound, largest_eigenspace_label
from ..errors import PreconditionError
from ..gflinalg.elements import assign_values, random_conjugate, representative_matrix
from ..gflinalg.field import FieldSpec
from ..gflinalg.matrix import rank
from .probability import sample_rng


@dataclass(frozen=True)
class IntersectionReport:
    t: int
    samples: int
    dimensions: tuple[int, ...]
    seed: int

    @property
    def lower_bound_holds(self) -> bool:
        return all(d >= self.t for d in self.dimensions)

    @property
    def equality_rate(self) -> float:
        return sum(d == self.t for d in self.dimensions) / self.samples

    def to_dict(self):
        return {
            "t": self.t,
            "samples": self.samples,
            "lower_bound_holds": self.lower_bound_holds,
            "equality_rate": self.equality_rate,
            "histogram": {str(d): self.dimensions.count(d) for d in sorted(set(self.dimensions))},
            "seed": self.seed,
        }


def verify_intersection_formula(classes: ClassTuple, F: FieldSpec, samples: int, seed: int) -> IntersectionReport:
    """Sample random conjugates and measure the intersection of their largest eigenspaces."""
    t = eigenspace_intersection_lower_bound(classes)
    if t < 1:
        raise PreconditionError(f"sum of gamma minus n(e-1) is {t}; the count needs it to be at least 1")
    if samples < 1:
        raise PreconditionError("samples must be positive")
    n = classes.n
    reps, eigen = [], []
    for spec in classes:
        values = spec.values_map() if spec.concrete_values else assign_values(spec, F)
        if values is None:
            raise PreconditionError(f"{spec} has no determinant-one realization over {F}")
        x = representative_matrix(spec, F, values)
        lam = values[largest_eigenspace_label(spec)]
        reps.append(x)
        eigen.append(F.parse(lam) if isinstance(lam, str) else F.coerce(lam))
    dims = []
    for i in range(samples):
        rng = sample_rng(seed, i)
        stack = []
        for x, lam in zip(reps, eigen):
            y = random_conjugate(x, rng)
            shifted = y.data.copy()
            idx = np.arange(n)
            shifted[idx, idx] = F.vsub(shifted[idx, idx], lam)
            stack.append(shifted)
        dims.append(n - rank(F, np.vstack(stack)))
    return IntersectionReport(t, samples, tuple(dims), seed)
