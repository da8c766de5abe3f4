"""Generation experiments in finite special linear groups."""

from .groups import (
    DEFAULT_CLOSURE_CAP,
    ClosureResult,
    ClosureStatus,
    bfs_group_closure,
    conjugacy_class,
    generates_special_linear,
    special_linear_order,
    transvection_generators,
)
from .intersection import IntersectionReport, verify_intersection_formula
from .probability import (
    ExperimentConfig,
    GenerationReport,
    Mode,
    PairStatus,
    classify_pair,
    estimate_generation_probability,
    exact_generation_probability,
    sample_rng,
    wilson_interval,
)
from .shapes import (
    ClassShape,
    GoodBadReport,
    classify_good_bad,
    enumerate_prime_order_shapes,
    frobenius_orbits,
    max_dimensional_shapes,
    orbit_polynomial,
    prime_orders,
    realize_shape,
    shape_types,
)

__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "ClosureResult",
    "ClosureStatus",
    "bfs_group_closure",
    "conjugacy_class",
    "generates_special_linear",
    "special_linear_order",
    "transvection_generators",
    "IntersectionReport",
    "verify_intersection_formula",
    "ExperimentConfig",
    "GenerationReport",
    "Mode",
    "PairStatus",
    "classify_pair",
    "estimate_generation_probability",
    "exact_generation_probability",
    "sample_rng",
    "wilson_interval",
    "ClassShape",
    "GoodBadReport",
    "classify_good_bad",
    "enumerate_prime_order_shapes",
    "frobenius_orbits",
    "max_dimensional_shapes",
    "orbit_polynomial",
    "prime_orders",
    "realize_shape",
    "shape_types",
]
