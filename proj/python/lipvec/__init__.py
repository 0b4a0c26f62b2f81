"""Exact gauges, dyadic pseudo-seminorms and Lipschitz structures over the rationals."""

from ._core import (
    BalancedPolytope,
    Chain,
    CircledSet,
    DyadicPseudoSeminorm,
    Gauge,
    LipschitzStructure,
    LipvecError,
    MapSpec,
    PseudoMetric,
    chain_from_convex,
    check_axioms,
    check_map,
    check_sandwich,
    generate_structure,
    local_constants,
    product_structure,
    run_cli,
    scale_chain,
    structure_contains,
    sup_over,
    validate_chain,
    validated,
)

__all__ = [
    "BalancedPolytope",
    "Chain",
    "CircledSet",
    "DyadicPseudoSeminorm",
    "Gauge",
    "LipschitzStructure",
    "LipvecError",
    "MapSpec",
    "PseudoMetric",
    "chain_from_convex",
    "check_axioms",
    "check_map",
    "check_sandwich",
    "generate_structure",
    "local_constants",
    "product_structure",
    "run_cli",
    "scale_chain",
    "structure_contains",
    "sup_over",
    "validate_chain",
    "validated",
]
