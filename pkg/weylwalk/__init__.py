"""Weighted reflectable walks in the orthant: asymptotics and an exact counting oracle."""

from .asymptotics import asymptotic_formula, constant_factor, evaluate_formula, exponential_growth
from .critical import contributing_points, enumerate_critical_points, minimal_point
from .stepset import inventory_eval, pq_eval, validate
from .weighting import build_weights, classify_central, classify_symmetric, factor_weighting, weight_profile

__all__ = [
    "asymptotic_formula",
    "build_weights",
    "classify_central",
    "classify_symmetric",
    "constant_factor",
    "contributing_points",
    "enumerate_critical_points",
    "evaluate_formula",
    "exponential_growth",
    "factor_weighting",
    "inventory_eval",
    "minimal_point",
    "pq_eval",
    "validate",
    "weight_profile",
]
