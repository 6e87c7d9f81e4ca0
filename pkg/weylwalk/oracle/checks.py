from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..domain import ArithmeticMode, Step, StepSet
from ..logging import ServiceLogger
from ..weighting import classify_central
from .domain import DpMode, EvaluationCheck
from .stepper import enumerate_walks

logger = ServiceLogger("oracle")


def verify_evaluation(
    s: StepSet,
    w: Mapping[Step, Fraction],
    n_max: int,
    *,
    budget_bytes: int = 2 * 1024**3,
) -> EvaluationCheck:
    """Check sum_i q(i; n) * alpha^i * beta^n against the weighted total for every n <= n_max."""
    weighting = classify_central(s, w, ArithmeticMode.EXACT)
    alpha = tuple(Fraction(a) for a in weighting.alpha)
    beta = Fraction(weighting.beta)

    endpoints = enumerate_walks(s, n_max, DpMode.EXACT, budget_bytes=budget_bytes, keep_layers=True)
    weighted = enumerate_walks(s, n_max, DpMode.EXACT, w, budget_bytes=budget_bytes)
    assert endpoints.layers is not None and weighted.totals is not None

    for n, layer in enumerate(endpoints.layers):
        endpoint_sum = Fraction(0)
        for point, count in layer.items():
            term = Fraction(count)
            for a, coordinate in zip(alpha, point):
                term *= a**coordinate
            endpoint_sum += term
        endpoint_sum *= beta**n
        if endpoint_sum != weighted.totals[n]:
            logger.warning("evaluation identity failed", n=n, endpoint_sum=endpoint_sum, total=weighted.totals[n])
            return EvaluationCheck(
                passed=False,
                n_max=n_max,
                first_failure=n,
                weighted_total=weighted.totals[n],
                endpoint_sum=endpoint_sum,
            )
    logger.debug("evaluation identity holds", n_max=n_max)
    return EvaluationCheck(passed=True, n_max=n_max)
