"""Leading-order asymptotics of weighted orthant walks.

q(n) ~ gamma * (beta * S(alpha+))^n * n^(-r/2 - m), with gamma summed over the
contributing critical points. Everything up to the final square roots and pi
stays in exact rationals.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .critical import contributing_points
from .domain import (
    AsymptoticFormula,
    CentralWeighting,
    ContributingPoint,
    FactorBreakdown,
    FactoredWeighting,
    ModelWeighting,
    ParitySign,
    PjEvaluation,
    PointBreakdown,
    Step,
    StepSet,
)
from .errors import FactorDomainError, FormulaOverflowError, ValidationError
from .stepset import pq_eval
from .weighting import check_alpha

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_LOG_FLOAT_MAX = math.log(sys.float_info.max)


def factor_case(alpha_j: Fraction, z_sign: int) -> str:
    if alpha_j > 1:
        return "large"
    if alpha_j == 1:
        return "unit"
    return "small_plus" if z_sign > 0 else "small_minus"


def constant_factor(
    axis: int,
    alpha_j: Fraction,
    z_sign: int,
    s_plus: Fraction,
    p_j: Optional[Fraction],
) -> float:
    """c(z_j) for one axis of a contributing point."""
    alpha_j = Fraction(alpha_j)
    if alpha_j <= 0:
        raise FactorDomainError(f"alpha_{axis + 1} = {alpha_j} is not positive")
    if z_sign not in (1, -1):
        raise FactorDomainError(f"sign on axis {axis + 1} must be +1 or -1, got {z_sign}")
    if z_sign < 0 and alpha_j >= 1:
        raise FactorDomainError(f"negative sign on axis {axis + 1} needs alpha < 1, got {alpha_j}")

    if alpha_j > 1:
        return float(1 - 1 / alpha_j**2)

    if p_j is None or p_j <= 0:
        raise FactorDomainError(f"P_{axis + 1} must be positive, got {p_j}")
    two_p = 2.0 * float(p_j)
    s = float(s_plus)
    if alpha_j == 1:
        return _INV_SQRT_2PI * two_p**-0.5 * math.sqrt(s) * 2.0

    a = float(alpha_j)
    denominator = (1.0 - a) ** 2 if z_sign > 0 else (1.0 + a) ** 2
    return _INV_SQRT_2PI * two_p**-1.5 * s**1.5 * 2.0 / denominator


def oriented_p(
    s: StepSet,
    axis: int,
    point: ContributingPoint,
    s_plus: Fraction,
    omega: Optional[Mapping[Step, Fraction]] = None,
    pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT,
) -> Fraction:
    """P_j at the contributing point, oriented so the Hessian entry stays positive.

    At sign-flipped points of diagonal step sets P_j itself can be negative;
    multiplying by sign_j * S(zeta) / S(alpha+) restores the orientation and
    leaves P_j unchanged wherever it was already positive.
    """
    if pj_evaluation is PjEvaluation.AT_ONES:
        ones = [Fraction(1)] * (s.dimension - 1)
        p_value, _ = pq_eval(s, axis, ones, omega)
        return p_value
    rest = point.s_argument[:axis] + point.s_argument[axis + 1 :]
    p_value, _ = pq_eval(s, axis, rest, omega)
    return p_value * point.signs[axis] * (point.s_value / s_plus)


def unpack_weighting(weighting: ModelWeighting) -> Tuple[Tuple[Fraction, ...], Fraction, Optional[dict]]:
    if isinstance(weighting, CentralWeighting):
        return tuple(weighting.alpha), Fraction(weighting.beta), None
    if isinstance(weighting, FactoredWeighting):
        return tuple(weighting.alpha), Fraction(1), weighting.omega.weights
    raise ValidationError(f"unsupported weighting {type(weighting).__name__}")


def exponential_growth(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> Fraction:
    """S(alpha+), the growth base before any beta rescale."""
    return contributing_points(s, alpha, omega).s_plus


def subexponential_exponent(s: StepSet, alpha: Sequence[Fraction]) -> Fraction:
    values = check_alpha(alpha, s.dimension)
    r = sum(1 for a in values if a <= 1)
    m = sum(1 for a in values if a < 1)
    return Fraction(-r, 2) - m


def expected_excursion_exponent(dimension: int) -> Fraction:
    return Fraction(-3 * dimension, 2)


def asymptotic_formula(
    s: StepSet,
    weighting: ModelWeighting,
    *,
    pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT,
) -> AsymptoticFormula:
    alpha, beta, omega = unpack_weighting(weighting)
    contributing = contributing_points(s, alpha, omega)
    s_plus = contributing.s_plus

    breakdown: List[PointBreakdown] = []
    gamma_even = 0.0
    gamma_odd = 0.0
    for point in contributing.points:
        factors = []
        product = 1.0
        for axis, alpha_j in enumerate(alpha):
            sign = point.signs[axis] if alpha_j < 1 else 1
            p_value = None if alpha_j > 1 else oriented_p(s, axis, point, s_plus, omega, pj_evaluation)
            value = constant_factor(axis, alpha_j, sign, s_plus, p_value)
            factors.append(
                FactorBreakdown(
                    axis=axis,
                    alpha=alpha_j,
                    sign=sign,
                    case=factor_case(alpha_j, sign),
                    p_value=p_value,
                    value=value,
                )
            )
            product *= value
        parity = -1.0 if point.parity is ParitySign.ALTERNATING else 1.0
        gamma_even += product
        gamma_odd += parity * product
        breakdown.append(
            PointBreakdown(
                signs=point.signs,
                s_argument=point.s_argument,
                parity=point.parity,
                factors=factors,
                product=product,
            )
        )

    return AsymptoticFormula(
        beta=beta,
        base=s_plus,
        exponent=subexponential_exponent(s, alpha),
        gamma_even=gamma_even,
        gamma_odd=gamma_odd,
        breakdown=breakdown,
        pj_evaluation=pj_evaluation,
    )


def log_formula(f: AsymptoticFormula, n: int) -> float:
    """log |q(n)| predicted by the formula; -inf when the parity constant vanishes."""
    if n < 1:
        raise ValidationError(f"n must be at least 1, got {n}")
    gamma = f.gamma(n)
    if gamma == 0:
        return -math.inf
    return n * math.log(float(f.growth)) + float(f.exponent) * math.log(n) + math.log(abs(gamma))


def evaluate_formula(f: AsymptoticFormula, n: int) -> float:
    log_value = log_formula(f, n)
    if log_value == -math.inf:
        return 0.0
    if log_value > _LOG_FLOAT_MAX:
        raise FormulaOverflowError({"n": n, "log_value": log_value})
    return math.copysign(math.exp(log_value), f.gamma(n))
