from __future__ import annotations

from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .domain import (
    ContributingPoint,
    ContributingSet,
    CriticalPoint,
    MinimalPoint,
    ParitySign,
    Step,
    StepSet,
)
from .stepset import inventory_eval
from .weighting import check_alpha, weight_profile


def sign_patterns(dimension: int) -> List[Tuple[int, ...]]:
    """All 2^d sign vectors; bit i of the counter set means a minus on axis i."""
    return [
        tuple(-1 if (counter >> axis) & 1 else 1 for axis in range(dimension)) for counter in range(2**dimension)
    ]


def s_argument(alpha: Sequence[Fraction], signs: Sequence[int]) -> Tuple[Fraction, ...]:
    # large-weight coordinates sit at the residue x_j = 1 and keep alpha_j with a plus sign
    return tuple(a if a > 1 else Fraction(sign) for a, sign in zip(alpha, signs))


def enumerate_critical_points(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> List[CriticalPoint]:
    values = check_alpha(alpha, s.dimension)
    points = []
    for signs in sign_patterns(s.dimension):
        x = tuple(sign * a for sign, a in zip(signs, values))
        product = Fraction(1)
        for coordinate in x:
            product *= coordinate
        # alpha / x is the sign vector itself
        inventory_at_signs = inventory_eval(s, signs, omega)
        t = 1 / (product * inventory_at_signs) if inventory_at_signs != 0 else None
        argument = s_argument(values, signs)
        points.append(
            CriticalPoint(
                signs=signs,
                x=x,
                t=t,
                s_argument=argument,
                s_value=inventory_eval(s, argument, omega),
            )
        )
    return points


def minimal_point(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> MinimalPoint:
    profile = weight_profile(s, alpha, omega)
    return MinimalPoint(x=profile.alpha_minus, t=profile.t_minimal)


def contributing_points(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> ContributingSet:
    """Candidates flip signs only where alpha_j < 1 and must reach |S| = S(alpha+)."""
    values = check_alpha(alpha, s.dimension)
    alpha_plus = tuple(max(a, Fraction(1)) for a in values)
    s_plus = inventory_eval(s, alpha_plus, omega)

    points = []
    for signs in sign_patterns(s.dimension):
        if any(sign < 0 and a >= 1 for sign, a in zip(signs, values)):
            continue
        argument = s_argument(values, signs)
        value = inventory_eval(s, argument, omega)
        if abs(value) != s_plus:
            continue
        parity = ParitySign.ALTERNATING if value == -s_plus else ParitySign.ALWAYS_PLUS
        points.append(ContributingPoint(signs=signs, s_argument=argument, s_value=value, parity=parity))
    return ContributingSet(s_plus=s_plus, points=points)
