from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple

from .domain import (
    ArithmeticMode,
    CentralWeighting,
    FactoredWeighting,
    Step,
    StepSet,
    StepWeights,
    SymmetricWeighting,
    WeightProfile,
    format_step,
)
from .errors import (
    InexactRootError,
    NonPositiveWeightError,
    NotCentralError,
    NotFactorableError,
    NotSymmetricError,
    ValidationError,
)
from .stepset import inventory_eval, monomial, reflect


def exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """Square root of a non-negative rational when both terms are perfect squares."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return Fraction(root_num, root_den)
    return None


def approximate_sqrt(value: Fraction) -> Fraction:
    return Fraction(math.sqrt(value))


def _root(value: Fraction) -> Tuple[Fraction, bool]:
    root = exact_sqrt(value)
    if root is not None:
        return root, True
    return approximate_sqrt(value), False


def check_weights(s: StepSet, w: Mapping[Step, Fraction]) -> StepWeights:
    missing = [format_step(step) for step in s.steps if step not in w]
    extra = [format_step(step) for step in w if step not in s]
    if missing or extra:
        raise ValidationError({"missing_steps": missing, "unknown_steps": extra})
    weights = {step: Fraction(w[step]) for step in s.steps}
    for step, value in weights.items():
        if value <= 0:
            raise NonPositiveWeightError(f"weight of {format_step(step)} is {value}")
    return weights


def check_alpha(alpha: Sequence[Fraction], dimension: int) -> Tuple[Fraction, ...]:
    if len(alpha) != dimension:
        raise ValidationError(f"alpha has {len(alpha)} entries, expected {dimension}")
    values = tuple(Fraction(a) for a in alpha)
    for axis, value in enumerate(values):
        if value <= 0:
            raise NonPositiveWeightError(f"alpha_{axis + 1} = {value}")
    return values


def build_weights(
    s: StepSet,
    alpha: Sequence[Fraction],
    beta: Fraction = Fraction(1),
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> StepWeights:
    """w_sigma = beta * omega_sigma * prod alpha_i^sigma_i."""
    values = check_alpha(alpha, s.dimension)
    inverse = tuple(1 / a for a in values)
    weights: StepWeights = {}
    for step in s.steps:
        scale = Fraction(beta) if omega is None else Fraction(beta) * omega[step]
        weights[step] = scale * monomial(step, values, inverse)
    return weights


def _alpha_squares(s: StepSet, w: StepWeights) -> Tuple[Optional[Tuple[Fraction, ...]], Optional[dict]]:
    """alpha_i^2 = w_sigma / w_reflect(sigma) for sigma_i = +1, or a witness of disagreement."""
    squares = []
    for axis in range(s.dimension):
        reference: Optional[Tuple[Step, Fraction]] = None
        for step in s.steps:
            if step[axis] != 1:
                continue
            ratio = w[step] / w[reflect(step, axis)]
            if reference is None:
                reference = (step, ratio)
            elif ratio != reference[1]:
                return None, {
                    "axis": axis,
                    "steps": [format_step(reference[0]), format_step(step)],
                    "ratios": [str(reference[1]), str(ratio)],
                }
        assert reference is not None, "validated step sets move in every dimension"
        squares.append(reference[1])
    return tuple(squares), None


def classify_central(
    s: StepSet,
    w: Mapping[Step, Fraction],
    mode: ArithmeticMode = ArithmeticMode.EXACT,
) -> CentralWeighting:
    """Extract (alpha, beta) with w_sigma = beta * prod alpha_i^sigma_i."""
    weights = check_weights(s, w)
    squares, witness = _alpha_squares(s, weights)
    if squares is None:
        raise NotCentralError(witness)

    # beta^2 = w_sigma^2 / prod alpha_i^(2 sigma_i) stays rational
    inverse = tuple(1 / sq for sq in squares)
    beta_square: Optional[Tuple[Step, Fraction]] = None
    for step in s.steps:
        candidate = weights[step] ** 2 / monomial(step, squares, inverse)
        if beta_square is None:
            beta_square = (step, candidate)
        elif candidate != beta_square[1]:
            raise NotCentralError(
                {
                    "steps": [format_step(beta_square[0]), format_step(step)],
                    "beta_squared": [str(beta_square[1]), str(candidate)],
                }
            )
    assert beta_square is not None

    roots = [_root(sq) for sq in squares]
    beta, beta_exact = _root(beta_square[1])
    exact = beta_exact and all(is_exact for _, is_exact in roots)
    weighting = CentralWeighting(alpha=tuple(root for root, _ in roots), beta=beta, exact=exact)
    if not exact and mode is ArithmeticMode.EXACT:
        raise InexactRootError(
            {"alpha_squared": [str(sq) for sq in squares], "beta_squared": str(beta_square[1])},
            approximate=weighting,
        )
    return weighting


def weight_profile(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> WeightProfile:
    values = check_alpha(alpha, s.dimension)
    alpha_plus = tuple(max(a, Fraction(1)) for a in values)
    alpha_minus = tuple(min(a, Fraction(1)) for a in values)
    product = Fraction(1)
    for a in alpha_minus:
        product *= a
    return WeightProfile(
        alpha_plus=alpha_plus,
        alpha_minus=alpha_minus,
        r=sum(1 for a in values if a <= 1),
        m=sum(1 for a in values if a < 1),
        t_minimal=1 / (product * inventory_eval(s, alpha_plus, omega)),
    )


def classify_symmetric(s: StepSet, w: Mapping[Step, Fraction]) -> SymmetricWeighting:
    weights = check_weights(s, w)
    for step in s.steps:
        for axis in range(s.dimension):
            if step[axis] == 1 and weights[step] != weights[reflect(step, axis)]:
                raise NotSymmetricError(
                    {
                        "step": format_step(step),
                        "reflection": format_step(reflect(step, axis)),
                        "axis": axis,
                    }
                )
    return SymmetricWeighting.from_map(weights)


def _omega_from(s: StepSet, weights: StepWeights, alpha: Tuple[Fraction, ...]) -> StepWeights:
    # omega is read off the non-negative representative of each reflection orbit
    omega: StepWeights = {}
    for step in s.steps:
        representative = tuple(abs(c) for c in step)
        value = weights[representative]
        for axis, component in enumerate(representative):
            if component:
                value /= alpha[axis]
        omega[step] = value
    return omega


def factor_weighting(
    s: StepSet,
    w: Mapping[Step, Fraction],
    mode: ArithmeticMode = ArithmeticMode.EXACT,
) -> FactoredWeighting:
    """Split w into a symmetric omega (carrying beta) and a central alpha."""
    weights = check_weights(s, w)
    squares, witness = _alpha_squares(s, weights)
    if squares is None:
        raise NotFactorableError(witness)

    roots = [_root(sq) for sq in squares]
    alpha = tuple(root for root, _ in roots)
    exact = all(is_exact for _, is_exact in roots)
    omega = _omega_from(s, weights, alpha)
    factored = FactoredWeighting(omega=SymmetricWeighting.from_map(omega), alpha=alpha, exact=exact)
    if not exact and mode is ArithmeticMode.EXACT:
        raise NotFactorableError(
            {"alpha_squared": [str(sq) for sq in squares]},
            exact_only=True,
            approximate=factored,
        )
    return factored


def weighted_drift(
    s: StepSet,
    alpha: Sequence[Fraction],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> Tuple[Fraction, ...]:
    """Sum of sigma_i * omega_sigma * alpha^sigma over the step set."""
    values = check_alpha(alpha, s.dimension)
    inverse = tuple(1 / a for a in values)
    totals = [Fraction(0)] * s.dimension
    for step in s.steps:
        weight = monomial(step, values, inverse)
        if omega is not None:
            weight *= omega[step]
        for axis, component in enumerate(step):
            if component:
                totals[axis] += component * weight
    return tuple(totals)
