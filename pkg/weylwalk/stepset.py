"""Reflectable step sets and their inventory Laurent polynomial.

All evaluation here is exact over ``Fraction``. Axes are 0-based in code; the
human-readable violation messages count dimensions from 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from .domain import Step, StepSet, StepViolation
from .errors import StepSetError, ValidationError, ViolationKind, ZeroCoordinateError

Number = int | Fraction


def reflect(step: Step, axis: int) -> Step:
    return step[:axis] + (-step[axis],) + step[axis + 1 :]


def validate(dimension: int, raw_steps: Iterable[Sequence[int]]) -> StepSet:
    """Build a StepSet, collecting every violation before failing."""
    if dimension < 1:
        raise ValidationError(f"dimension must be at least 1, got {dimension}")

    violations: list[StepViolation] = []
    seen: set[Step] = set()
    raw_list = list(raw_steps)
    if not raw_list:
        violations.append(StepViolation(kind=ViolationKind.EMPTY_STEP_SET, detail="step set is empty"))

    for raw in raw_list:
        if len(raw) != dimension:
            violations.append(
                StepViolation(
                    kind=ViolationKind.DIMENSION_MISMATCH,
                    detail=f"step {list(raw)} has {len(raw)} components, expected {dimension}",
                )
            )
            continue
        bad = [c for c in raw if isinstance(c, bool) or not isinstance(c, int) or c not in (-1, 0, 1)]
        if bad:
            violations.append(
                StepViolation(
                    kind=ViolationKind.COMPONENT_OUT_OF_RANGE,
                    detail=f"step {list(raw)} has components outside {{-1, 0, 1}}: {bad}",
                )
            )
            continue
        step = tuple(raw)
        if step in seen:
            violations.append(
                StepViolation(kind=ViolationKind.DUPLICATE_STEP, detail=f"step {list(step)} listed twice", step=step)
            )
            continue
        seen.add(step)

    for step in sorted(seen):
        for axis, component in enumerate(step):
            if component == 0:
                continue
            mirrored = reflect(step, axis)
            if mirrored not in seen:
                violations.append(
                    StepViolation(
                        kind=ViolationKind.NOT_REFLECTABLE,
                        detail=f"reflection of {list(step)} across axis {axis + 1} is missing",
                        step=step,
                        axis=axis,
                    )
                )

    if seen:
        for axis in range(dimension):
            if not any(step[axis] != 0 for step in seen):
                violations.append(
                    StepViolation(
                        kind=ViolationKind.TRIVIAL_DIMENSION,
                        detail=f"no step moves in dimension {axis + 1}",
                        axis=axis,
                    )
                )

    if violations:
        raise StepSetError(violations)
    return StepSet(dimension=dimension, steps=tuple(sorted(seen)))


def _coordinates(x: Sequence[Number], expected: int) -> Tuple[Fraction, ...]:
    if len(x) != expected:
        raise ValidationError(f"expected {expected} coordinates, got {len(x)}")
    coords = tuple(Fraction(value) for value in x)
    for index, value in enumerate(coords):
        if value == 0:
            raise ZeroCoordinateError(f"coordinate {index + 1} is zero")
    return coords


def monomial(step: Step, x: Sequence[Fraction], inverse: Sequence[Fraction]) -> Fraction:
    value = Fraction(1)
    for component, xi, inv in zip(step, x, inverse):
        if component == 1:
            value *= xi
        elif component == -1:
            value *= inv
    return value


def inventory_eval(
    s: StepSet,
    x: Sequence[Number],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> Fraction:
    """S(x) = sum over steps of omega_sigma * x^sigma."""
    coords = _coordinates(x, s.dimension)
    inverse = tuple(1 / value for value in coords)
    total = Fraction(0)
    for step in s.steps:
        term = monomial(step, coords, inverse)
        total += term if omega is None else omega[step] * term
    return total


class InventoryDecomposition(BaseModel):
    """S(x) = (x_k + 1/x_k) * P_k + Q_k with P_k, Q_k free of x_k."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    stepset: StepSet
    axis: int
    omega: Optional[Tuple[Tuple[Step, Fraction], ...]] = None

    def evaluate(self, x_rest: Sequence[Number]) -> Tuple[Fraction, Fraction]:
        d = self.stepset.dimension
        rest = _coordinates(x_rest, d - 1)
        coords = rest[: self.axis] + (Fraction(1),) + rest[self.axis :]
        inverse = tuple(1 / value for value in coords)
        weights = dict(self.omega) if self.omega is not None else None

        plus = minus = zero = Fraction(0)
        for step in self.stepset.steps:
            term = monomial(step, coords, inverse)
            if weights is not None:
                term *= weights[step]
            if step[self.axis] == 1:
                plus += term
            elif step[self.axis] == -1:
                minus += term
            else:
                zero += term
        if plus != minus:
            raise ValidationError(f"P_{self.axis + 1} slices disagree ({plus} != {minus}); weights are not symmetric")
        return plus, zero


def decomposition(s: StepSet, axis: int, omega: Optional[Mapping[Step, Fraction]] = None) -> InventoryDecomposition:
    if not 0 <= axis < s.dimension:
        raise ValidationError(f"axis {axis} outside 0..{s.dimension - 1}")
    frozen = tuple(sorted((step, Fraction(value)) for step, value in omega.items())) if omega is not None else None
    return InventoryDecomposition(stepset=s, axis=axis, omega=frozen)


def pq_eval(
    s: StepSet,
    axis: int,
    x_rest: Sequence[Number],
    omega: Optional[Mapping[Step, Fraction]] = None,
) -> Tuple[Fraction, Fraction]:
    return decomposition(s, axis, omega).evaluate(x_rest)


def drift(s: StepSet) -> Tuple[int, ...]:
    return tuple(sum(step[axis] for step in s.steps) for axis in range(s.dimension))


def simple_stepset(dimension: int) -> StepSet:
    """The elementary vectors and their negatives."""
    steps = []
    for axis in range(dimension):
        for sign in (1, -1):
            steps.append(tuple(sign if i == axis else 0 for i in range(dimension)))
    return validate(dimension, steps)
