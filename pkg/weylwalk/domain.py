from __future__ import annotations

import re
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, WithJsonSchema, computed_field

from .errors import ModelSpecError, ViolationKind

Step = Tuple[int, ...]
StepWeights = Dict[Step, Fraction]

_STEP_KEY = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)$")


def parse_rational(value: Any) -> Fraction:
    """Accept ints, Fractions and "p/q" strings; floats are rejected to keep models exact."""
    if isinstance(value, bool):
        raise ModelSpecError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelSpecError(f"not a rational: {value!r}") from exc
    raise ModelSpecError(f"rationals must be integers or 'p/q' strings, got {value!r}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def format_step(step: Step) -> str:
    return "(" + ",".join(str(c) for c in step) + ")"


def parse_step_key(key: str) -> Step:
    match = _STEP_KEY.match(key.strip())
    if not match:
        raise ModelSpecError(f"step keys look like '(1,0,-1)', got {key!r}")
    return tuple(int(part) for part in match.group(1).split(","))


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "examples": ["13/2"]}),
]


class ArithmeticMode(str, Enum):
    EXACT = "exact"
    APPROXIMATE = "approximate"


class ParitySign(str, Enum):
    ALWAYS_PLUS = "always_plus"
    ALTERNATING = "alternating"


class PjEvaluation(str, Enum):
    AT_POINT = "at_point"
    AT_ONES = "at_ones"


class WeightingKind(str, Enum):
    CENTRAL = "central"
    SYMMETRIC = "symmetric"
    FACTORED = "factored"
    NONE = "none"


class StepSet(BaseModel):
    """A validated reflectable step set; build it with ``stepset.validate``."""

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(ge=1)
    steps: Tuple[Step, ...]

    @property
    def members(self) -> frozenset[Step]:
        return frozenset(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __contains__(self, step: object) -> bool:
        return step in self.members


class StepViolation(BaseModel):
    kind: ViolationKind
    detail: str
    step: Optional[Step] = None
    axis: Optional[int] = None


class WeightedStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: Step
    weight: Rational


class SymmetricWeighting(BaseModel):
    """Step weights invariant under every axis reflection."""

    model_config = ConfigDict(frozen=True)

    omega: Tuple[WeightedStep, ...]

    @classmethod
    def from_map(cls, weights: Mapping[Step, Fraction]) -> SymmetricWeighting:
        return cls(omega=tuple(WeightedStep(step=step, weight=weights[step]) for step in sorted(weights)))

    @property
    def weights(self) -> StepWeights:
        return {entry.step: entry.weight for entry in self.omega}


class CentralWeighting(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: Tuple[Rational, ...]
    beta: Rational = Fraction(1)
    exact: bool = True


class FactoredWeighting(BaseModel):
    """w = omega * alpha^sigma, with any overall scale folded into omega."""

    model_config = ConfigDict(frozen=True)

    omega: SymmetricWeighting
    alpha: Tuple[Rational, ...]
    exact: bool = True


ModelWeighting = Union[CentralWeighting, FactoredWeighting]


class WeightProfile(BaseModel):
    alpha_plus: Tuple[Rational, ...]
    alpha_minus: Tuple[Rational, ...]
    r: int
    m: int
    t_minimal: Rational


class CriticalPoint(BaseModel):
    signs: Tuple[int, ...]
    x: Tuple[Rational, ...]
    # no finite t when S(alpha / x) vanishes on this sign pattern
    t: Optional[Rational]
    s_argument: Tuple[Rational, ...]
    s_value: Rational


class MinimalPoint(BaseModel):
    x: Tuple[Rational, ...]
    t: Rational


class ContributingPoint(BaseModel):
    signs: Tuple[int, ...]
    s_argument: Tuple[Rational, ...]
    s_value: Rational
    parity: ParitySign


class ContributingSet(BaseModel):
    s_plus: Rational
    points: List[ContributingPoint]


class FactorBreakdown(BaseModel):
    axis: int
    alpha: Rational
    sign: int
    case: str
    p_value: Optional[Rational] = None
    value: float


class PointBreakdown(BaseModel):
    signs: Tuple[int, ...]
    s_argument: Tuple[Rational, ...]
    parity: ParitySign
    factors: List[FactorBreakdown]
    product: float


class AsymptoticFormula(BaseModel):
    beta: Rational
    base: Rational
    exponent: Rational
    gamma_even: float
    gamma_odd: float
    breakdown: List[PointBreakdown]
    pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT

    @computed_field  # type: ignore[prop-decorator]
    @property
    def growth(self) -> Rational:
        return self.beta * self.base

    def gamma(self, n: int) -> float:
        return self.gamma_even if n % 2 == 0 else self.gamma_odd


class ModelOptions(BaseModel):
    n_max: Optional[int] = Field(None, ge=0)
    mode: Optional[str] = Field(None, pattern="^(exact|float)$")
    budget: Optional[int] = Field(None, gt=0)
    reference_gammas: Dict[str, float] = Field(default_factory=dict)


class ModelSpec(BaseModel):
    """Model JSON as read from disk, stdin or an HTTP body."""

    dimension: int
    steps: List[List[int]]
    weights: Optional[Dict[str, Any]] = None
    options: ModelOptions = Field(default_factory=ModelOptions)


class ClassificationReport(BaseModel):
    kind: WeightingKind
    exact: bool = True
    alpha: Optional[Tuple[Rational, ...]] = None
    beta: Optional[Rational] = None
    omega: Optional[Dict[str, Rational]] = None
    witnesses: Dict[str, Any] = Field(default_factory=dict)
    approximate: Optional[Dict[str, Any]] = None


class AnalysisReport(BaseModel):
    dimension: int
    step_count: int
    base: Rational
    beta: Rational
    growth: Rational
    exponent: Rational
    gamma_even: float
    gamma_odd: float
    r: int
    m: int
    alpha: Tuple[Rational, ...]
    alpha_plus: Tuple[Rational, ...]
    alpha_minus: Tuple[Rational, ...]
    minimal_point: MinimalPoint
    weighted_drift: Tuple[Rational, ...]
    classification: ClassificationReport
    critical_points: List[CriticalPoint]
    contributing_points: List[ContributingPoint]
    per_factor_breakdown: List[PointBreakdown]
    pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT

    def to_formula(self) -> AsymptoticFormula:
        return AsymptoticFormula(
            beta=self.beta,
            base=self.base,
            exponent=self.exponent,
            gamma_even=self.gamma_even,
            gamma_odd=self.gamma_odd,
            breakdown=self.per_factor_breakdown,
            pj_evaluation=self.pj_evaluation,
        )


class RegionRow(BaseModel):
    alpha: Tuple[Rational, ...]
    cells: Tuple[str, ...]
    base: Rational
    exponent: Rational
    gamma_even: float


class LoadedModel(BaseModel):
    """A parsed model: validated step set plus raw step weights, if any."""

    model_config = ConfigDict(frozen=True)

    name: Optional[str] = None
    stepset: StepSet
    weights: Optional[Dict[Step, Rational]] = None
    # omega declared directly in the model file; regions sweep alpha on top of it
    omega: Optional[Dict[Step, Rational]] = None
    options: ModelOptions = Field(default_factory=ModelOptions)

    @property
    def dimension(self) -> int:
        return self.stepset.dimension


class HealthStatus(BaseModel):
    status: str
    time: datetime
    version: str
