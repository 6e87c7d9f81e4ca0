from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..domain import Rational, format_rational, format_step
from ..errors import ValidationError


class DpMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def log_abs(value: Fraction) -> float:
    """log |value| for arbitrarily large rationals; -inf at zero."""
    if value == 0:
        return -math.inf
    value = abs(Fraction(value))
    return math.log(value.numerator) - math.log(value.denominator)


def format_log(log_value: float) -> str:
    """Decimal scientific form of exp(log_value), valid past the float range."""
    if log_value == -math.inf:
        return "0"
    decimal = log_value / math.log(10)
    exponent = math.floor(decimal)
    mantissa = 10 ** (decimal - exponent)
    return f"{mantissa:.15g}e{exponent:+d}"


class EnumerationTable(BaseModel):
    """Per-length totals and origin returns, plus endpoint layers when kept."""

    model_config = ConfigDict(frozen=True)

    dimension: int
    n_max: int
    mode: DpMode
    weighted: bool = False
    confined: bool = True
    log_totals: List[float]
    log_origin: List[float]
    totals: Optional[List[Rational]] = None
    origin: Optional[List[Rational]] = None
    layers: Optional[List[Dict[Tuple[int, ...], Rational]]] = Field(default=None, exclude=True)

    def csv_rows(self, by_endpoint: bool = False) -> List[List[str]]:
        """Rows of (n, point, count); point is "total" unless endpoints are requested."""
        rows: List[List[str]] = []
        if by_endpoint:
            if self.layers is None:
                raise ValidationError("table was built without endpoint layers")
            for n, layer in enumerate(self.layers):
                for point in sorted(layer):
                    rows.append([str(n), format_step(point), format_rational(layer[point])])
            return rows
        for n in range(self.n_max + 1):
            if self.totals is not None:
                count = format_rational(self.totals[n])
            else:
                count = format_log(self.log_totals[n])
            rows.append([str(n), "total", count])
        return rows

    def count_series(self) -> CountSeries:
        return CountSeries(log_counts=list(self.log_totals))

    def excursion_series(self) -> CountSeries:
        return CountSeries(log_counts=list(self.log_origin))


class CountSeries(BaseModel):
    """Counts for n = 0, 1, 2, ... held as natural logs so n in the hundreds stays finite."""

    log_counts: List[float]

    @classmethod
    def from_counts(cls, counts: List[Fraction | int | float]) -> CountSeries:
        logs = []
        for count in counts:
            if isinstance(count, float):
                logs.append(math.log(count) if count > 0 else -math.inf)
            else:
                logs.append(log_abs(Fraction(count)))
        return cls(log_counts=logs)

    @property
    def n_max(self) -> int:
        return len(self.log_counts) - 1


class ParityExtrapolation(BaseModel):
    parity: str
    n_values: List[int]
    ratios: List[float]
    order1: Optional[float] = None
    order2: Optional[float] = None
    estimate: float
    residual: Optional[float] = None
    monotone: bool = True
    growing_residual: bool = False
    vanishing: bool = False


class ConvergenceReport(BaseModel):
    beta: Rational
    base: Rational
    exponent: Rational
    even: ParityExtrapolation
    odd: ParityExtrapolation
    converged: bool = True
    warnings: List[str] = Field(default_factory=list)

    def estimate(self, n: int) -> float:
        return self.even.estimate if n % 2 == 0 else self.odd.estimate


class EvaluationCheck(BaseModel):
    passed: bool
    n_max: int
    first_failure: Optional[int] = None
    weighted_total: Optional[Rational] = None
    endpoint_sum: Optional[Rational] = None
