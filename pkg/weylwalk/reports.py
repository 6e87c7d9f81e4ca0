from __future__ import annotations

from datetime import datetime
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

from .domain import AnalysisReport, PjEvaluation, Rational, RegionRow
from .oracle.domain import ConvergenceReport, DpMode, EvaluationCheck


class Tolerances(BaseModel):
    gamma: float = Field(0.05, gt=0)
    exponent: float = Field(0.1, gt=0)


class FormulaRatio(BaseModel):
    n: int
    ratio: float


class ExcursionCheck(BaseModel):
    n_max: int
    base: Rational
    expected_exponent: Rational
    estimated_exponent: Optional[float] = None
    passed: bool = False
    error: Optional[str] = None


class PjComparison(BaseModel):
    evaluation: PjEvaluation
    gamma_even: float
    gamma_odd: float
    relative_error: float
    within_tolerance: bool


class VerificationReport(BaseModel):
    run_id: str
    generated_at: datetime
    model: Optional[str] = None
    n_max: int
    mode: DpMode
    tolerances: Tolerances
    analysis: AnalysisReport
    convergence: ConvergenceReport
    gamma_even_relative_error: float
    gamma_odd_relative_error: float
    gamma_pass: bool
    estimated_exponent: Optional[float] = None
    exponent_pass: bool = False
    pj_comparisons: List[PjComparison]
    confirmed_pj_evaluation: Optional[PjEvaluation] = None
    reference_matches: Dict[str, bool] = Field(default_factory=dict)
    ratios: List[FormulaRatio] = Field(default_factory=list)
    evaluation: Optional[EvaluationCheck] = None
    excursions: Optional[ExcursionCheck] = None
    warnings: List[str] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        excursions_ok = self.excursions is None or self.excursions.passed
        evaluation_ok = self.evaluation is None or self.evaluation.passed
        return self.gamma_pass and self.exponent_pass and excursions_ok and evaluation_ok


class RegionReport(BaseModel):
    grid: str
    rows: List[RegionRow]


class EnumerationReport(BaseModel):
    model: Optional[str] = None
    n_max: int
    mode: DpMode
    by_endpoint: bool
    header: List[str]
    rows: List[List[str]]
