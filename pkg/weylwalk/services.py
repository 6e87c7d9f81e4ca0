from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .asymptotics import (
    asymptotic_formula,
    expected_excursion_exponent,
    log_formula,
    unpack_weighting,
)
from .clock import Clock
from .critical import contributing_points, enumerate_critical_points, minimal_point
from .domain import (
    AnalysisReport,
    ArithmeticMode,
    CentralWeighting,
    ClassificationReport,
    FactoredWeighting,
    HealthStatus,
    LoadedModel,
    ModelWeighting,
    PjEvaluation,
    RegionRow,
    SymmetricWeighting,
    WeightingKind,
    format_step,
    parse_rational,
)
from .errors import (
    DomainError,
    InexactRootError,
    NonConvergenceError,
    NotCentralError,
    NotFactorableError,
    NotSymmetricError,
    ValidationError,
)
from .id_provider import IdProvider
from .logging import ServiceLogger
from .oracle import DpMode, enumerate_walks, estimate_constant, estimate_exponent, verify_evaluation
from .oracle.extrapolation import MIN_EXPONENT_NMAX
from .reports import (
    EnumerationReport,
    ExcursionCheck,
    FormulaRatio,
    PjComparison,
    RegionReport,
    Tolerances,
    VerificationReport,
)
from .settings import Settings
from .weighting import classify_central, classify_symmetric, factor_weighting, weight_profile, weighted_drift

VERSION = "1.0.0"
# the evaluation identity is checked exactly, so it stays at small n
EVALUATION_NMAX = 12
_RATIO_TAIL = 4


def arithmetic_for(mode: DpMode) -> ArithmeticMode:
    return ArithmeticMode.EXACT if mode is DpMode.EXACT else ArithmeticMode.APPROXIMATE


def _relative(estimate: float, expected: float) -> float:
    if expected == 0:
        return abs(estimate)
    return abs(estimate - expected) / abs(expected)


class HealthService:
    def __init__(self, clock: Clock) -> None:
        self._clock = clock

    def health(self) -> HealthStatus:
        return HealthStatus(status="ok", time=self._clock.now(), version=VERSION)


class ClassificationService:
    def __init__(self) -> None:
        self._logger = ServiceLogger("classification")

    def resolve(
        self,
        model: LoadedModel,
        mode: ArithmeticMode = ArithmeticMode.EXACT,
    ) -> Tuple[Optional[ModelWeighting], ClassificationReport, Optional[DomainError]]:
        s = model.stepset
        if model.weights is None:
            unit = CentralWeighting(alpha=(Fraction(1),) * s.dimension)
            return unit, ClassificationReport(kind=WeightingKind.CENTRAL, alpha=unit.alpha, beta=unit.beta), None

        witnesses = {}
        try:
            central = classify_central(s, model.weights, mode)
            report = ClassificationReport(
                kind=WeightingKind.CENTRAL,
                exact=central.exact,
                alpha=central.alpha,
                beta=central.beta,
            )
            return central, report, None
        except InexactRootError as exc:
            report = ClassificationReport(
                kind=WeightingKind.NONE,
                exact=False,
                witnesses={"central": exc.detail},
                approximate=exc.approximate.model_dump(mode="json") if exc.approximate else None,
            )
            return None, report, exc
        except NotCentralError as exc:
            witnesses["central"] = exc.detail

        try:
            symmetric = classify_symmetric(s, model.weights)
        except NotSymmetricError as exc:
            witnesses["symmetric"] = exc.detail
            symmetric = None

        try:
            factored = factor_weighting(s, model.weights, mode)
        except NotFactorableError as exc:
            witnesses["factored"] = exc.detail
            report = ClassificationReport(
                kind=WeightingKind.NONE,
                exact=not exc.exact_only,
                witnesses=witnesses,
                approximate=exc.approximate.model_dump(mode="json") if exc.approximate else None,
            )
            return None, report, exc

        if symmetric is not None:
            # reflection-invariant weights factor with alpha = 1 and omega = w
            report = ClassificationReport(
                kind=WeightingKind.SYMMETRIC,
                alpha=factored.alpha,
                omega={format_step(entry.step): entry.weight for entry in symmetric.omega},
                witnesses=witnesses,
            )
            return factored, report, None

        report = ClassificationReport(
            kind=WeightingKind.FACTORED,
            exact=factored.exact,
            alpha=factored.alpha,
            omega={format_step(step): weight for step, weight in factored.omega.weights.items()},
            witnesses=witnesses,
        )
        return factored, report, None

    def classify(self, model: LoadedModel, mode: ArithmeticMode = ArithmeticMode.EXACT) -> ClassificationReport:
        _, report, _ = self.resolve(model, mode)
        self._logger.info("model classified", model=model.name, kind=report.kind.value, exact=report.exact)
        return report

    def weighting(self, model: LoadedModel, mode: ArithmeticMode = ArithmeticMode.EXACT) -> ModelWeighting:
        weighting, _, error = self.resolve(model, mode)
        if error is not None:
            raise error
        assert weighting is not None
        return weighting


class AnalysisService:
    def __init__(self, classification: ClassificationService) -> None:
        self._classification = classification
        self._logger = ServiceLogger("analysis")

    def analyze(
        self,
        model: LoadedModel,
        mode: ArithmeticMode = ArithmeticMode.EXACT,
        pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT,
    ) -> AnalysisReport:
        weighting, classification, error = self._classification.resolve(model, mode)
        if error is not None:
            self._logger.warning("analysis rejected", model=model.name, error=error.kind)
            raise error
        assert weighting is not None

        s = model.stepset
        alpha, beta, omega = unpack_weighting(weighting)
        formula = asymptotic_formula(s, weighting, pj_evaluation=pj_evaluation)
        profile = weight_profile(s, alpha, omega)
        report = AnalysisReport(
            dimension=s.dimension,
            step_count=len(s),
            base=formula.base,
            beta=beta,
            growth=formula.growth,
            exponent=formula.exponent,
            gamma_even=formula.gamma_even,
            gamma_odd=formula.gamma_odd,
            r=profile.r,
            m=profile.m,
            alpha=alpha,
            alpha_plus=profile.alpha_plus,
            alpha_minus=profile.alpha_minus,
            minimal_point=minimal_point(s, alpha, omega),
            weighted_drift=weighted_drift(s, alpha, omega),
            classification=classification,
            critical_points=enumerate_critical_points(s, alpha, omega),
            contributing_points=contributing_points(s, alpha, omega).points,
            per_factor_breakdown=formula.breakdown,
            pj_evaluation=pj_evaluation,
        )
        self._logger.info(
            "model analysed",
            model=model.name,
            growth=report.growth,
            exponent=report.exponent,
            gamma_even=report.gamma_even,
            gamma_odd=report.gamma_odd,
        )
        return report


class VerificationService:
    """Run the DP oracle against the asymptotic formula."""

    def __init__(
        self,
        settings: Settings,
        classification: ClassificationService,
        analysis: AnalysisService,
        clock: Clock,
        ids: IdProvider,
    ) -> None:
        self._settings = settings
        self._classification = classification
        self._analysis = analysis
        self._clock = clock
        self._ids = ids
        self._logger = ServiceLogger("verification")

    def verify(
        self,
        model: LoadedModel,
        *,
        n_max: Optional[int] = None,
        mode: Optional[DpMode] = None,
        tolerances: Optional[Tolerances] = None,
        budget_bytes: Optional[int] = None,
        check_excursions: bool = False,
        check_evaluation: bool = False,
    ) -> VerificationReport:
        options = model.options
        n_max = n_max if n_max is not None else (options.n_max or self._settings.default_n_max)
        mode = mode or DpMode(options.mode or self._settings.dp_mode)
        budget = budget_bytes or options.budget or self._settings.budget_bytes
        tolerances = tolerances or Tolerances(gamma=self._settings.tol_gamma, exponent=self._settings.tol_exp)
        arithmetic = arithmetic_for(mode)
        s = model.stepset
        warnings: List[str] = []

        self._logger.info("verification started", model=model.name, n_max=n_max, mode=mode.value, budget=budget)
        analysis = self._analysis.analyze(model, arithmetic)
        formula = analysis.to_formula()
        table = enumerate_walks(s, n_max, mode, model.weights, budget_bytes=budget)
        series = table.count_series()

        convergence = estimate_constant(series, formula.beta, formula.base, formula.exponent)
        warnings.extend(convergence.warnings)
        even_error = _relative(convergence.even.estimate, formula.gamma_even)
        odd_error = _relative(convergence.odd.estimate, formula.gamma_odd)
        gamma_pass = even_error <= tolerances.gamma and odd_error <= tolerances.gamma

        estimated_exponent: Optional[float] = None
        if n_max < MIN_EXPONENT_NMAX:
            warnings.append(f"exponent estimate needs n_max >= {MIN_EXPONENT_NMAX}; skipped")
        else:
            try:
                estimated_exponent = estimate_exponent(series, formula.beta, formula.base)
            except NonConvergenceError as exc:
                warnings.append(f"exponent estimate did not converge: {exc.detail}")
        exponent_pass = (
            estimated_exponent is not None and abs(estimated_exponent - float(formula.exponent)) <= tolerances.exponent
        )

        weighting = self._classification.weighting(model, arithmetic)
        comparisons = []
        for evaluation in PjEvaluation:
            candidate = asymptotic_formula(s, weighting, pj_evaluation=evaluation)
            error = max(
                _relative(convergence.even.estimate, candidate.gamma_even),
                _relative(convergence.odd.estimate, candidate.gamma_odd),
            )
            comparisons.append(
                PjComparison(
                    evaluation=evaluation,
                    gamma_even=candidate.gamma_even,
                    gamma_odd=candidate.gamma_odd,
                    relative_error=error,
                    within_tolerance=error <= tolerances.gamma,
                )
            )
        confirmed = next((item.evaluation for item in comparisons if item.within_tolerance), None)
        if confirmed is not None and confirmed is not PjEvaluation.AT_POINT:
            warnings.append(f"oracle agrees with P_j evaluated {confirmed.value}, not at the contributing point")

        references = {
            name: _relative(convergence.even.estimate, value) <= tolerances.gamma
            for name, value in options.reference_gammas.items()
        }

        ratios = []
        for n in range(max(1, n_max - _RATIO_TAIL + 1), n_max + 1):
            predicted = log_formula(formula, n)
            if math.isfinite(predicted) and math.isfinite(series.log_counts[n]):
                ratios.append(FormulaRatio(n=n, ratio=math.exp(series.log_counts[n] - predicted)))

        evaluation_check = None
        if check_evaluation:
            if model.weights is None or analysis.classification.kind is not WeightingKind.CENTRAL:
                warnings.append("evaluation identity needs central step weights; skipped")
            else:
                evaluation_check = verify_evaluation(
                    s, model.weights, min(n_max, EVALUATION_NMAX), budget_bytes=budget
                )

        excursion_check = self._excursions(model, n_max, mode, budget) if check_excursions else None

        report = VerificationReport(
            run_id=self._ids.new_id(),
            generated_at=self._clock.now(),
            model=model.name,
            n_max=n_max,
            mode=mode,
            tolerances=tolerances,
            analysis=analysis,
            convergence=convergence,
            gamma_even_relative_error=even_error,
            gamma_odd_relative_error=odd_error,
            gamma_pass=gamma_pass,
            estimated_exponent=estimated_exponent,
            exponent_pass=exponent_pass,
            pj_comparisons=comparisons,
            confirmed_pj_evaluation=confirmed,
            reference_matches=references,
            ratios=ratios,
            evaluation=evaluation_check,
            excursions=excursion_check,
            warnings=warnings,
        )
        self._logger.info(
            "verification finished",
            model=model.name,
            passed=report.passed,
            gamma_even=convergence.even.estimate,
            gamma_odd=convergence.odd.estimate,
            exponent=estimated_exponent,
        )
        return report

    def _excursions(self, model: LoadedModel, n_max: int, mode: DpMode, budget: int) -> ExcursionCheck:
        s = model.stepset
        base = Fraction(len(s))
        expected = expected_excursion_exponent(s.dimension)
        table = enumerate_walks(s, n_max, mode, budget_bytes=budget)
        try:
            estimate = estimate_exponent(table.excursion_series(), Fraction(1), base)
        except (NonConvergenceError, ValidationError) as exc:
            return ExcursionCheck(n_max=n_max, base=base, expected_exponent=expected, error=str(exc))
        return ExcursionCheck(
            n_max=n_max,
            base=base,
            expected_exponent=expected,
            estimated_exponent=estimate,
            passed=abs(estimate - float(expected)) <= self._settings.tol_exp,
        )


def _axis_values(spec: str) -> List[Fraction]:
    spec = spec.strip()
    if spec.startswith("geom:"):
        parts = spec.split(":")
        if len(parts) != 4:
            raise ValidationError(f"geometric axes look like 'geom:lo:ratio:count', got {spec!r}")
        lo, ratio = parse_rational(parts[1]), parse_rational(parts[2])
        try:
            count = int(parts[3])
        except ValueError as exc:
            raise ValidationError(f"grid count must be an integer, got {parts[3]!r}") from exc
        if lo <= 0 or ratio <= 0 or count < 1:
            raise ValidationError(f"geometric axis needs positive lo, ratio and count: {spec!r}")
        return [lo * ratio**k for k in range(count)]
    values = [parse_rational(part) for part in spec.split(",") if part.strip()]
    if not values or any(value <= 0 for value in values):
        raise ValidationError(f"grid axis needs positive rationals, got {spec!r}")
    return values


def parse_grid(grid: str, dimension: int) -> List[Tuple[Fraction, ...]]:
    """Grid points in row-major order; one axis description is reused for every dimension."""
    axes = [part for part in grid.split(";") if part.strip()]
    if len(axes) == 1:
        axes = axes * dimension
    if len(axes) != dimension:
        raise ValidationError(f"grid has {len(axes)} axes, model has dimension {dimension}")
    return list(itertools.product(*(_axis_values(axis) for axis in axes)))


def phase_cell(alpha: Sequence[Fraction]) -> Tuple[str, ...]:
    return tuple(">1" if a > 1 else "=1" if a == 1 else "<1" for a in alpha)


class RegionService:
    def __init__(self, settings: Settings) -> None:
        self._settings = settings
        self._logger = ServiceLogger("regions")

    def regions(self, model: LoadedModel, grid: Optional[str] = None) -> RegionReport:
        grid = grid or self._settings.regions_grid
        points = parse_grid(grid, model.dimension)
        omega = SymmetricWeighting.from_map(model.omega) if model.omega is not None else None

        def row(alpha: Tuple[Fraction, ...]) -> RegionRow:
            weighting: ModelWeighting
            if omega is not None:
                weighting = FactoredWeighting(omega=omega, alpha=alpha)
            else:
                weighting = CentralWeighting(alpha=alpha)
            formula = asymptotic_formula(model.stepset, weighting)
            return RegionRow(
                alpha=alpha,
                cells=phase_cell(alpha),
                base=formula.base,
                exponent=formula.exponent,
                gamma_even=formula.gamma_even,
            )

        self._logger.info("regions started", model=model.name, grid=grid, points=len(points))
        with ThreadPoolExecutor(max_workers=self._settings.workers) as pool:
            rows = list(pool.map(row, points))
        return RegionReport(grid=grid, rows=rows)


class EnumerationService:
    def __init__(self, settings: Settings) -> None:
        self._settings = settings
        self._logger = ServiceLogger("enumeration")

    def enumerate(
        self,
        model: LoadedModel,
        *,
        n_max: Optional[int] = None,
        by_endpoint: bool = False,
        mode: Optional[DpMode] = None,
        budget_bytes: Optional[int] = None,
    ) -> EnumerationReport:
        options = model.options
        n_max = n_max if n_max is not None else (options.n_max or self._settings.default_n_max)
        mode = mode or DpMode(options.mode or self._settings.dp_mode)
        if by_endpoint and mode is not DpMode.EXACT:
            self._logger.info("endpoint tables use exact mode", requested=mode.value)
            mode = DpMode.EXACT
        budget = budget_bytes or options.budget or self._settings.budget_bytes

        table = enumerate_walks(
            model.stepset,
            n_max,
            mode,
            model.weights,
            budget_bytes=budget,
            keep_layers=by_endpoint,
        )
        return EnumerationReport(
            model=model.name,
            n_max=n_max,
            mode=mode,
            by_endpoint=by_endpoint,
            header=["n", "point", "count"],
            rows=table.csv_rows(by_endpoint),
        )
