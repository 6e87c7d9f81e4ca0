from __future__ import annotations

from enum import Enum
from typing import Any, Optional


class DomainError(Exception):
    """Base class for model, analysis and oracle errors."""

    kind = "DomainError"

    def __init__(self, detail: Any = None) -> None:
        super().__init__(self.kind if detail is None else f"{self.kind}: {detail}")
        self.detail = detail

    def to_payload(self) -> dict[str, Any]:
        return {"error": self.kind, "detail": self.detail}


class ValidationError(DomainError):
    kind = "ValidationError"


class BudgetError(DomainError):
    kind = "BudgetError"


class ViolationKind(str, Enum):
    COMPONENT_OUT_OF_RANGE = "ComponentOutOfRange"
    NOT_REFLECTABLE = "NotReflectable"
    TRIVIAL_DIMENSION = "TrivialDimension"
    DUPLICATE_STEP = "DuplicateStep"
    EMPTY_STEP_SET = "EmptyStepSet"
    DIMENSION_MISMATCH = "DimensionMismatch"


class StepSetError(ValidationError):
    """All violations found while validating a raw step list."""

    kind = "StepSetError"

    def __init__(self, violations: list) -> None:
        self.violations = violations
        super().__init__([violation.model_dump(mode="json") for violation in violations])
        if violations:
            # the first violation names the error so callers can match on it
            self.kind = violations[0].kind.value

    def kinds(self) -> set[ViolationKind]:
        return {violation.kind for violation in self.violations}


class ModelSpecError(ValidationError):
    kind = "ModelSpecError"


class ZeroCoordinateError(ValidationError):
    kind = "ZeroCoordinate"


class NonPositiveWeightError(ValidationError):
    kind = "NonPositiveWeight"


class NotCentralError(ValidationError):
    kind = "NotCentral"


class NotSymmetricError(ValidationError):
    kind = "NotSymmetric"


class NotFactorableError(ValidationError):
    kind = "NotFactorable"

    def __init__(self, detail: Any, *, exact_only: bool = False, approximate: Optional[Any] = None) -> None:
        super().__init__(detail)
        self.exact_only = exact_only
        self.approximate = approximate
        if exact_only:
            self.kind = "NotFactorable(exact)"


class InexactRootError(ValidationError):
    """A central weighting whose alpha or beta is not a rational square root."""

    kind = "InexactRoot"

    def __init__(self, detail: Any, *, approximate: Optional[Any] = None) -> None:
        super().__init__(detail)
        self.approximate = approximate


class FactorDomainError(ValidationError):
    kind = "FactorDomainError"


class FormulaOverflowError(ValidationError):
    kind = "FormulaOverflow"


class NonConvergenceError(DomainError):
    kind = "NonConvergence"


class BudgetExceededError(BudgetError):
    kind = "BudgetExceeded"

    def __init__(self, required_bytes: int, budget_bytes: int) -> None:
        super().__init__({"required_bytes": required_bytes, "budget_bytes": budget_bytes})
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
