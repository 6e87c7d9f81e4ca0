from .checks import verify_evaluation
from .domain import ConvergenceReport, CountSeries, DpMode, EnumerationTable, EvaluationCheck, ParityExtrapolation
from .extrapolation import estimate_constant, estimate_exponent, richardson
from .stepper import enumerate_walks, estimate_bytes, excursions

__all__ = [
    "ConvergenceReport",
    "CountSeries",
    "DpMode",
    "EnumerationTable",
    "EvaluationCheck",
    "ParityExtrapolation",
    "enumerate_walks",
    "estimate_bytes",
    "estimate_constant",
    "estimate_exponent",
    "excursions",
    "richardson",
    "verify_evaluation",
]
