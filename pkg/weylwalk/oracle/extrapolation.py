"""Richardson extrapolation of normalised counts, split by parity of n."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import NonConvergenceError, ValidationError
from ..logging import ServiceLogger
from .domain import ConvergenceReport, CountSeries, ParityExtrapolation

MIN_CONSTANT_NMAX = 40
MIN_EXPONENT_NMAX = 60
MAX_ORDER = 2
PARITY_STEP = 2
_TRAILING = 8
_MONOTONE_WINDOW = 6
# an exponent estimate whose last two extrapolants differ by more than this is rejected
_EXPONENT_SPREAD = 0.25

logger = ServiceLogger("extrapolation")


def richardson(values: Sequence[float], n_values: Sequence[int], order: int, h: int = PARITY_STEP) -> np.ndarray:
    """Order-N Richardson extrapolants in 1/n for equally spaced n.

    Entry i combines values[i - order .. i]; the result has len(values) - order entries.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValidationError(f"extrapolation order must be in 0..{MAX_ORDER}, got {order}")
    r = np.asarray(values, dtype=np.float64)
    m = np.asarray(n_values, dtype=np.float64) / h
    if len(r) != len(m):
        raise ValidationError("values and n_values differ in length")
    if len(r) <= order:
        return np.empty(0)
    count = len(r) - order
    result = np.zeros(count)
    for j in range(order + 1):
        weight = (-1) ** j / (math.factorial(j) * math.factorial(order - j))
        lo, hi = order - j, order - j + count
        result += weight * r[lo:hi] * m[lo:hi] ** order
    return result


def _parity_block(series: CountSeries, parity: int, start: int = 2) -> Tuple[List[int], List[float]]:
    """Trailing run of same-parity n with a non-zero count."""
    n_values: List[int] = []
    logs: List[float] = []
    n = series.n_max if series.n_max % 2 == parity else series.n_max - 1
    while n >= start and math.isfinite(series.log_counts[n]):
        n_values.append(n)
        logs.append(series.log_counts[n])
        n -= PARITY_STEP
    return n_values[::-1], logs[::-1]


def _is_monotone(sequence: np.ndarray, scale: float) -> bool:
    tail = np.diff(sequence[-_MONOTONE_WINDOW:])
    tolerance = 1e-12 * max(abs(scale), 1.0)
    return bool(np.all(tail >= -tolerance) or np.all(tail <= tolerance))


def _extrapolate_parity(
    series: CountSeries,
    parity: int,
    log_growth: float,
    exponent: float,
) -> ParityExtrapolation:
    label = "even" if parity == 0 else "odd"
    n_values, logs = _parity_block(series, parity)
    if len(n_values) <= MAX_ORDER + 1:
        return ParityExtrapolation(parity=label, n_values=n_values, ratios=[], estimate=0.0, vanishing=True)

    ns = np.asarray(n_values, dtype=np.float64)
    ratios = np.exp(np.asarray(logs) - ns * log_growth - exponent * np.log(ns))
    first = richardson(ratios, n_values, 1)
    second = richardson(ratios, n_values, 2)
    estimate = float(second[-1])
    residual = float(abs(second[-1] - second[-2]))
    previous = float(abs(second[-2] - second[-3])) if len(second) >= 3 else residual
    growing = residual > previous and residual > 1e-6 * max(abs(estimate), 1e-300)
    return ParityExtrapolation(
        parity=label,
        n_values=n_values[-_TRAILING:],
        ratios=[float(value) for value in ratios[-_TRAILING:]],
        order1=float(first[-1]),
        order2=estimate,
        estimate=estimate,
        residual=residual,
        monotone=_is_monotone(second, estimate),
        growing_residual=growing,
    )


def estimate_constant(
    series: CountSeries,
    beta: Fraction,
    base: Fraction,
    exponent: Fraction,
) -> ConvergenceReport:
    """Extrapolate count(n) / ((beta * base)^n * n^exponent) separately for even and odd n."""
    if series.n_max < MIN_CONSTANT_NMAX:
        raise ValidationError(f"constant estimation needs n_max >= {MIN_CONSTANT_NMAX}, got {series.n_max}")
    log_growth = math.log(float(Fraction(beta) * Fraction(base)))
    power = float(exponent)

    even = _extrapolate_parity(series, 0, log_growth, power)
    odd = _extrapolate_parity(series, 1, log_growth, power)

    warnings: List[str] = []
    converged = True
    for part in (even, odd):
        if part.vanishing:
            continue
        if not part.monotone:
            warnings.append(f"{part.parity} extrapolants are not monotone")
        if part.growing_residual:
            converged = False
            warnings.append(f"{part.parity} residual is growing")
    for warning in warnings:
        logger.warning("extrapolation warning", detail=warning, n_max=series.n_max)

    logger.info(
        "constant estimated",
        n_max=series.n_max,
        gamma_even=even.estimate,
        gamma_odd=odd.estimate,
        converged=converged,
    )
    return ConvergenceReport(
        beta=beta,
        base=base,
        exponent=exponent,
        even=even,
        odd=odd,
        converged=converged,
        warnings=warnings,
    )


def local_exponents(series: CountSeries, log_growth: float, parity: int) -> Tuple[List[int], np.ndarray]:
    """Slopes of log(count(n) / growth^n) against log n between n - 2 and n."""
    n_values, logs = _parity_block(series, parity)
    ns = np.asarray(n_values, dtype=np.float64)
    reduced = np.asarray(logs) - ns * log_growth
    slopes = np.diff(reduced) / np.log(ns[1:] / ns[:-1])
    return n_values[1:], slopes


def estimate_exponent(
    series: CountSeries,
    beta: Fraction,
    base: Fraction,
    *,
    parity: Optional[int] = None,
) -> float:
    if series.n_max < MIN_EXPONENT_NMAX:
        raise ValidationError(f"exponent estimation needs n_max >= {MIN_EXPONENT_NMAX}, got {series.n_max}")
    if parity is None:
        # the class of the last non-zero count; excursions vanish at odd n
        last = series.n_max if math.isfinite(series.log_counts[series.n_max]) else series.n_max - 1
        parity = last % 2

    log_growth = math.log(float(Fraction(beta) * Fraction(base)))
    n_values, slopes = local_exponents(series, log_growth, parity)
    if len(slopes) <= MAX_ORDER + 1:
        raise NonConvergenceError({"reason": "too few non-zero counts", "parity": parity})

    extrapolants = richardson(slopes, n_values, 2)
    estimate = float(extrapolants[-1])
    spread = float(abs(extrapolants[-1] - extrapolants[-2]))
    if not math.isfinite(estimate) or spread > _EXPONENT_SPREAD:
        logger.warning("exponent did not settle", estimate=estimate, spread=spread)
        raise NonConvergenceError({"estimate": estimate, "spread": spread})
    logger.info("exponent estimated", n_max=series.n_max, parity=parity, exponent=estimate)
    return estimate
