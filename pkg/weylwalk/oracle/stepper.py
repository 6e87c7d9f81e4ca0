"""Layer-by-layer dynamic programming over walks confined to the orthant."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..domain import Step, StepSet
from ..errors import BudgetExceededError, ValidationError
from ..logging import ServiceLogger
from .domain import DpMode, EnumerationTable, log_abs

Point = Tuple[int, ...]

# rough per-state cost of a dict entry holding a tuple key and a big integer
_EXACT_STATE_BYTES = 160
_FLOAT_ARRAYS = 3

logger = ServiceLogger("oracle")


def estimate_bytes(dimension: int, n_max: int, mode: DpMode) -> int:
    states = (n_max + 1) ** dimension
    if mode is DpMode.FLOAT:
        return states * 8 * _FLOAT_ARRAYS
    return states * _EXACT_STATE_BYTES * 2


def check_budget(dimension: int, n_max: int, mode: DpMode, budget_bytes: int) -> int:
    required = estimate_bytes(dimension, n_max, mode)
    if required > budget_bytes:
        logger.warning("budget exceeded", dimension=dimension, n_max=n_max, mode=mode.value, required=required)
        raise BudgetExceededError(required, budget_bytes)
    return required


def _exact_sweep(
    s: StepSet,
    n_max: int,
    weights: Optional[Mapping[Step, Fraction]],
    confined: bool,
    keep_layers: bool,
) -> EnumerationTable:
    origin_point: Point = (0,) * s.dimension
    layer: Dict[Point, Fraction | int] = {origin_point: 1}
    totals: List[Fraction] = [Fraction(1)]
    origin: List[Fraction] = [Fraction(1)]
    layers = [dict(layer)] if keep_layers else None
    moves = [(step, weights[step] if weights is not None else 1) for step in s.steps]

    for _ in range(n_max):
        following: Dict[Point, Fraction | int] = {}
        for point, count in layer.items():
            for step, weight in moves:
                target = tuple(p + c for p, c in zip(point, step))
                if confined and min(target) < 0:
                    continue
                following[target] = following.get(target, 0) + count * weight
        layer = following
        totals.append(Fraction(sum(layer.values())))
        origin.append(Fraction(layer.get(origin_point, 0)))
        if layers is not None:
            layers.append(dict(layer))

    return EnumerationTable(
        dimension=s.dimension,
        n_max=n_max,
        mode=DpMode.EXACT,
        weighted=weights is not None,
        confined=confined,
        log_totals=[log_abs(value) for value in totals],
        log_origin=[log_abs(value) for value in origin],
        totals=totals,
        origin=origin,
        layers=layers,
    )


def _shifted(component: int) -> Tuple[slice, slice]:
    """(target, source) slices along one axis for a step component."""
    if component == 1:
        return slice(1, None), slice(None, -1)
    if component == -1:
        return slice(None, -1), slice(1, None)
    return slice(None), slice(None)


def _float_sweep(
    s: StepSet,
    n_max: int,
    weights: Optional[Mapping[Step, Fraction]],
) -> EnumerationTable:
    shape = (n_max + 1,) * s.dimension
    layer = np.zeros(shape, dtype=np.float64)
    layer[(0,) * s.dimension] = 1.0
    following = np.empty_like(layer)
    moves = []
    for step in s.steps:
        slices = [_shifted(component) for component in step]
        target = tuple(pair[0] for pair in slices)
        source = tuple(pair[1] for pair in slices)
        moves.append((target, source, float(weights[step]) if weights is not None else 1.0))

    log_scale = 0.0
    log_totals = [0.0]
    log_origin = [0.0]
    for _ in range(n_max):
        following.fill(0.0)
        for target, source, weight in moves:
            following[target] += weight * layer[source]
        peak = float(following.max())
        if peak <= 0.0:
            raise ValidationError("walk weights vanished during the sweep")
        # renormalise each layer so (292/7)^n style growth never overflows
        following /= peak
        log_scale += math.log(peak)
        layer, following = following, layer
        log_totals.append(math.log(float(layer.sum())) + log_scale)
        at_origin = float(layer[(0,) * s.dimension])
        log_origin.append(math.log(at_origin) + log_scale if at_origin > 0 else -math.inf)

    return EnumerationTable(
        dimension=s.dimension,
        n_max=n_max,
        mode=DpMode.FLOAT,
        weighted=weights is not None,
        log_totals=log_totals,
        log_origin=log_origin,
    )


def enumerate_walks(
    s: StepSet,
    n_max: int,
    mode: DpMode = DpMode.EXACT,
    weights: Optional[Mapping[Step, Fraction]] = None,
    *,
    budget_bytes: int = 2 * 1024**3,
    keep_layers: bool = False,
    confined: bool = True,
) -> EnumerationTable:
    """Count (or weigh) walks of every length up to n_max."""
    if n_max < 0:
        raise ValidationError(f"n_max must be non-negative, got {n_max}")
    if mode is DpMode.FLOAT and (keep_layers or not confined):
        raise ValidationError("endpoint layers and unconfined sweeps need exact mode")
    if confined:
        required = check_budget(s.dimension, n_max, mode, budget_bytes)
    else:
        # unconfined positions range over [-n, n] on every axis
        required = check_budget(s.dimension, 2 * n_max, mode, budget_bytes)

    logger.info(
        "sweep started",
        dimension=s.dimension,
        steps=len(s),
        n_max=n_max,
        mode=mode.value,
        weighted=weights is not None,
        confined=confined,
        estimated_bytes=required,
    )
    if mode is DpMode.FLOAT:
        table = _float_sweep(s, n_max, weights)
    else:
        table = _exact_sweep(s, n_max, weights, confined, keep_layers)
    logger.debug("sweep finished", n_max=n_max, log_total=table.log_totals[-1])
    return table


def excursions(
    s: StepSet,
    n_max: int,
    *,
    budget_bytes: int = 2 * 1024**3,
) -> List[int]:
    """Exact counts of walks returning to the origin after n steps."""
    table = enumerate_walks(s, n_max, DpMode.EXACT, budget_bytes=budget_bytes)
    assert table.origin is not None
    return [int(value) for value in table.origin]
