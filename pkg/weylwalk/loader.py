from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence

import pydantic

from .domain import LoadedModel, ModelSpec, Step, StepSet, StepWeights, parse_rational, parse_step_key
from .errors import ModelSpecError
from .logging import ServiceLogger
from .stepset import validate
from .weighting import build_weights, check_weights

_WEIGHT_KEYS = {"alpha", "beta", "omega", "step_weights"}


def _rationals(values: Any, label: str) -> list[Fraction]:
    if not isinstance(values, Sequence) or isinstance(values, str):
        raise ModelSpecError(f"{label} must be a list of rationals")
    return [parse_rational(value) for value in values]


def _step_map(raw: Any, s: StepSet, label: str) -> StepWeights:
    if not isinstance(raw, Mapping):
        raise ModelSpecError(f"{label} must map step keys like '(1,0)' to rationals")
    weights: Dict[Step, Fraction] = {}
    for key, value in raw.items():
        step = parse_step_key(key)
        if step in weights:
            raise ModelSpecError(f"{label} lists {key} twice")
        weights[step] = parse_rational(value)
    return check_weights(s, weights)


def _omega(raw: Any, s: StepSet) -> StepWeights:
    """omega either per step or per axis (one value for each +-e_i pair of a simple step set)."""
    if isinstance(raw, Mapping):
        return _step_map(raw, s, "omega")
    per_axis = _rationals(raw, "omega")
    if len(per_axis) != s.dimension or any(sum(abs(c) for c in step) != 1 for step in s.steps):
        raise ModelSpecError("a per-axis omega list needs a step set of unit steps only")
    return check_weights(s, {step: per_axis[[abs(c) for c in step].index(1)] for step in s.steps})


def resolve_weights(spec: ModelSpec, s: StepSet) -> tuple[Optional[StepWeights], Optional[StepWeights]]:
    """Step weights and declared omega for a weights block, or (None, None) when unweighted."""
    block = spec.weights
    if block is None:
        return None, None
    unknown = set(block) - _WEIGHT_KEYS
    if unknown:
        raise ModelSpecError(f"unknown weight keys: {sorted(unknown)}")
    if "step_weights" in block:
        if set(block) - {"step_weights"}:
            raise ModelSpecError("step_weights cannot be combined with alpha, beta or omega")
        return _step_map(block["step_weights"], s, "step_weights"), None

    omega = _omega(block["omega"], s) if "omega" in block else None
    if "alpha" in block:
        alpha = _rationals(block["alpha"], "alpha")
    elif omega is not None:
        alpha = [Fraction(1)] * s.dimension
    else:
        raise ModelSpecError("weights need alpha, omega or step_weights")
    beta = parse_rational(block.get("beta", 1))
    return build_weights(s, alpha, beta, omega), omega


class ModelLoader:
    """Parse model JSON from files, text or decoded dicts."""

    def __init__(self, models_dir: str) -> None:
        self._models_dir = Path(models_dir)
        self._logger = ServiceLogger("loader")

    def from_dict(self, data: Mapping[str, Any], name: Optional[str] = None) -> LoadedModel:
        try:
            spec = ModelSpec.model_validate(data)
        except pydantic.ValidationError as exc:
            raise ModelSpecError(exc.errors(include_url=False, include_context=False)) from exc
        return self.from_spec(spec, name)

    def from_spec(self, spec: ModelSpec, name: Optional[str] = None) -> LoadedModel:
        s = validate(spec.dimension, spec.steps)
        weights, omega = resolve_weights(spec, s)
        self._logger.debug("model loaded", name=name, dimension=s.dimension, steps=len(s), weighted=weights is not None)
        return LoadedModel(name=name, stepset=s, weights=weights, omega=omega, options=spec.options)

    def from_text(self, text: str, name: Optional[str] = None) -> LoadedModel:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelSpecError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
        if not isinstance(data, dict):
            raise ModelSpecError("model JSON must be an object")
        return self.from_dict(data, name)

    def from_path(self, path: str | Path) -> LoadedModel:
        target = Path(path)
        try:
            text = target.read_text(encoding="utf-8")
        except OSError as exc:
            raise ModelSpecError(f"cannot read {target}: {exc.strerror}") from exc
        return self.from_text(text, name=target.stem)

    def named(self, name: str) -> LoadedModel:
        return self.from_path(self._models_dir / f"{name}.json")

    def available(self) -> list[str]:
        if not self._models_dir.is_dir():
            return []
        return sorted(path.stem for path in self._models_dir.glob("*.json"))
