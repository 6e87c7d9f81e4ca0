"""Request bodies for the HTTP surface."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .domain import ModelSpec, PjEvaluation
from .oracle.domain import DpMode


class ModelRequest(BaseModel):
    """Either an inline model or the name of a bundled one under MODELS_DIR."""

    model_config = ConfigDict(protected_namespaces=())

    model: Optional[ModelSpec] = None
    model_name: Optional[str] = Field(None, pattern=r"^[A-Za-z0-9_\-]+$")
    mode: Optional[DpMode] = None

    @model_validator(mode="after")
    def _one_source(self) -> ModelRequest:
        if (self.model is None) == (self.model_name is None):
            raise ValueError("give exactly one of model or model_name")
        return self


class AnalyzeRequest(ModelRequest):
    pj_evaluation: PjEvaluation = PjEvaluation.AT_POINT


class RegionsRequest(ModelRequest):
    grid: Optional[str] = None


class VerifyRequest(ModelRequest):
    n_max: Optional[int] = Field(None, ge=0)
    budget: Optional[int] = Field(None, gt=0)
    tol_gamma: Optional[float] = Field(None, gt=0)
    tol_exp: Optional[float] = Field(None, gt=0)
    excursions: bool = False
    evaluation: bool = False


class EnumerateRequest(ModelRequest):
    n_max: Optional[int] = Field(None, ge=0)
    budget: Optional[int] = Field(None, gt=0)
    by_endpoint: bool = False
