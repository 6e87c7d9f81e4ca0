from __future__ import annotations

from fastapi import APIRouter, Depends

from ..deps import (
    get_analysis_service,
    get_classification_service,
    get_enumeration_service,
    get_health_service,
    get_loader,
    get_region_service,
    get_settings,
    get_verification_service,
)
from ..domain import AnalysisReport, ClassificationReport, HealthStatus, LoadedModel
from ..loader import ModelLoader
from ..oracle.domain import DpMode
from ..reports import EnumerationReport, RegionReport, Tolerances, VerificationReport
from ..schemas import AnalyzeRequest, EnumerateRequest, ModelRequest, RegionsRequest, VerifyRequest
from ..services import (
    AnalysisService,
    ClassificationService,
    EnumerationService,
    HealthService,
    RegionService,
    VerificationService,
    arithmetic_for,
)
from ..settings import Settings

router = APIRouter()


def _load(payload: ModelRequest, loader: ModelLoader) -> LoadedModel:
    if payload.model_name is not None:
        return loader.named(payload.model_name)
    assert payload.model is not None
    return loader.from_spec(payload.model)


def _mode(payload: ModelRequest, settings: Settings) -> DpMode:
    return payload.mode or DpMode(settings.dp_mode)


@router.get("/health", response_model=HealthStatus)
async def health(service: HealthService = Depends(get_health_service)):
    return service.health()


@router.get("/models", response_model=list[str])
async def list_models(loader: ModelLoader = Depends(get_loader)):
    return loader.available()


@router.post("/classify", response_model=ClassificationReport)
def classify(
    payload: ModelRequest,
    loader: ModelLoader = Depends(get_loader),
    settings: Settings = Depends(get_settings),
    service: ClassificationService = Depends(get_classification_service),
):
    return service.classify(_load(payload, loader), arithmetic_for(_mode(payload, settings)))


@router.post("/analyze", response_model=AnalysisReport)
def analyze(
    payload: AnalyzeRequest,
    loader: ModelLoader = Depends(get_loader),
    settings: Settings = Depends(get_settings),
    service: AnalysisService = Depends(get_analysis_service),
):
    model = _load(payload, loader)
    return service.analyze(model, arithmetic_for(_mode(payload, settings)), payload.pj_evaluation)


@router.post("/regions", response_model=RegionReport)
def regions(
    payload: RegionsRequest,
    loader: ModelLoader = Depends(get_loader),
    service: RegionService = Depends(get_region_service),
):
    return service.regions(_load(payload, loader), payload.grid)


@router.post("/verify", response_model=VerificationReport)
def verify(
    payload: VerifyRequest,
    loader: ModelLoader = Depends(get_loader),
    settings: Settings = Depends(get_settings),
    service: VerificationService = Depends(get_verification_service),
):
    tolerances = Tolerances(
        gamma=payload.tol_gamma or settings.tol_gamma,
        exponent=payload.tol_exp or settings.tol_exp,
    )
    return service.verify(
        _load(payload, loader),
        n_max=payload.n_max,
        mode=payload.mode,
        tolerances=tolerances,
        budget_bytes=payload.budget,
        check_excursions=payload.excursions,
        check_evaluation=payload.evaluation,
    )


@router.post("/enumerate", response_model=EnumerationReport)
def enumerate_counts(
    payload: EnumerateRequest,
    loader: ModelLoader = Depends(get_loader),
    service: EnumerationService = Depends(get_enumeration_service),
):
    return service.enumerate(
        _load(payload, loader),
        n_max=payload.n_max,
        by_endpoint=payload.by_endpoint,
        mode=payload.mode,
        budget_bytes=payload.budget,
    )
