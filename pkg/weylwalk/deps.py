from __future__ import annotations

from fastapi import Depends, Request

from .container import Container
from .loader import ModelLoader
from .services import (
    AnalysisService,
    ClassificationService,
    EnumerationService,
    HealthService,
    RegionService,
    VerificationService,
)
from .settings import Settings


def get_container(request: Request) -> Container:
    return request.app.state.container


def get_settings(container: Container = Depends(get_container)) -> Settings:
    return container.settings


def get_loader(container: Container = Depends(get_container)) -> ModelLoader:
    return container.loader


def get_health_service(container: Container = Depends(get_container)) -> HealthService:
    return container.health_service


def get_classification_service(container: Container = Depends(get_container)) -> ClassificationService:
    return container.classification_service


def get_analysis_service(container: Container = Depends(get_container)) -> AnalysisService:
    return container.analysis_service


def get_verification_service(container: Container = Depends(get_container)) -> VerificationService:
    return container.verification_service


def get_region_service(container: Container = Depends(get_container)) -> RegionService:
    return container.region_service


def get_enumeration_service(container: Container = Depends(get_container)) -> EnumerationService:
    return container.enumeration_service
