from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .clock import Clock, SystemClock
from .id_provider import IdProvider, UUIDProvider
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


@dataclass
class Container:
    settings: Settings
    loader: ModelLoader
    health_service: HealthService
    classification_service: ClassificationService
    analysis_service: AnalysisService
    verification_service: VerificationService
    region_service: RegionService
    enumeration_service: EnumerationService
    clock: Clock
    id_provider: IdProvider


def build_container(
    settings: Settings,
    clock: Optional[Clock] = None,
    ids: Optional[IdProvider] = None,
) -> Container:
    clock = clock or SystemClock()
    ids = ids or UUIDProvider()

    loader = ModelLoader(settings.models_dir)
    classification_service = ClassificationService()
    analysis_service = AnalysisService(classification_service)
    verification_service = VerificationService(settings, classification_service, analysis_service, clock, ids)

    return Container(
        settings=settings,
        loader=loader,
        health_service=HealthService(clock),
        classification_service=classification_service,
        analysis_service=analysis_service,
        verification_service=verification_service,
        region_service=RegionService(settings),
        enumeration_service=EnumerationService(settings),
        clock=clock,
        id_provider=ids,
    )
