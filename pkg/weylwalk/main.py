from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .api.rest import router as rest_router
from .clock import Clock
from .container import build_container
from .errors import BudgetError, DomainError
from .id_provider import IdProvider
from .logging import ServiceLogger, setup_logging
from .middleware.rate_limit import configure_rate_limiting
from .observability import configure_observability
from .services import VERSION
from .settings import Settings, load_settings


def create_app(
    settings: Settings,
    clock: Optional[Clock] = None,
    ids: Optional[IdProvider] = None,
) -> FastAPI:
    setup_logging(settings.log_level)
    logger = ServiceLogger("api")

    app = FastAPI(
        title=settings.app_name,
        version=VERSION,
        description="Asymptotics and exact counts of weighted reflectable walks in the orthant.",
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.allowed_origins,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    configure_rate_limiting(app, settings)

    container = build_container(settings, clock=clock, ids=ids)
    app.state.container = container

    configure_observability(app, settings)

    @app.exception_handler(BudgetError)
    async def handle_budget(_, exc: BudgetError):
        logger.warning("request over budget", error=exc.kind)
        return JSONResponse(status_code=413, content=exc.to_payload())

    @app.exception_handler(DomainError)
    async def handle_domain(_, exc: DomainError):
        return JSONResponse(status_code=400, content=exc.to_payload())

    @app.middleware("http")
    async def request_id_middleware(request: Request, call_next):
        request_id = request.headers.get(settings.request_id_header, "") or container.id_provider.new_id()
        response = await call_next(request)
        response.headers[settings.request_id_header] = request_id
        return response

    app.include_router(rest_router)
    app.include_router(rest_router, prefix="/v1")

    return app


def app_factory() -> FastAPI:
    return create_app(load_settings())
