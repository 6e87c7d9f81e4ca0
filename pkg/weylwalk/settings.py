from __future__ import annotations

import os
from pathlib import Path
from typing import List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    app_name: str = Field("weylwalk", alias="APP_NAME")
    budget_bytes: int = Field(2 * 1024**3, alias="WEYLWALK_BUDGET_BYTES", gt=0)
    default_n_max: int = Field(200, alias="WEYLWALK_DEFAULT_NMAX", ge=0)
    dp_mode: str = Field("float", alias="WEYLWALK_DP_MODE", pattern="^(exact|float)$")
    tol_gamma: float = Field(0.05, alias="WEYLWALK_TOL_GAMMA", gt=0)
    tol_exp: float = Field(0.1, alias="WEYLWALK_TOL_EXP", gt=0)
    regions_grid: str = Field("geom:1/4:2:5", alias="WEYLWALK_REGIONS_GRID")
    workers: int = Field(4, alias="WEYLWALK_WORKERS", ge=1)
    log_level: str = Field("INFO", alias="WEYLWALK_LOG_LEVEL")
    models_dir: str = Field("config/models", alias="MODELS_DIR")
    cors_allow_origins: str = Field("*", alias="CORS_ALLOW_ORIGINS")
    rate_limit_enabled: bool = Field(False, alias="RATE_LIMIT_ENABLED")
    rate_limit_default: str = Field("60/minute", alias="RATE_LIMIT_DEFAULT")
    otel_enabled: bool = Field(False, alias="OTEL_ENABLED")
    otel_service_name: str = Field("weylwalk-api", alias="OTEL_SERVICE_NAME")
    otel_exporter_otlp_endpoint: str = Field("", alias="OTEL_EXPORTER_OTLP_ENDPOINT")
    request_id_header: str = Field("X-Request-Id", alias="REQUEST_ID_HEADER")

    model_config = SettingsConfigDict(extra="ignore", populate_by_name=True)

    @property
    def allowed_origins(self) -> List[str]:
        return [origin.strip() for origin in self.cors_allow_origins.split(",") if origin.strip()]


def resolve_env_file() -> Optional[Path]:
    explicit = os.getenv("WEYLWALK_ENV_FILE")
    if explicit:
        return Path(explicit)
    default = Path.cwd() / "config" / "weylwalk.env"
    if default.exists():
        return default
    return None


def load_settings() -> Settings:
    env_file = resolve_env_file()
    if env_file:
        return Settings(_env_file=str(env_file))
    return Settings()
