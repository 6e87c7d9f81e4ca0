from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
import sys

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from weylwalk.clock import FixedClock  # noqa: E402
from weylwalk.container import build_container  # noqa: E402
from weylwalk.id_provider import SequentialIdProvider  # noqa: E402
from weylwalk.settings import Settings  # noqa: E402
from weylwalk.stepset import simple_stepset, validate  # noqa: E402

MODELS_DIR = ROOT / "config" / "models"
FIXED_TIME = datetime(2024, 1, 1, tzinfo=timezone.utc)

TABLE_WEIGHTS = {
    (1, 0, 0): Fraction(8),
    (-1, 0, 0): Fraction(2),
    (0, 1, 0): Fraction(4),
    (0, -1, 0): Fraction(4),
    (0, 0, 1): Fraction(1),
    (0, 0, -1): Fraction(16),
}

NONCENTRAL_WEIGHTS = {
    (1, 0): Fraction(3, 2),
    (-1, 0): Fraction(6),
    (0, 1): Fraction(35),
    (0, -1): Fraction(5, 7),
}


@pytest.fixture
def settings() -> Settings:
    return Settings(_env_file=None, models_dir=str(MODELS_DIR), workers=2)


@pytest.fixture
def container(settings):
    return build_container(settings, clock=FixedClock(FIXED_TIME), ids=SequentialIdProvider())


@pytest.fixture
def loader(container):
    return container.loader


@pytest.fixture
def simple1d():
    return simple_stepset(1)


@pytest.fixture
def simple2d():
    return simple_stepset(2)


@pytest.fixture
def simple3d():
    return simple_stepset(3)


@pytest.fixture
def diagonal2d():
    return validate(2, [[1, 1], [1, -1], [-1, 1], [-1, -1], [1, 0], [-1, 0]])
