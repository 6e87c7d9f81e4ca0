from __future__ import annotations

import itertools
from typing import Protocol
from uuid import uuid4


class IdProvider(Protocol):
    def new_id(self) -> str: ...


class UUIDProvider:
    def new_id(self) -> str:
        return uuid4().hex


class SequentialIdProvider:
    """run-1, run-2, ... for deterministic reports."""

    def __init__(self, prefix: str = "run") -> None:
        self._prefix = prefix
        self._counter = itertools.count(1)

    def new_id(self) -> str:
        return f"{self._prefix}-{next(self._counter)}"
