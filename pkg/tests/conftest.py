from datetime import datetime, timedelta, timezone

import pytest

from atlas.core import AtlasService, ServiceConfig


class Ticker:
    """Deterministic clock; tests advance it explicitly."""

    def __init__(self, start: datetime = None):
        self.now = start or datetime(2026, 1, 5, 9, 0, 0, tzinfo=timezone.utc)

    def __call__(self) -> datetime:
        return self.now

    def tick(self, seconds: float) -> datetime:
        self.now = self.now + timedelta(seconds=seconds)
        return self.now


@pytest.fixture
def clock():
    return Ticker()


@pytest.fixture
def service(tmp_path, clock):
    return AtlasService(ServiceConfig(data_dir=tmp_path / "data"), clock=clock)
