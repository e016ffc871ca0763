from pathlib import Path

import pytest

from htrack.track import TrackConfig, build_track

REPO = Path(__file__).resolve().parent.parent
SCENARIOS = REPO / "scenarios"


@pytest.fixture(scope="session")
def layout():
    return build_track(TrackConfig.default())


def scenario_path(name: str) -> Path:
    return SCENARIOS / f"{name}.scn"


def scenario_text(name: str) -> str:
    return scenario_path(name).read_text(encoding="utf-8")
