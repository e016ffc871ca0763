"""Shared test machinery: scripted run harness and random drive generator."""

from __future__ import annotations

import random

from htrack.engine import simulate
from htrack.link import LinkParams
from htrack.scenario import Scenario, StartPose, VehicleParams
from htrack.service import EvaluationService
from htrack.validation import Application
from htrack.vehicle import Control

VALID_APP = Application(
    first_name="Asha",
    middle_name="K",
    last_name="Nair",
    address="12 Beach Road, Palai",
    pin_code="686574",
    date_of_birth="1995-04-03",
    gender="female",
)


def run_scenario(layout, scenario, link_params=LinkParams(), dt=0.01, strict_stop=False):
    """Submit, start, simulate: the standard headless pipeline."""
    service = EvaluationService(layout, strict_stop=strict_stop)
    session = service.submit_application(VALID_APP)
    service.start_test(session.id)
    result = simulate(layout, scenario, service, session.id, link_params=link_params, dt=dt)
    return result, service


def _snap(t: float) -> float:
    return round(round(t / 0.01) * 0.01, 2)


class _Script:
    """Accumulates timeline entries behind a moving time cursor."""

    def __init__(self, start_pose):
        self.start = start_pose
        self.entries: list[tuple[float, Control]] = []
        self.t = 0.2

    def add(self, dt_offset: float, **control) -> None:
        self.t = _snap(self.t + dt_offset)
        self.entries.append((self.t, Control(**control)))

    def wait(self, duration: float) -> None:
        self.t = _snap(self.t + duration)


def random_scenario(seed: int) -> Scenario:
    """Random drive over the default H: legs, crossbar routes, inside
    stops (some past the halt threshold), wall grazes, post clips and
    outside pauses. Inside-stop durations avoid the 0.9..1.1 s band so
    the expected outcome is never decided by one tick of quantization."""
    rng = random.Random(seed)
    script = _Script(StartPose(x=-5.0, y=16.0, heading=0.0))

    def leg(block_rng):
        v = block_rng.choice([2.0, 3.0, 4.0, 5.0])
        entry = block_rng.choice(
            [(1.5, -4.0, 90.0), (1.5, 16.0, -90.0), (16.5, -4.0, 90.0), (16.5, 16.0, -90.0)]
        )
        x, y, hdg = entry
        script.add(0.3, goto=(x, y, _rad(hdg)), speed=v)
        script.add(_snap(20.0 / v) + 0.02, speed=0.0)

    def stop_inside(block_rng):
        v = block_rng.choice([3.0, 4.0, 5.0])
        dur = block_rng.choice([0.3, 0.5, 0.7, 0.85, 1.15, 1.3, 1.6, 2.0])
        script.add(0.3, goto=(1.5, -4.0, _rad(90.0)), speed=v)
        script.add(_snap(10.0 / v) + 0.02, speed=0.0)
        script.add(dur, speed=v)
        script.add(_snap(10.0 / v) + 0.02, speed=0.0)

    def crossbar(block_rng):
        script.add(0.3, goto=(1.5, 16.0, _rad(-90.0)), speed=4.0)
        script.add(1.9, goto=(5.5, 6.0, 0.0))
        script.add(1.8, goto=(16.5, 3.5, _rad(-90.0)))
        script.add(1.9, speed=0.0)

    def graze(block_rng):
        v = block_rng.choice([3.0, 4.0])
        script.add(0.3, goto=(16.5, -4.0, _rad(90.0)), speed=v)
        script.add(_snap(11.0 / v), goto=(15.8, 9.0, _rad(110.0)))
        script.add(0.5, speed=0.0)

    def clip_post(block_rng):
        script.add(0.3, goto=(3.0, 16.0, _rad(-90.0)), speed=3.0)
        script.add(1.0, speed=0.0)

    def pause_outside(block_rng):
        script.add(0.3, goto=(-5.0, 16.0, 0.0), speed=0.0)
        script.wait(block_rng.choice([0.5, 1.5, 3.0, 6.0]))

    blocks = [leg, stop_inside, crossbar, graze, clip_post, pause_outside]
    weights = [10, 5, 3, 1, 1, 3]
    for _ in range(rng.randint(1, 4)):
        rng.choices(blocks, weights=weights, k=1)[0](rng)

    stop_at = None
    if rng.random() < 0.85:
        stop_at = _snap(script.t + rng.uniform(0.5, 2.0))
    duration = _snap((stop_at or script.t) + 1.0)
    return Scenario(
        name=f"random-{seed}",
        seed=seed,
        duration=duration,
        start=script.start,
        timeline=tuple(script.entries),
        operator_stop_at=stop_at,
        vehicle=VehicleParams(),
    )


def _rad(deg: float) -> float:
    import math

    return math.radians(deg)
