"""Test-vehicle kinematics and the wheel-mounted optical encoder."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geometry import Rect


@dataclass(frozen=True)
class VehicleState:
    x: float
    y: float
    heading: float  # radians, 0 = +x
    speed: float = 0.0  # m/s, >= 0
    wheel_radius: float = 0.25
    length: float = 4.0
    width: float = 1.8

    def __post_init__(self):
        if self.speed < 0:
            raise ValueError("speed must be >= 0")
        if self.wheel_radius <= 0:
            raise ValueError("wheel_radius must be positive")
        if self.length <= 0 or self.width <= 0:
            raise ValueError("footprint dimensions must be positive")

    def footprint(self) -> Rect:
        return Rect(self.x, self.y, self.heading, self.length, self.width)


@dataclass(frozen=True)
class Control:
    """Controls applied at one timeline instant; None leaves a channel untouched."""

    speed: float | None = None
    steer: float | None = None  # heading rate, rad/s
    goto: tuple[float, float, float] | None = None  # teleport: x, y, heading


def apply_control(state: VehicleState, control: Control) -> VehicleState:
    if control.goto is not None:
        x, y, heading = control.goto
        state = replace(state, x=x, y=y, heading=heading)
    if control.speed is not None:
        state = replace(state, speed=control.speed)
    return state


def step_vehicle(state: VehicleState, steer: float, dt: float) -> VehicleState:
    """Advance one step: straight-line motion plus heading rate (explicit Euler)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return replace(
        state,
        x=state.x + state.speed * math.cos(state.heading) * dt,
        y=state.y + state.speed * math.sin(state.heading) * dt,
        heading=state.heading + steer * dt,
    )


class Encoder:
    """Falling-edge counter for the wheel encoder.

    Accumulates pulse phase with fractional carry across calls so that the
    total edge count over a run equals floor(total revolutions x pulses)
    to within one edge. The wheel is assumed to roll without slip, so a
    position teleport does not advance the phase; only speed does.
    """

    def __init__(self, pulses_per_rev: int = 8):
        if pulses_per_rev < 1:
            raise ValueError("pulses_per_rev must be >= 1")
        self.pulses_per_rev = pulses_per_rev
        self.phase = 0.0

    def step(self, speed: float, wheel_radius: float, dt: float) -> int:
        if dt <= 0:
            raise ValueError("dt must be positive")
        if speed == 0.0:
            return 0
        self.phase += speed / (2.0 * math.pi * wheel_radius) * self.pulses_per_rev * dt
        edges = int(self.phase)
        self.phase -= edges
        return edges
