"""Simulated transparent serial channel between the two controllers.

Single-byte frames ('E'/'D' downlink, 'H' uplink) with configurable
latency, uniform jitter and drop probability, all driven by one seeded
RNG so a run's delivery schedule is reproducible. ``in_order`` clamps
delivery times to be non-decreasing per direction, matching serial-line
semantics; turning it off exists only to probe state-machine assumptions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

VALID_PAYLOADS = ("E", "D", "H")


@dataclass(frozen=True)
class LinkParams:
    base_latency: float = 0.0
    jitter: float = 0.0
    drop_probability: float = 0.0
    seed: int | None = None
    in_order: bool = True

    def __post_init__(self):
        if self.base_latency < 0 or self.jitter < 0:
            raise ValueError("latency and jitter must be >= 0")
        if not 0.0 <= self.drop_probability <= 1.0:
            raise ValueError("drop_probability must be in [0, 1]")


@dataclass(frozen=True)
class Frame:
    payload: str
    direction: str  # "downlink" | "uplink"
    sent_t: float
    deliver_t: float
    fate: str  # "delivered" | "dropped"
    seq: int


class WirelessLink:
    def __init__(self, params: LinkParams, seed: int = 0):
        self.params = params
        self._rng = random.Random(params.seed if params.seed is not None else seed)
        self._seq = 0
        self._in_flight: list[Frame] = []
        self._last_deliver: dict[str, float] = {}
        self.history: list[Frame] = []

    def send(self, payload: str, direction: str, t: float) -> Frame:
        if payload not in VALID_PAYLOADS:
            raise ValueError(f"unknown payload byte {payload!r}")
        dropped = self._rng.random() < self.params.drop_probability
        delay = self.params.base_latency + self._rng.uniform(0.0, self.params.jitter)
        deliver_t = t + delay
        if self.params.in_order:
            deliver_t = max(deliver_t, self._last_deliver.get(direction, 0.0))
            self._last_deliver[direction] = deliver_t
        frame = Frame(
            payload=payload,
            direction=direction,
            sent_t=t,
            deliver_t=deliver_t,
            fate="dropped" if dropped else "delivered",
            seq=self._seq,
        )
        self._seq += 1
        self.history.append(frame)
        if not dropped:
            self._in_flight.append(frame)
        return frame

    def poll(self, t: float) -> list[Frame]:
        """Frames due at or before t, ordered by (deliver_t, send order), each once."""
        due = [f for f in self._in_flight if f.deliver_t <= t]
        if not due:
            return []
        due.sort(key=lambda f: (f.deliver_t, f.seq))
        self._in_flight = [f for f in self._in_flight if f.deliver_t > t]
        return due
