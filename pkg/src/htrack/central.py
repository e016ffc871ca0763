"""Central controller: gate counting, enable/disable cadence, halt relay.

Gate edges drive a saturating 0..8 count. Odd count means the vehicle is
inside the H (halt detection enabled, command 'E' goes out); even means
outside ('D'). A per-sensor refractory window absorbs beam flicker while
one crossing is in progress, so each physical crossing counts once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .track import GATING_IDS
from .zero_rpm import CMD_DISABLE, CMD_ENABLE, HaltReport

COUNT_COMPLETE = 8
DEFAULT_REFRACTORY_S = 0.5

DISPLAY_WAITING = "WAITING FOR VEHICLE"
DISPLAY_HALT = "VEHICLE HALT - TEST FAILED"


@dataclass(frozen=True)
class FailureNotice:
    reason: str
    t: float
    anomaly: bool = False


class CentralControl:
    def __init__(self, refractory: float = DEFAULT_REFRACTORY_S):
        self.count = 0
        self.refractory = refractory
        self.last_cmd: str | None = None
        self.halt_relayed = False
        self.saturated_edges = 0
        self._display = DISPLAY_WAITING
        self._last_accept: dict[str, float] = {}

    @property
    def enabled_view(self) -> bool:
        return self.count % 2 == 1

    def on_gate_edge(self, sensor_id: str, t: float) -> str | None:
        """Count one gate crossing; returns the command byte to send, if any."""
        if sensor_id not in GATING_IDS:
            raise ValueError(f"{sensor_id} is not a gating sensor")
        last = self._last_accept.get(sensor_id)
        if last is not None and t - last <= self.refractory:
            return None
        self._last_accept[sensor_id] = t
        if self.count >= COUNT_COMPLETE:
            self.saturated_edges += 1
            return None
        self.count += 1
        cmd = CMD_ENABLE if self.count % 2 == 1 else CMD_DISABLE
        self.last_cmd = cmd
        side = "INSIDE" if self.enabled_view else "OUTSIDE"
        self._display = f"COUNT {self.count} VEHICLE {side}"
        return cmd

    def on_halt_report(self, report: HaltReport) -> FailureNotice | None:
        """Relay a halt to the monitoring system exactly once."""
        if self.halt_relayed:
            return None
        self.halt_relayed = True
        self._display = DISPLAY_HALT
        # A report while the count is even should be unreachable on an
        # ideal link; relay it anyway and flag the anomaly.
        return FailureNotice(reason="vehicle_halt", t=report.t, anomaly=not self.enabled_view)

    def display_state(self) -> str:
        return self._display
