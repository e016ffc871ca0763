"""On-vehicle halt detector: zero encoder edges for >1 s while enabled.

Single-byte command protocol from the central unit: 'E' enables (and
restarts the grace timer so a slow track entry is not an instant fail),
'D' disables. A halt latches until the next 'E', so one enable interval
reports at most once. Unknown command bytes are tolerated as link noise.
"""

from __future__ import annotations

from dataclasses import dataclass

HALT_THRESHOLD_S = 1.0

CMD_ENABLE = "E"
CMD_DISABLE = "D"


@dataclass(frozen=True)
class HaltReport:
    t: float


class ZeroRpmUnit:
    def __init__(self, threshold: float = HALT_THRESHOLD_S):
        self.threshold = threshold
        self.enabled = False
        self.halt_latched = False
        self.last_edge_t: float | None = None
        self.enabled_since_t: float | None = None
        self.noise_bytes: list[str] = []

    def on_command(self, cmd: str, t: float) -> None:
        if cmd == CMD_ENABLE:
            self.enabled = True
            self.enabled_since_t = t
            self.halt_latched = False
            self.last_edge_t = t  # grace restart
        elif cmd == CMD_DISABLE:
            self.enabled = False
        else:
            self.noise_bytes.append(cmd)

    def on_encoder_edge(self, t: float) -> None:
        # Edges are tracked even while disabled; only the halt rule is gated.
        self.last_edge_t = t

    def tick(self, t: float) -> HaltReport | None:
        if not self.enabled or self.halt_latched or self.last_edge_t is None:
            return None
        if t - self.last_edge_t > self.threshold:
            self.halt_latched = True
            return HaltReport(t=t)
        return None
