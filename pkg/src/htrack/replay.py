"""Independent verdict recomputation from a raw event log.

This is deliberately duplicated logic: it audits a run the way one would
audit the hardware from its logs, without touching the incremental
controllers. Enablement comes from gate-edge parity (refractory filter
applied directly per sensor, count capped at eight), halts from a literal
gap scan over encoder tick times, and misalignment from any monitoring
edge or post strike. Frame records are consulted only for halt relay
fate and timing, never for enablement, so the reconstruction assumes
commands arrived promptly; verdicts on lossy-link logs may legitimately
disagree with the live run and the disagreement is the finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .events import EventLog


@dataclass(frozen=True)
class ReplayVerdict:
    verdict: str | None  # "passed" | "failed" | None
    fail_reason: str | None
    fail_t: float | None
    gate_count: int

    def agrees_with(self, recorded_status: str | None, recorded_reason: str | None) -> bool:
        mine = self.verdict if self.verdict is not None else "running"
        theirs = recorded_status if recorded_status is not None else "running"
        return mine == theirs and (self.fail_reason or None) == (recorded_reason or None)


def _accepted_gate_crossings(log: EventLog, refractory: float) -> list[float]:
    per_sensor: dict[str, list[float]] = {}
    for record in log.of_kind("sensor_edge"):
        if record["role"] == "gating":
            per_sensor.setdefault(record["sensor"], []).append(record["t"])
    accepted: list[float] = []
    for times in per_sensor.values():
        last = None
        for t in sorted(times):
            if last is None or t - last > refractory:
                accepted.append(t)
                last = t
    accepted.sort()
    return accepted


def _scan_gap(
    ref_t: float,
    ref_tick: int,
    until_tick: int,
    threshold: float,
    dt: float,
) -> float | None:
    """First tick time in (ref_tick, until_tick) whose gap to ref_t exceeds
    the threshold. Computes tick times exactly as the live loop does so
    float behavior at one-second gaps matches."""
    for m in range(ref_tick + 1, until_tick):
        t = m * dt
        if t - ref_t > threshold:
            return t
    return None


def replay_verdict(log: EventLog) -> ReplayVerdict:
    meta = log.records[0]
    dt = meta["dt"]
    refractory = meta["refractory"]
    threshold = meta["halt_threshold"]

    session_ts = [r["t"] for r in log.of_kind("session")]
    t_end = max(session_ts) if session_ts else 0.0

    # Candidate events as (processing_time, tick_priority, kind).
    candidates: list[tuple[float, int, str, float]] = []

    # Any monitoring-beam break or post strike fails the drive outright.
    misalign_ts = [r["t"] for r in log.of_kind("trounce")]
    misalign_ts += [
        r["t"] for r in log.of_kind("sensor_edge") if r["role"] == "monitoring"
    ]
    if misalign_ts:
        t_m = min(misalign_ts)
        candidates.append((t_m, 0, "sensors_misaligned", t_m))

    # Halt: inside the H means an odd number of accepted gate crossings
    # (capped at eight); within such an interval, more than one second
    # with no encoder tick is a halt at the first tick past the gap.
    crossings = _accepted_gate_crossings(log, refractory)[:8]
    gate_count = len(crossings)
    encoder_ts = sorted(r["t"] for r in log.of_kind("encoder"))
    halt_frames = sorted(
        (r for r in log.of_kind("frame") if r["payload"] == "H"),
        key=lambda r: r["seq"],
    )

    def tick_of(t: float) -> int:
        return round(t / dt)

    end_tick = tick_of(t_end)
    halt_detect: float | None = None
    for i in range(0, len(crossings), 2):
        start = crossings[i]
        end_t = crossings[i + 1] if i + 1 < len(crossings) else None
        interval_end = tick_of(end_t) if end_t is not None else end_tick + 1
        refs = [start] + [t for t in encoder_ts if start < t < (end_t or math.inf)]
        for j, ref in enumerate(refs):
            nxt = tick_of(refs[j + 1]) if j + 1 < len(refs) else interval_end
            detect = _scan_gap(ref, tick_of(ref), min(nxt, end_tick + 1), threshold, dt)
            if detect is not None:
                halt_detect = detect
                break
        if halt_detect is not None:
            break

    if halt_detect is not None:
        # The report rides the uplink; it only reaches the verdict if the
        # matching frame was delivered, one poll after its delivery time.
        frame = next(
            (f for f in halt_frames if abs(f["sent_t"] - halt_detect) < dt / 2), None
        )
        if frame is None or frame["fate"] == "delivered":
            deliver_t = frame["deliver_t"] if frame is not None else halt_detect
            processing = max(halt_detect + dt, math.ceil(deliver_t / dt - 1e-9) * dt)
            if processing <= t_end + dt / 2:  # relays past the run's end never land
                candidates.append((processing, 1, "vehicle_halt", halt_detect))

    stops = [r["t"] for r in log.of_kind("operator_stop")]
    if stops:
        candidates.append((min(stops), 2, "operator_stop", min(stops)))

    if not candidates:
        return ReplayVerdict(None, None, None, gate_count)
    candidates.sort(key=lambda c: (round(c[0] / dt), c[1]))
    _, _, kind, event_t = candidates[0]
    if kind == "operator_stop":
        return ReplayVerdict("passed", None, None, gate_count)
    return ReplayVerdict("failed", kind, event_t, gate_count)


def recorded_outcome(log: EventLog) -> tuple[str | None, str | None]:
    """Final session status and reason as the live run recorded them."""
    status, reason = None, None
    for record in log.of_kind("session"):
        status = record["status"]
        reason = record.get("reason")
    if status == "running":
        status = None
    return status, reason
