"""Fixed-step simulation loop tying the whole rig together.

Each 10 ms tick: scripted controls, vehicle motion, post strikes, beam
occlusion and edge extraction, edge routing (gating edges to the central
counter, monitoring edges and trounces to the verdict), link deliveries,
encoder pulses into the halt detector, and the operator stop. The loop
owns all mutable state; live callers interact only through the command
queue and the per-tick sink. Runs are deterministic in (scenario.seed,
link params): repeated runs produce byte-identical event logs.
"""

from __future__ import annotations

import queue
import time
from dataclasses import dataclass

from .central import CentralControl, DEFAULT_REFRACTORY_S
from .events import LOG_VERSION, EventLog
from .link import Frame, LinkParams, WirelessLink
from .scenario import Scenario
from .service import EvaluationService, REASON_SENSORS, RUNNING, TestSession
from .track import TrackLayout, beam_states, check_trounce, diff_edges
from .vehicle import Encoder, VehicleState, apply_control, step_vehicle
from .zero_rpm import HALT_THRESHOLD_S, HaltReport, ZeroRpmUnit

DEFAULT_DT = 0.01


@dataclass
class RunResult:
    verdict: str | None  # "passed" | "failed" | None (still running at cutoff)
    fail_reason: str | None
    gate_count: int
    log: EventLog
    session: TestSession


def simulate(
    layout: TrackLayout,
    scenario: Scenario,
    service: EvaluationService,
    session_id: str,
    link_params: LinkParams = LinkParams(),
    dt: float = DEFAULT_DT,
    sink=None,
    commands: "queue.Queue[str] | None" = None,
    pace: float = 0.0,
) -> RunResult:
    session = service.get_session(session_id)
    if session.status != RUNNING:
        raise ValueError(f"session {session_id} must be running, is {session.status!r}")
    scenario.validate()

    vehicle = VehicleState(
        x=scenario.start.x,
        y=scenario.start.y,
        heading=scenario.start.heading,
        wheel_radius=scenario.vehicle.wheel_radius,
        length=scenario.vehicle.length,
        width=scenario.vehicle.width,
    )
    encoder = Encoder(scenario.vehicle.pulses_per_rev)
    unit = ZeroRpmUnit()
    central = CentralControl()
    link = WirelessLink(link_params, seed=scenario.seed)
    pending_halts: dict[int, HaltReport] = {}
    knocked = set(service.knocked)
    steer = 0.0

    log = EventLog()
    log.append(
        "meta",
        version=LOG_VERSION,
        scenario=scenario.name,
        seed=scenario.seed,
        session=session_id,
        dt=dt,
        base_latency=link_params.base_latency,
        jitter=link_params.jitter,
        drop_probability=link_params.drop_probability,
        in_order=link_params.in_order,
        refractory=DEFAULT_REFRACTORY_S,
        halt_threshold=HALT_THRESHOLD_S,
    )
    log.append("session", t=0.0, status=RUNNING)

    prev_snapshot = beam_states(layout, vehicle.footprint(), frozenset(knocked))
    controls = {round(t_c / dt): c for t_c, c in scenario.timeline}
    if len(controls) != len(scenario.timeline):
        raise ValueError("timeline entries closer together than one tick")
    n_ticks = round(scenario.duration / dt)
    stop_tick = (
        None
        if scenario.operator_stop_at is None
        else max(1, round(scenario.operator_stop_at / dt))
    )

    failure: tuple[str, float] | None = None
    stopped = False
    wall_start = time.monotonic()  # pace > 0 slows playback to pace x real time

    def log_frame(frame: Frame) -> None:
        log.append(
            "frame",
            t=frame.sent_t,
            payload=frame.payload,
            direction=frame.direction,
            sent_t=frame.sent_t,
            deliver_t=frame.deliver_t,
            fate=frame.fate,
            seq=frame.seq,
        )

    for k in range(n_ticks):
        if k in controls:
            vehicle = apply_control(vehicle, controls[k])
            if controls[k].steer is not None:
                steer = controls[k].steer
        t = (k + 1) * dt
        if pace > 0:
            lag = wall_start + t * pace - time.monotonic()
            if lag > 0:
                time.sleep(lag)

        vehicle = step_vehicle(vehicle, steer, dt)
        edge_count = encoder.step(vehicle.speed, vehicle.wheel_radius, dt)
        footprint = vehicle.footprint()

        struck = [p for p in check_trounce(layout, footprint) if p not in knocked]
        if struck:
            knocked.update(struck)
            log.append("trounce", t=t, posts=sorted(struck))
            if failure is None:
                failure = (REASON_SENSORS, t)

        snapshot = beam_states(layout, footprint, frozenset(knocked))
        for edge in diff_edges(prev_snapshot, snapshot, t):
            beam = layout.beam(edge.sensor_id)
            log.append("sensor_edge", t=t, sensor=edge.sensor_id, edge=edge.kind, role=beam.role)
            if beam.role == "gating":
                saturated_before = central.saturated_edges
                cmd = central.on_gate_edge(edge.sensor_id, t)
                if cmd is not None:
                    log.append("central", t=t, sensor=edge.sensor_id, count=central.count, cmd=cmd)
                    log_frame(link.send(cmd, "downlink", t))
                elif central.saturated_edges > saturated_before:
                    log.append(
                        "central", t=t, sensor=edge.sensor_id, count=central.count, cmd=None
                    )
            elif failure is None:
                failure = (REASON_SENSORS, t)
        prev_snapshot = snapshot

        for frame in link.poll(t):
            if frame.direction == "downlink":
                unit.on_command(frame.payload, t)
            else:
                report = pending_halts.pop(frame.seq, HaltReport(t=frame.sent_t))
                notice = central.on_halt_report(report)
                if notice is not None:
                    log.append(
                        "halt_relay", t=t, halt_t=notice.t, anomaly=notice.anomaly
                    )
                    if failure is None:
                        failure = (notice.reason, notice.t)

        if edge_count:
            unit.on_encoder_edge(t)
            log.append("encoder", t=t, edges=edge_count)

        report = unit.tick(t)
        if report is not None:
            log.append("halt", t=report.t)
            frame = link.send("H", "uplink", t)
            log_frame(frame)
            if frame.fate == "delivered":
                pending_halts[frame.seq] = report

        if sink is not None:
            sink(t, snapshot, central.count, service.get_session(session_id).status)
        service.update_live(snapshot, central.count, t)

        if failure is not None:
            reason, fail_t = failure
            session = service.record_failure(session_id, reason, fail_t)
            log.append("session", t=t, status=session.status, reason=session.fail_reason)
            break

        stop_now = stop_tick is not None and k + 1 >= stop_tick
        if commands is not None:
            try:
                while True:
                    if commands.get_nowait() == "stop":
                        stop_now = True
            except queue.Empty:
                pass
        if stop_now:
            log.append("operator_stop", t=t)
            session = service.stop_test(session_id, t)
            log.append("session", t=t, status=session.status)
            stopped = True
            break

    session = service.get_session(session_id)
    verdict = session.status if session.status in ("passed", "failed") else None
    if verdict is None and not stopped:
        log.append("session", t=n_ticks * dt, status=session.status)
    return RunResult(
        verdict=verdict,
        fail_reason=session.fail_reason,
        gate_count=central.count,
        log=log,
        session=session,
    )
