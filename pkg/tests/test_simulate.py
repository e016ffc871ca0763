import math

import pytest

from htrack.engine import simulate
from htrack.link import LinkParams
from htrack.scenario import Scenario, StartPose, VehicleParams, parse_scenario
from htrack.service import EvaluationService, REASON_HALT, REASON_SENSORS
from htrack.vehicle import Control

from conftest import scenario_text
from helpers import VALID_APP, run_scenario

CLEAN_GATE_ORDER = ["S9", "S10", "S10", "S12", "S12", "S11", "S11", "S12"]


def load(name):
    return parse_scenario(scenario_text(name))


def halt_boundary_scenario(stationary_s: float) -> Scenario:
    """Path-1 entry at 5 m/s with a mid-leg stop of the given length.

    pulses_per_rev=32 keeps encoder edges ticking nearly every 10 ms, so
    the stationary window dominates the measured gap.
    """
    resume = round(2.5 + stationary_s, 2)
    return Scenario(
        name=f"halt-{stationary_s}",
        seed=1,
        duration=8.0,
        start=StartPose(1.5, -4.0, math.pi / 2),
        timeline=(
            (0.5, Control(speed=5.0)),
            (2.5, Control(speed=0.0)),
            (resume, Control(speed=5.0)),
        ),
        operator_stop_at=7.5,
        vehicle=VehicleParams(pulses_per_rev=32),
    )


def test_golden_pass_full_drive(layout):
    result, _ = run_scenario(layout, load("golden_pass"))
    assert result.verdict == "passed"
    assert result.gate_count == 8
    gate_edges = [
        r["sensor"] for r in result.log.of_kind("sensor_edge") if r["role"] == "gating"
    ]
    assert gate_edges == CLEAN_GATE_ORDER
    commands = [
        r["payload"] for r in result.log.of_kind("frame") if r["direction"] == "downlink"
    ]
    assert commands == ["E", "D", "E", "D", "E", "D", "E", "D"]
    assert result.log.of_kind("sensor_edge") == [
        r for r in result.log.of_kind("sensor_edge") if r["role"] == "gating"
    ]  # no monitoring edge in a clean drive


def test_golden_pass_byte_identical_logs(layout):
    lines = [run_scenario(layout, load("golden_pass"))[0].log.to_lines() for _ in range(3)]
    assert lines[0] == lines[1] == lines[2]


def test_jittered_link_still_deterministic_from_scenario_seed(layout):
    # LinkParams without an explicit seed falls back to the scenario's.
    params = LinkParams(base_latency=0.02, jitter=0.05)
    a, _ = run_scenario(layout, load("golden_pass"), link_params=params)
    b, _ = run_scenario(layout, load("golden_pass"), link_params=params)
    assert a.log.to_lines() == b.log.to_lines()
    assert a.verdict == "passed"


def test_halt_inside_fails(layout):
    result, _ = run_scenario(layout, load("halt_inside"))
    assert result.verdict == "failed"
    assert result.fail_reason == REASON_HALT
    halts = result.log.of_kind("halt")
    assert len(halts) == 1
    # Stopped at t=3.0; threshold is strict so the latch lands just past
    # one second after the last encoder edge.
    assert 3.95 <= halts[0]["t"] <= 4.1


def test_halt_boundary_1050ms_fails(layout):
    result, _ = run_scenario(layout, halt_boundary_scenario(1.05))
    assert result.verdict == "failed"
    assert result.fail_reason == REASON_HALT


def test_halt_boundary_950ms_passes(layout):
    result, _ = run_scenario(layout, halt_boundary_scenario(0.95))
    assert result.verdict == "passed"
    assert result.log.of_kind("halt") == []


def test_stationary_5s_outside_no_failure(layout):
    result, _ = run_scenario(layout, load("early_stop"))
    assert result.verdict == "passed"
    assert result.log.of_kind("halt") == []
    assert any("gate count 2" in w for w in result.session.warnings)


def test_trounce_fails_misaligned(layout):
    result, _ = run_scenario(layout, load("trounce_s3"))
    assert result.verdict == "failed"
    assert result.fail_reason == REASON_SENSORS
    struck = result.log.of_kind("trounce")[0]["posts"]
    assert "S3-b" in struck


def test_cross_line_fails_misaligned_without_trounce(layout):
    result, _ = run_scenario(layout, load("cross_line_s7"))
    assert result.verdict == "failed"
    assert result.fail_reason == REASON_SENSORS
    assert result.log.of_kind("trounce") == []
    monitoring = [
        r["sensor"] for r in result.log.of_kind("sensor_edge") if r["role"] == "monitoring"
    ]
    assert monitoring == ["S7"]


def test_verdict_monotonic_after_failure(layout):
    result, service = run_scenario(layout, load("halt_inside"))
    sid = result.session.id
    assert service.stop_test(sid, 99.0).status == "failed"
    assert service.record_failure(sid, REASON_SENSORS, 99.0).fail_reason == REASON_HALT
    session_records = result.log.of_kind("session")
    failed_at = next(i for i, r in enumerate(session_records) if r["status"] == "failed")
    assert all(r["status"] == "failed" for r in session_records[failed_at:])


def test_encoder_conservation_over_run(layout):
    scenario = load("golden_pass")
    result, _ = run_scenario(layout, scenario)
    total_edges = sum(r["edges"] for r in result.log.of_kind("encoder"))
    moving_time = 5.5 + 5.6 + 5.0 + 5.0  # the four scripted motion windows
    # Distance is speed * time over the motion windows: 4 m/s throughout.
    distance = 4.0 * moving_time
    revs = distance / (2 * math.pi * 0.25)
    assert abs(total_edges - revs * 8) <= 2


def test_simulation_requires_running_session(layout):
    service = EvaluationService(layout)
    session = service.submit_application(VALID_APP)
    with pytest.raises(ValueError, match="running"):
        simulate(layout, load("golden_pass"), service, session.id)


def test_link_frames_all_accounted(layout):
    result, _ = run_scenario(
        layout, load("golden_pass"), link_params=LinkParams(drop_probability=0.3, seed=2)
    )
    frames = result.log.of_kind("frame")
    assert frames, "expected traffic"
    assert all(f["fate"] in ("delivered", "dropped") for f in frames)


def test_incomplete_run_returns_no_verdict(layout):
    scenario = Scenario(
        name="incomplete",
        seed=0,
        duration=2.0,
        start=StartPose(-5.0, 16.0, 0.0),
        timeline=(),
    )
    result, _ = run_scenario(layout, scenario)
    assert result.verdict is None
    assert result.session.status == "running"
