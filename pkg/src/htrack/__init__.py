"""Deterministic H-track driving skill test: simulator, service, console API."""

from .engine import DEFAULT_DT, RunResult, simulate
from .events import EventLog
from .link import Frame, LinkParams, WirelessLink
from .scenario import Scenario, parse_scenario, serialize_scenario
from .service import EvaluationService, TestSession, alignment_status, render_result_card
from .track import (
    BeamSnapshot,
    SensorEdge,
    TrackConfig,
    TrackLayout,
    beam_states,
    build_track,
    check_trounce,
    diff_edges,
    parse_track_config,
)
from .validation import Application, ValidationReport, apply_clearing_rule, validate_application
from .vehicle import Encoder, VehicleState, step_vehicle
from .zero_rpm import HaltReport, ZeroRpmUnit

__all__ = [
    "DEFAULT_DT",
    "Application",
    "BeamSnapshot",
    "Encoder",
    "EvaluationService",
    "EventLog",
    "Frame",
    "HaltReport",
    "LinkParams",
    "RunResult",
    "Scenario",
    "SensorEdge",
    "TestSession",
    "TrackConfig",
    "TrackLayout",
    "ValidationReport",
    "VehicleState",
    "WirelessLink",
    "ZeroRpmUnit",
    "alignment_status",
    "apply_clearing_rule",
    "beam_states",
    "build_track",
    "check_trounce",
    "diff_edges",
    "parse_scenario",
    "parse_track_config",
    "render_result_card",
    "serialize_scenario",
    "simulate",
    "step_vehicle",
    "validate_application",
]
