"""Scripted drive scenarios: the stand-in for a human test candidate.

File format (line oriented, ``#`` comments, versioned header):

    version 1
    name golden-pass
    seed 42
    duration 60.0
    operator_stop_at 58.0
    vehicle length=4.0 width=1.8 wheel_radius=0.25 pulses_per_rev=8
    start x=1.5 y=-5.0 heading=90
    at 0.0 speed=5.0
    at 4.0 goto=5.5,6.0,0.0 speed=2.0

Headings are degrees in files, radians in memory. Timeline times must be
strictly increasing and ``duration`` must not precede the last entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .vehicle import Control


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class StartPose:
    x: float
    y: float
    heading: float  # radians


@dataclass(frozen=True)
class VehicleParams:
    length: float = 4.0
    width: float = 1.8
    wheel_radius: float = 0.25
    pulses_per_rev: int = 8


@dataclass(frozen=True)
class Scenario:
    name: str
    seed: int
    duration: float
    start: StartPose
    timeline: tuple[tuple[float, Control], ...] = ()
    operator_stop_at: float | None = None
    vehicle: VehicleParams = field(default_factory=VehicleParams)

    def validate(self) -> None:
        if self.duration <= 0:
            raise ScenarioError("duration: must be positive")
        prev = None
        for t, _ in self.timeline:
            if prev is not None and t <= prev:
                raise ScenarioError(
                    f"timeline: times must be strictly increasing (t={t} after t={prev})"
                )
            prev = t
        if prev is not None and self.duration < prev:
            raise ScenarioError(
                f"duration: {self.duration} precedes last timeline time {prev}"
            )
        if self.operator_stop_at is not None and self.operator_stop_at < 0:
            raise ScenarioError("operator_stop_at: must be >= 0")


_HEADER_KEYS = ("version", "name", "seed", "duration", "operator_stop_at", "vehicle", "start")


def _kv_tokens(tokens: list[str], lineno: int, allowed: tuple[str, ...]) -> dict[str, str]:
    out = {}
    for token in tokens:
        if "=" not in token:
            raise ScenarioError(f"line {lineno}: expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        if key not in allowed:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        if key in out:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def parse_scenario(text: str) -> Scenario:
    header: dict[str, object] = {}
    timeline: list[tuple[float, Control]] = []
    saw_any = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        saw_any = True
        tokens = line.split()
        key = tokens[0]
        try:
            if key == "version":
                if tokens[1:] != ["1"]:
                    raise ScenarioError(f"line {lineno}: unsupported version {tokens[1:]}")
                header["version"] = 1
            elif key == "name":
                header["name"] = " ".join(tokens[1:])
            elif key == "seed":
                header["seed"] = int(tokens[1])
            elif key == "duration":
                header["duration"] = float(tokens[1])
            elif key == "operator_stop_at":
                header["operator_stop_at"] = float(tokens[1])
            elif key == "vehicle":
                kv = _kv_tokens(tokens[1:], lineno,
                                ("length", "width", "wheel_radius", "pulses_per_rev"))
                header["vehicle"] = VehicleParams(
                    length=float(kv.get("length", 4.0)),
                    width=float(kv.get("width", 1.8)),
                    wheel_radius=float(kv.get("wheel_radius", 0.25)),
                    pulses_per_rev=int(kv.get("pulses_per_rev", 8)),
                )
            elif key == "start":
                kv = _kv_tokens(tokens[1:], lineno, ("x", "y", "heading"))
                header["start"] = StartPose(
                    x=float(kv["x"]),
                    y=float(kv["y"]),
                    heading=math.radians(float(kv["heading"])),
                )
            elif key == "at":
                t = float(tokens[1])
                kv = _kv_tokens(tokens[2:], lineno, ("speed", "steer", "goto"))
                if not kv:
                    raise ScenarioError(f"line {lineno}: timeline entry carries no controls")
                goto = None
                if "goto" in kv:
                    gx, gy, gh = (float(v) for v in kv["goto"].split(","))
                    goto = (gx, gy, math.radians(gh))
                timeline.append(
                    (
                        t,
                        Control(
                            speed=float(kv["speed"]) if "speed" in kv else None,
                            steer=math.radians(float(kv["steer"])) if "steer" in kv else None,
                            goto=goto,
                        ),
                    )
                )
            else:
                raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        except ScenarioError:
            raise
        except (IndexError, ValueError, KeyError) as exc:
            raise ScenarioError(f"line {lineno}: cannot parse {raw.strip()!r}") from exc

    if not saw_any:
        raise ScenarioError("empty scenario file")
    if "version" not in header:
        raise ScenarioError("missing versioned header (expected 'version 1')")
    for required in ("duration", "start"):
        if required not in header:
            raise ScenarioError(f"{required}: missing required field")

    scenario = Scenario(
        name=str(header.get("name", "unnamed")),
        seed=int(header.get("seed", 0)),
        duration=float(header["duration"]),
        start=header["start"],
        timeline=tuple(timeline),
        operator_stop_at=header.get("operator_stop_at"),
        vehicle=header.get("vehicle", VehicleParams()),
    )
    scenario.validate()
    return scenario


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical text form; parse(serialize(s)) == s."""
    lines = [
        "version 1",
        f"name {scenario.name}",
        f"seed {scenario.seed}",
        f"duration {scenario.duration!r}",
    ]
    if scenario.operator_stop_at is not None:
        lines.append(f"operator_stop_at {scenario.operator_stop_at!r}")
    v = scenario.vehicle
    lines.append(
        f"vehicle length={v.length!r} width={v.width!r} "
        f"wheel_radius={v.wheel_radius!r} pulses_per_rev={v.pulses_per_rev}"
    )
    s = scenario.start
    lines.append(f"start x={s.x!r} y={s.y!r} heading={math.degrees(s.heading)!r}")
    for t, control in scenario.timeline:
        parts = [f"at {t!r}"]
        if control.speed is not None:
            parts.append(f"speed={control.speed!r}")
        if control.steer is not None:
            parts.append(f"steer={math.degrees(control.steer)!r}")
        if control.goto is not None:
            gx, gy, gh = control.goto
            parts.append(f"goto={gx!r},{gy!r},{math.degrees(gh)!r}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
