"""H-track geometry: beam placement, occlusion, edge events, post strikes.

The track is the letter H drawn in plan view: two vertical legs joined
by a horizontal crossbar centered on the legs' mid-height. Monitoring
beams (S1..S8) run along the eight wall edges, so a vehicle that stays
inside the drivable area never breaks one; gating beams (S9..S12) span
the four open leg ends and fire once per entrance/exit crossing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .geometry import Point, Rect, point_in_rect, segment_intersects_rect

MONITORING_IDS = tuple(f"S{i}" for i in range(1, 9))
GATING_IDS = tuple(f"S{i}" for i in range(9, 13))
ALL_SENSOR_IDS = MONITORING_IDS + GATING_IDS

WALL_EDGES = (
    "left_leg_left",
    "left_leg_right_lower",
    "left_leg_right_upper",
    "crossbar_bottom",
    "crossbar_top",
    "right_leg_left_lower",
    "right_leg_left_upper",
    "right_leg_right",
)
ENTRANCE_EDGES = (
    "left_leg_bottom",
    "left_leg_top",
    "right_leg_top",
    "right_leg_bottom",
)


class TrackConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Placement:
    """Span of a sensor beam along a named track edge, in meters."""

    edge: str
    start: float
    end: float


@dataclass(frozen=True)
class TrackConfig:
    leg_length: float = 12.0
    leg_width: float = 3.0
    crossbar_length: float = 12.0
    crossbar_width: float = 3.0
    sensor_offsets: dict[str, Placement] = field(default_factory=dict)

    @staticmethod
    def default() -> "TrackConfig":
        cfg = TrackConfig()
        return TrackConfig(sensor_offsets=default_offsets(cfg))


def default_offsets(config: TrackConfig) -> dict[str, Placement]:
    """Full-edge spans: S1..S8 along the eight walls, S9..S12 over the entrances."""
    edges = edge_catalog(config)
    offsets = {}
    for sid, edge in zip(ALL_SENSOR_IDS, WALL_EDGES + ENTRANCE_EDGES):
        (ax, ay), (bx, by) = edges[edge]
        offsets[sid] = Placement(edge, 0.0, math.hypot(bx - ax, by - ay))
    return offsets


def edge_catalog(config: TrackConfig) -> dict[str, tuple[Point, Point]]:
    """Named boundary edges of the H for the given dimensions."""
    L, W = config.leg_length, config.leg_width
    C, B = config.crossbar_length, config.crossbar_width
    y_lo, y_hi = (L - B) / 2.0, (L + B) / 2.0
    x_r = W + C  # left wall of the right leg
    return {
        "left_leg_left": ((0.0, 0.0), (0.0, L)),
        "left_leg_right_lower": ((W, 0.0), (W, y_lo)),
        "left_leg_right_upper": ((W, y_hi), (W, L)),
        "crossbar_bottom": ((W, y_lo), (x_r, y_lo)),
        "crossbar_top": ((W, y_hi), (x_r, y_hi)),
        "right_leg_left_lower": ((x_r, 0.0), (x_r, y_lo)),
        "right_leg_left_upper": ((x_r, y_hi), (x_r, L)),
        "right_leg_right": ((x_r + W, 0.0), (x_r + W, L)),
        "left_leg_bottom": ((0.0, 0.0), (W, 0.0)),
        "left_leg_top": ((0.0, L), (W, L)),
        "right_leg_top": ((x_r, L), (x_r + W, L)),
        "right_leg_bottom": ((x_r, 0.0), (x_r + W, 0.0)),
    }


@dataclass(frozen=True)
class Beam:
    sensor_id: str
    role: str  # "monitoring" | "gating"
    a: Point  # post positions (zero-radius points)
    b: Point

    @cached_property
    def post_ids(self) -> tuple[str, str]:
        return f"{self.sensor_id}-a", f"{self.sensor_id}-b"

    @cached_property
    def box(self) -> tuple[float, float, float, float]:
        return (
            min(self.a[0], self.b[0]),
            min(self.a[1], self.b[1]),
            max(self.a[0], self.b[0]),
            max(self.a[1], self.b[1]),
        )


@dataclass(frozen=True)
class TrackLayout:
    config: TrackConfig
    beams: tuple[Beam, ...]
    walls: tuple[tuple[Point, Point], ...]

    def beam(self, sensor_id: str) -> Beam:
        for beam in self.beams:
            if beam.sensor_id == sensor_id:
                return beam
        raise KeyError(sensor_id)

    @property
    def monitoring(self) -> tuple[Beam, ...]:
        return tuple(b for b in self.beams if b.role == "monitoring")

    @property
    def gating(self) -> tuple[Beam, ...]:
        return tuple(b for b in self.beams if b.role == "gating")

    @cached_property
    def post_list(self) -> tuple[tuple[str, float, float], ...]:
        out = []
        for beam in self.beams:
            pa, pb = beam.post_ids
            out.append((pa, beam.a[0], beam.a[1]))
            out.append((pb, beam.b[0], beam.b[1]))
        return tuple(out)

    def posts(self) -> dict[str, Point]:
        return {pid: (x, y) for pid, x, y in self.post_list}


@dataclass(frozen=True)
class BeamSnapshot:
    """Instantaneous sensor view: which beams are interrupted, which posts are down."""

    blocked: frozenset[str]
    knocked: frozenset[str]

    def is_blocked(self, sensor_id: str) -> bool:
        return sensor_id in self.blocked


@dataclass(frozen=True)
class SensorEdge:
    sensor_id: str
    t: float
    kind: str = "falling"


def build_track(config: TrackConfig) -> TrackLayout:
    """Place the 12 beams on the parameterized H. Deterministic in config."""
    for name in ("leg_length", "leg_width", "crossbar_length", "crossbar_width"):
        if getattr(config, name) <= 0:
            raise TrackConfigError(f"{name} must be positive")
    if config.crossbar_width >= config.leg_length:
        raise TrackConfigError("crossbar_width must be smaller than leg_length")

    offsets = config.sensor_offsets or default_offsets(config)
    if sorted(offsets) != sorted(ALL_SENSOR_IDS):
        raise TrackConfigError(
            f"expected placements for exactly {ALL_SENSOR_IDS}, got {sorted(offsets)}"
        )

    edges = edge_catalog(config)
    beams = []
    gating_edges_used = set()
    for sid in ALL_SENSOR_IDS:
        placement = offsets[sid]
        if placement.edge not in edges:
            raise TrackConfigError(f"{sid}: unknown edge {placement.edge!r}")
        role = "gating" if sid in GATING_IDS else "monitoring"
        if role == "gating":
            if placement.edge not in ENTRANCE_EDGES:
                raise TrackConfigError(f"{sid}: gating sensors must sit on entrance edges")
            if placement.edge in gating_edges_used:
                raise TrackConfigError(f"{sid}: entrance {placement.edge} already gated")
            gating_edges_used.add(placement.edge)
        elif placement.edge not in WALL_EDGES:
            raise TrackConfigError(f"{sid}: monitoring sensors must sit on wall edges")

        (ax, ay), (bx, by) = edges[placement.edge]
        edge_len = math.hypot(bx - ax, by - ay)
        if not (0.0 <= placement.start < placement.end <= edge_len + 1e-9):
            raise TrackConfigError(
                f"{sid}: span [{placement.start}, {placement.end}] outside edge "
                f"of length {edge_len:.3f}"
            )
        ux, uy = (bx - ax) / edge_len, (by - ay) / edge_len
        beams.append(
            Beam(
                sensor_id=sid,
                role=role,
                a=(ax + ux * placement.start, ay + uy * placement.start),
                b=(ax + ux * placement.end, ay + uy * placement.end),
            )
        )

    walls = tuple(edges[name] for name in WALL_EDGES)
    return TrackLayout(config=config, beams=tuple(beams), walls=walls)


def beam_states(
    layout: TrackLayout,
    footprint: Rect | None,
    knocked: frozenset[str] | set[str] = frozenset(),
) -> BeamSnapshot:
    """Pure occlusion: a beam is blocked iff the footprint cuts it or a post is down."""
    knocked = frozenset(knocked)
    blocked = set()
    if footprint is not None:
        fx0, fy0, fx1, fy1 = footprint.bbox()
    for beam in layout.beams:
        pa, pb = beam.post_ids
        if pa in knocked or pb in knocked:
            blocked.add(beam.sensor_id)
            continue
        if footprint is None:
            continue
        bx0, by0, bx1, by1 = beam.box
        if bx1 < fx0 or bx0 > fx1 or by1 < fy0 or by0 > fy1:
            continue
        if segment_intersects_rect(footprint, beam.a, beam.b):
            blocked.add(beam.sensor_id)
    return BeamSnapshot(blocked=frozenset(blocked), knocked=knocked)


def diff_edges(prev: BeamSnapshot, curr: BeamSnapshot, t: float) -> list[SensorEdge]:
    """Falling edges only: one per beam going clear -> blocked."""
    return [
        SensorEdge(sensor_id=sid, t=t)
        for sid in ALL_SENSOR_IDS
        if sid in curr.blocked and sid not in prev.blocked
    ]


def check_trounce(layout: TrackLayout, footprint: Rect | None) -> list[str]:
    """Post ids whose base point lies inside the footprint, in id order."""
    if footprint is None:
        return []
    fx0, fy0, fx1, fy1 = footprint.bbox()
    struck = []
    for post_id, x, y in layout.post_list:
        if x < fx0 or x > fx1 or y < fy0 or y > fy1:
            continue
        if point_in_rect(footprint, x, y):
            struck.append(post_id)
    return struck


def parse_track_config(text: str) -> TrackConfig:
    """Parse the key/value track configuration format (units: meters).

    Schema (see docs/formats.md): optional ``version 1`` line, the four
    dimension keys, and one ``sensor <id> <edge> <start> <end>`` line per
    sensor. Omitting all sensor lines selects the default placement.
    """
    dims = {}
    offsets: dict[str, Placement] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "version":
                if parts[1:] != ["1"]:
                    raise TrackConfigError(f"line {lineno}: unsupported version {parts[1:]}")
            elif key in ("leg_length", "leg_width", "crossbar_length", "crossbar_width"):
                dims[key] = float(parts[1])
            elif key == "sensor":
                sid, edge, start, end = parts[1], parts[2], float(parts[3]), float(parts[4])
                if sid in offsets:
                    raise TrackConfigError(f"line {lineno}: duplicate sensor {sid}")
                offsets[sid] = Placement(edge, start, end)
            else:
                raise TrackConfigError(f"line {lineno}: unknown key {key!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, TrackConfigError):
                raise
            raise TrackConfigError(f"line {lineno}: cannot parse {raw!r}") from exc

    return TrackConfig(sensor_offsets=offsets, **dims)
