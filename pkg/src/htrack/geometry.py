"""Planar geometry for beam occlusion and post strikes.

Everything works on closed sets: a segment that merely touches the
rectangle boundary counts as intersecting, and a point on the boundary
counts as contained. The acceptance oracle (dense point sampling) uses
the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

Point = tuple[float, float]


@dataclass(frozen=True)
class Rect:
    """Oriented rectangle: center, heading of the long axis, extents."""

    cx: float
    cy: float
    heading: float
    length: float
    width: float

    @cached_property
    def _frame(self) -> tuple[float, float]:
        return math.cos(self.heading), math.sin(self.heading)

    def corners(self) -> list[Point]:
        ch, sh = self._frame
        hl, hw = self.length / 2.0, self.width / 2.0
        return [
            (self.cx + u * ch - v * sh, self.cy + u * sh + v * ch)
            for u, v in ((hl, hw), (hl, -hw), (-hl, -hw), (-hl, hw))
        ]

    @cached_property
    def _bbox(self) -> tuple[float, float, float, float]:
        xs, ys = zip(*self.corners())
        return min(xs), min(ys), max(xs), max(ys)

    def bbox(self) -> tuple[float, float, float, float]:
        return self._bbox

    def to_local(self, x: float, y: float) -> Point:
        ch, sh = self._frame
        dx, dy = x - self.cx, y - self.cy
        return (dx * ch + dy * sh, -dx * sh + dy * ch)


def point_in_rect(rect: Rect, x: float, y: float) -> bool:
    ch, sh = rect._frame
    dx, dy = x - rect.cx, y - rect.cy
    return (
        abs(dx * ch + dy * sh) <= rect.length / 2.0
        and abs(dy * ch - dx * sh) <= rect.width / 2.0
    )


def segment_intersects_rect(rect: Rect, a: Point, b: Point) -> bool:
    """True iff segment a-b meets the (closed) rectangle.

    The segment is clipped against the rectangle's axis-aligned slab in
    the rectangle's own frame (Liang-Barsky); a degenerate zero-area
    rectangle degrades to a point-on-segment test via the same slabs.
    """
    ax, ay = rect.to_local(*a)
    bx, by = rect.to_local(*b)
    hl, hw = rect.length / 2.0, rect.width / 2.0

    t0, t1 = 0.0, 1.0
    for p, d, half in ((ax, bx - ax, hl), (ay, by - ay, hw)):
        if d == 0.0:
            if p < -half or p > half:
                return False
            continue
        ta, tb = (-half - p) / d, (half - p) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
        if t0 > t1:
            return False
    return True
