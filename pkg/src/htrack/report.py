"""Run report figure: track plan view with the driven trajectory.

Rendered to a file next to the event log by the CLI run path. The
trajectory is re-integrated from the scenario (runs are deterministic,
so this reproduces the simulated path exactly without logging poses).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .engine import DEFAULT_DT
from .scenario import Scenario
from .track import TrackLayout
from .vehicle import VehicleState, apply_control, step_vehicle

WALL_COLOR = "#555555"
MONITOR_COLOR = "#2a9d2a"
GATE_COLOR = "#1f6fd0"
PATH_COLOR = "#202020"
FAIL_COLOR = "#cc2222"


def integrate_path(
    scenario: Scenario, dt: float = DEFAULT_DT, until: float | None = None
) -> list[tuple[float, float]]:
    vehicle = VehicleState(
        x=scenario.start.x,
        y=scenario.start.y,
        heading=scenario.start.heading,
        length=scenario.vehicle.length,
        width=scenario.vehicle.width,
        wheel_radius=scenario.vehicle.wheel_radius,
    )
    controls = {round(t_c / dt): c for t_c, c in scenario.timeline}
    steer = 0.0
    points = [(vehicle.x, vehicle.y)]
    n_ticks = round(scenario.duration / dt)
    for k in range(n_ticks):
        if k in controls:
            vehicle = apply_control(vehicle, controls[k])
            if controls[k].steer is not None:
                steer = controls[k].steer
        vehicle = step_vehicle(vehicle, steer, dt)
        points.append((vehicle.x, vehicle.y))
        if until is not None and (k + 1) * dt >= until:
            break
    return points


def render_run_figure(
    layout: TrackLayout,
    scenario: Scenario,
    out_path: str | Path,
    verdict: str | None = None,
    fail_reason: str | None = None,
    fail_t: float | None = None,
    dt: float = DEFAULT_DT,
) -> Path:
    fig, ax = plt.subplots(figsize=(9, 6))

    for (ax0, ay0), (ax1, ay1) in layout.walls:
        ax.plot([ax0, ax1], [ay0, ay1], color=WALL_COLOR, linewidth=3, zorder=1)
    for beam in layout.beams:
        color = GATE_COLOR if beam.role == "gating" else MONITOR_COLOR
        style = "--" if beam.role == "gating" else "-"
        ax.plot(
            [beam.a[0], beam.b[0]],
            [beam.a[1], beam.b[1]],
            color=color,
            linestyle=style,
            linewidth=1.2,
            zorder=2,
        )
        mx, my = (beam.a[0] + beam.b[0]) / 2, (beam.a[1] + beam.b[1]) / 2
        ax.annotate(beam.sensor_id, (mx, my), fontsize=7, color=color,
                    textcoords="offset points", xytext=(3, 3))
        ax.scatter(*zip(beam.a, beam.b), s=8, color=color, zorder=3)

    path = integrate_path(scenario, dt=dt, until=fail_t)
    xs, ys = zip(*path)
    ax.plot(xs, ys, color=PATH_COLOR, linewidth=1.0, zorder=4)
    ax.scatter([xs[0]], [ys[0]], marker="o", s=40, color=PATH_COLOR, zorder=5, label="start")
    end_color = FAIL_COLOR if verdict == "failed" else PATH_COLOR
    ax.scatter([xs[-1]], [ys[-1]], marker="x", s=60, color=end_color, zorder=5, label="end")

    title = f"{scenario.name}: {verdict or 'incomplete'}"
    if fail_reason:
        title += f" ({fail_reason})"
    ax.set_title(title)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()

    out_path = Path(out_path)
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    return out_path
