"""Headless entry points: run, replay, validate, serve.

Exit codes: 0 pass (or valid / oracle agreement), 1 fail or disagreement,
2 configuration or parse error. The last stdout line of ``run`` is a
machine-readable JSON summary with a stable schema for CI parsing.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from datetime import date
from pathlib import Path

from .engine import DEFAULT_DT, simulate
from .events import EventLog, EventLogError
from .link import LinkParams
from .replay import recorded_outcome, replay_verdict
from .scenario import ScenarioError, parse_scenario
from .service import BANNER_FAILED, BANNER_PASSED, EvaluationService
from .track import TrackConfig, TrackConfigError, build_track, parse_track_config
from .validation import Application, ApplicationParseError, parse_application

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

# Stand-in candidate for headless runs without an application file.
DEFAULT_APPLICATION = Application(
    first_name="Test",
    last_name="Candidate",
    address="1 Depot Road",
    pin_code="686574",
    date_of_birth="1990-01-01",
    gender="other",
)


def _load_layout(path: str | None):
    if path is None:
        return build_track(TrackConfig.default())
    return build_track(parse_track_config(Path(path).read_text(encoding="utf-8")))


def _link_params(args) -> LinkParams:
    return LinkParams(
        base_latency=args.link_latency,
        jitter=args.link_jitter,
        drop_probability=args.link_drop,
        seed=args.seed,
        in_order=not args.link_out_of_order,
    )


def cmd_run(args) -> int:
    try:
        layout = _load_layout(args.track)
        scenario = parse_scenario(Path(args.scenario).read_text(encoding="utf-8"))
        if args.seed is not None:
            scenario = dataclasses.replace(scenario, seed=args.seed)
        application = DEFAULT_APPLICATION
        if args.application:
            application = parse_application(Path(args.application).read_text(encoding="utf-8"))
        link_params = _link_params(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TrackConfigError, ScenarioError, ApplicationParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    service = EvaluationService(
        layout, store_dir=out_dir / "sessions", strict_stop=args.strict_stop
    )
    session = service.submit_application(application)
    service.start_test(session.id)
    result = simulate(
        layout, scenario, service, session.id, link_params=link_params, dt=args.dt
    )

    log_path = result.log.write(out_dir / "events.log")
    service.attach_event_log(session.id, str(log_path))

    card_path = None
    if result.verdict is not None:
        card_path = out_dir / "card.txt"
        card_path.write_text(service.render_card(session.id), encoding="utf-8")

    figure_path = None
    if not args.no_figure:
        from .report import render_run_figure

        figure_path = render_run_figure(
            layout,
            scenario,
            out_dir / "trajectory.png",
            verdict=result.verdict,
            fail_reason=result.fail_reason,
            fail_t=result.session.verdict_t,
            dt=args.dt,
        )

    if result.verdict == "passed":
        verdict_text, code = BANNER_PASSED, EXIT_PASS
    elif result.verdict == "failed":
        verdict_text, code = BANNER_FAILED, EXIT_FAIL
    else:
        verdict_text, code = "INCOMPLETE", EXIT_FAIL

    print(f"{verdict_text}" + (f" ({result.fail_reason})" if result.fail_reason else ""))
    if result.session.reason_banner():
        print(result.session.reason_banner())
    for warning in result.session.warnings:
        print(f"warning: {warning}")
    print(f"gate count: {result.gate_count}")
    summary = {
        "schema": "htrack-run/1",
        "verdict": verdict_text.replace("TEST ", ""),
        "fail_reason": result.fail_reason,
        "gate_count": result.gate_count,
        "log": str(log_path),
        "card": str(card_path) if card_path else None,
        "figure": str(figure_path) if figure_path else None,
        "session": session.id,
        "exit_code": code,
    }
    print(json.dumps(summary, sort_keys=True))
    return code


def cmd_replay(args) -> int:
    try:
        log = EventLog.read(args.log)
        verdict = replay_verdict(log)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EventLogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    status, reason = recorded_outcome(log)
    mine = verdict.verdict or "incomplete"
    theirs = status or "incomplete"
    print(f"replayed: {mine}" + (f" ({verdict.fail_reason})" if verdict.fail_reason else ""))
    print(f"recorded: {theirs}" + (f" ({reason})" if reason else ""))
    if verdict.agrees_with(status, reason):
        print("AGREE")
        return EXIT_PASS
    print("DISAGREE")
    return EXIT_FAIL


def cmd_validate(args) -> int:
    try:
        application = parse_application(Path(args.application).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ApplicationParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    from .validation import validate_application

    report = validate_application(application, date.today())
    if report.valid:
        print("application valid")
        return EXIT_PASS
    for error in report.field_errors:
        print(f"{error.field}: {error.reason}")
    return EXIT_FAIL


def cmd_serve(args) -> int:
    try:
        layout = _load_layout(args.track)
        scenario = None
        if args.scenario:
            scenario = parse_scenario(Path(args.scenario).read_text(encoding="utf-8"))
        link_params = _link_params(args)
    except (FileNotFoundError, TrackConfigError, ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    from .api import create_app

    store = Path(args.store) if args.store else None
    service = EvaluationService(layout, store_dir=store, strict_stop=args.strict_stop)
    app = create_app(
        service,
        scenario=scenario,
        link_params=link_params,
        dt=args.dt,
        log_dir=store,
        ui_dir=args.ui,
        pace=args.pace,
    )

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="htrack", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sim_flags(p):
        p.add_argument("--track", help="track config file (default: built-in layout)")
        p.add_argument("--seed", type=int, default=None, help="override scenario seed")
        p.add_argument("--dt", type=float, default=DEFAULT_DT, help="tick length in seconds")
        p.add_argument("--link-latency", type=float, default=0.0)
        p.add_argument("--link-jitter", type=float, default=0.0)
        p.add_argument("--link-drop", type=float, default=0.0)
        p.add_argument("--link-out-of-order", action="store_true")
        p.add_argument("--strict-stop", action="store_true",
                       help="early operator stop fails instead of warning")

    run = sub.add_parser("run", help="run a scenario headless and write reports")
    run.add_argument("scenario")
    run.add_argument("--application", help="candidate application file")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument("--no-figure", action="store_true", help="skip trajectory figure")
    add_sim_flags(run)
    run.set_defaults(func=cmd_run)

    replay = sub.add_parser("replay", help="recompute a verdict from an event log")
    replay.add_argument("log")
    replay.set_defaults(func=cmd_replay)

    validate = sub.add_parser("validate", help="check a candidate application file")
    validate.add_argument("application")
    validate.set_defaults(func=cmd_validate)

    serve = sub.add_parser("serve", help="host the evaluation service API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--scenario", help="scripted drive started by POST /sessions/{id}/start")
    serve.add_argument("--store", help="session store directory")
    serve.add_argument("--ui", help="static operator console directory to mount at /ui")
    serve.add_argument("--pace", type=float, default=1.0,
                       help="playback speed: 1.0 real-time, 0 as fast as possible")
    add_sim_flags(serve)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
