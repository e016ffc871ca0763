"""Test monitoring and result issuance: sessions, verdicts, cards, storage.

The service owns every session mutation behind one lock (API threads and
the simulation loop both call in); reads hand out plain copies. Banner
strings are user-visible contract and must not be reworded.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass, field, replace
from datetime import date, datetime
from pathlib import Path
from typing import Callable

from .track import MONITORING_IDS, BeamSnapshot, TrackLayout, beam_states
from .validation import (
    Application,
    DEFAULT_RULES,
    ValidationReport,
    ValidationRules,
    validate_application,
)

# Console banners (byte-exact, en dash):
BANNER_READY = "SYSTEM READY – SENSORS MISALIGNED"
BANNER_ACTIVE = "SYSTEM ACTIVE – FILL IN CANDIDATE DETAILS"
BANNER_PASSED = "TEST PASSED"
BANNER_FAILED = "TEST FAILED"

REASON_SENSORS = "sensors_misaligned"
REASON_HALT = "vehicle_halt"
REASON_INCOMPLETE = "incomplete_drive"

REASON_BANNERS = {
    REASON_SENSORS: "SENSORS MISALIGNED – TEST FINISHED",
    REASON_HALT: "VEHICLE HALT – TEST FINISHED",
    REASON_INCOMPLETE: "INCOMPLETE DRIVE – TEST FINISHED",
}

# Session statuses and actions.
READY = "ready"
ACTIVE = "active"
REGISTERED = "registered"
RUNNING = "running"
PASSED = "passed"
FAILED = "failed"
STATUSES = (READY, ACTIVE, REGISTERED, RUNNING, PASSED, FAILED)

ACT_ACTIVATE = "activate"
ACT_SUBMIT = "submit"
ACT_START = "start"
ACT_FAIL = "fail"
ACT_STOP = "stop"
ACTIONS = (ACT_ACTIVATE, ACT_SUBMIT, ACT_START, ACT_FAIL, ACT_STOP)

# Declared transition table: (status, action) -> ("to", next) | "noop"
# | "ignored" | "rejected". "ignored" rows are late events absorbed with
# an anomaly log entry; "rejected" rows raise. Anything not forward along
# ready -> active -> registered -> running -> {passed, failed} is barred.
TRANSITION_TABLE: dict[tuple[str, str], tuple[str, ...]] = {}
for _status in STATUSES:
    TRANSITION_TABLE[(_status, ACT_ACTIVATE)] = ("to", ACTIVE) if _status == READY else ("noop",)
    TRANSITION_TABLE[(_status, ACT_SUBMIT)] = (
        ("to", REGISTERED) if _status == ACTIVE else ("rejected",)
    )
    TRANSITION_TABLE[(_status, ACT_START)] = (
        ("to", RUNNING) if _status == REGISTERED else ("rejected",)
    )
    TRANSITION_TABLE[(_status, ACT_FAIL)] = ("to", FAILED) if _status == RUNNING else ("ignored",)
    if _status == RUNNING:
        TRANSITION_TABLE[(_status, ACT_STOP)] = ("to", PASSED)
    elif _status in (PASSED, FAILED):
        TRANSITION_TABLE[(_status, ACT_STOP)] = ("noop",)
    else:
        TRANSITION_TABLE[(_status, ACT_STOP)] = ("rejected",)
del _status


class SessionStateError(RuntimeError):
    pass


class SubmissionRejected(RuntimeError):
    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


class SessionNotFound(KeyError):
    pass


class SessionStoreError(RuntimeError):
    pass


@dataclass
class TestSession:
    __test__ = False  # name collides with pytest's collection heuristic

    id: str
    status: str = READY
    application: Application | None = None
    fail_reason: str | None = None
    warnings: list[str] = field(default_factory=list)
    created_at: str = ""
    verdict_at: str = ""
    verdict_t: float | None = None  # simulation clock seconds
    gate_count: int = 0
    event_log: str | None = None  # path reference

    def verdict_banner(self) -> str | None:
        if self.status == PASSED:
            return BANNER_PASSED
        if self.status == FAILED:
            return BANNER_FAILED
        return None

    def reason_banner(self) -> str | None:
        return REASON_BANNERS.get(self.fail_reason) if self.fail_reason else None


def apply_action(session: TestSession, action: str) -> str:
    """Drive the declared table; returns the behavior tag that applied."""
    behavior = TRANSITION_TABLE[(session.status, action)]
    if behavior[0] == "to":
        session.status = behavior[1]
        return "to"
    if behavior[0] == "rejected":
        raise SessionStateError(f"action {action!r} not allowed in state {session.status!r}")
    return behavior[0]


def alignment_status(snapshot: BeamSnapshot) -> tuple[bool, list[str], str]:
    """Monitoring-beam health plus the console banner for it."""
    misaligned = [sid for sid in MONITORING_IDS if snapshot.is_blocked(sid)]
    if misaligned:
        return False, misaligned, BANNER_READY
    return True, [], BANNER_ACTIVE


def misaligned_message(misaligned: list[str]) -> str:
    """Operator text naming the offending pairs, e.g. 'Sensor pair 5 is OFF'."""
    if not misaligned:
        return ""
    numbers = [sid.lstrip("S") for sid in misaligned]
    if len(numbers) == 1:
        return f"Sensor pair {numbers[0]} is OFF"
    return f"Sensor pairs {', '.join(numbers)} are OFF"


def render_result_card(session: TestSession, issued_at: datetime) -> str:
    """Plain-text result card; a pure function of (session, clock)."""
    if session.status not in (PASSED, FAILED):
        raise SessionStateError("result card requires a verdict")
    app = session.application or Application()
    result = BANNER_PASSED if session.status == PASSED else BANNER_FAILED
    rule = "=" * 52
    lines = [
        rule,
        "DRIVING SKILL TEST RESULT CARD".center(52),
        rule,
        f"Issued        : {issued_at.strftime('%Y-%m-%d %H:%M:%S')}",
        f"Session       : {session.id}",
        f"Result        : {result}",
    ]
    if session.status == FAILED:
        lines.append(f"Reason        : {session.reason_banner()}")
    if session.warnings:
        for warning in session.warnings:
            lines.append(f"Warning       : {warning}")
    lines += [
        "-" * 52,
        f"First name    : {app.first_name}",
        f"Middle name   : {app.middle_name}",
        f"Last name     : {app.last_name}",
        f"Address       : {app.address}",
        f"PIN code      : {app.pin_code}",
        f"Date of birth : {app.date_of_birth}",
        f"Gender        : {app.gender}",
        rule,
    ]
    return "\n".join(lines) + "\n"


class SessionStore:
    """One JSON record per session under a directory; explicit errors only."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def save(self, session: TestSession) -> Path:
        record = asdict(session)
        record["application"] = asdict(session.application) if session.application else None
        path = self.path(session.id)
        path.write_text(json.dumps(record, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        return path

    def load(self, session_id: str) -> TestSession:
        path = self.path(session_id)
        if not path.exists():
            raise SessionNotFound(session_id)
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
            app = record.pop("application", None)
            session = TestSession(**record)
            session.application = Application(**app) if app else None
        except (json.JSONDecodeError, TypeError, KeyError) as exc:
            raise SessionStoreError(f"corrupt session record {path}: {exc}") from exc
        return session

    def ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("s*.json"))


class EvaluationService:
    """Session lifecycle, verdicts and cards over the live sensor view."""

    def __init__(
        self,
        layout: TrackLayout,
        store_dir: str | Path | None = None,
        strict_stop: bool = False,
        rules: ValidationRules = DEFAULT_RULES,
        clock: Callable[[], datetime] | None = None,
        today: date | None = None,
    ):
        self.layout = layout
        self.strict_stop = strict_stop
        self.rules = rules
        self.clock = clock or datetime.now
        self._today = today
        self.store = SessionStore(store_dir) if store_dir is not None else None
        self._lock = threading.RLock()
        self._sessions: dict[str, TestSession] = {}
        self._counter = 0
        if self.store is not None:
            existing = self.store.ids()
            if existing:
                self._counter = max(int(sid[1:]) for sid in existing)
        self.knocked: frozenset[str] = frozenset()
        self.snapshot: BeamSnapshot = beam_states(layout, None, self.knocked)
        self.gate_count = 0
        self.sim_t = 0.0
        self.anomalies: list[str] = []
        self.current_id: str | None = None
        self.open_session()

    # -- console session slot -------------------------------------------

    def open_session(self) -> TestSession:
        with self._lock:
            self._counter += 1
            session = TestSession(
                id=f"s{self._counter:04d}",
                created_at=self.clock().isoformat(sep=" ", timespec="seconds"),
            )
            self._sessions[session.id] = session
            self.current_id = session.id
            self._sync_alignment(session)
            self._persist(session)
            return replace_copy(session)

    def reset_console(self) -> TestSession:
        return self.open_session()

    # -- sensor view ------------------------------------------------------

    def knock_post(self, post_id: str) -> None:
        with self._lock:
            if post_id not in self.layout.posts():
                raise KeyError(post_id)
            self.knocked = self.knocked | {post_id}
            self._refresh_snapshot()

    def reset_posts(self) -> None:
        with self._lock:
            self.knocked = frozenset()
            self._refresh_snapshot()

    def _refresh_snapshot(self) -> None:
        self.snapshot = beam_states(self.layout, None, self.knocked)
        self._sync_current()

    def update_live(self, snapshot: BeamSnapshot, gate_count: int, t: float) -> None:
        """Per-tick feed from the simulation loop."""
        with self._lock:
            self.snapshot = snapshot
            self.gate_count = gate_count
            self.sim_t = t

    def alignment(self) -> tuple[bool, list[str], str]:
        with self._lock:
            return alignment_status(self.snapshot)

    def _sync_alignment(self, session: TestSession) -> None:
        all_aligned, _, _ = alignment_status(self.snapshot)
        if all_aligned:
            apply_action(session, ACT_ACTIVATE)

    def _sync_current(self) -> None:
        session = self._sessions.get(self.current_id) if self.current_id else None
        if session is not None and session.status == READY:
            self._sync_alignment(session)
            self._persist(session)

    # -- lifecycle --------------------------------------------------------

    def validate(self, app: Application) -> ValidationReport:
        return validate_application(app, self.today(), self.rules)

    def today(self) -> date:
        return self._today or self.clock().date()

    def submit_application(self, app: Application) -> TestSession:
        with self._lock:
            session = self._current()
            self._sync_alignment(session)
            all_aligned, misaligned, banner = alignment_status(self.snapshot)
            if not all_aligned:
                raise SubmissionRejected(banner)
            report = self.validate(app)
            if not report.valid:
                raise SubmissionRejected("application has errors", report)
            apply_action(session, ACT_SUBMIT)
            session.application = app
            self._persist(session)
            return replace_copy(session)

    def start_test(self, session_id: str) -> TestSession:
        with self._lock:
            session = self._get(session_id)
            all_aligned, _, banner = alignment_status(self.snapshot)
            if session.status == REGISTERED and not all_aligned:
                raise SessionStateError(banner)
            apply_action(session, ACT_START)
            self._persist(session)
            return replace_copy(session)

    def record_failure(self, session_id: str, reason: str, t: float) -> TestSession:
        with self._lock:
            session = self._get(session_id)
            outcome = apply_action(session, ACT_FAIL)
            if outcome == "ignored":
                self.anomalies.append(
                    f"late failure {reason!r} at t={t} ignored in state {session.status!r}"
                )
                return replace_copy(session)
            session.fail_reason = reason
            session.verdict_t = t
            session.verdict_at = self.clock().isoformat(sep=" ", timespec="seconds")
            self._persist(session)
            return replace_copy(session)

    def stop_test(self, session_id: str, t: float) -> TestSession:
        with self._lock:
            session = self._get(session_id)
            if session.status in (PASSED, FAILED):
                apply_action(session, ACT_STOP)  # declared no-op
                return replace_copy(session)
            incomplete = session.status == RUNNING and self.gate_count != 8
            if incomplete and self.strict_stop:
                apply_action(session, ACT_FAIL)
                session.fail_reason = REASON_INCOMPLETE
            else:
                apply_action(session, ACT_STOP)
                if incomplete:
                    session.warnings.append(
                        f"stopped early: gate count {self.gate_count} of 8"
                    )
            session.gate_count = self.gate_count
            session.verdict_t = t
            session.verdict_at = self.clock().isoformat(sep=" ", timespec="seconds")
            self._persist(session)
            return replace_copy(session)

    def render_card(self, session_id: str) -> str:
        with self._lock:
            return render_result_card(self._get(session_id), self.clock())

    def get_session(self, session_id: str) -> TestSession:
        with self._lock:
            return replace_copy(self._get(session_id))

    def banner(self) -> str:
        """What the console headline shows right now."""
        with self._lock:
            session = self._sessions.get(self.current_id) if self.current_id else None
            if session is not None and session.status in (PASSED, FAILED):
                return session.verdict_banner()
            _, _, banner = alignment_status(self.snapshot)
            return banner

    # -- persistence ------------------------------------------------------

    def _persist(self, session: TestSession) -> None:
        if self.store is not None:
            self.store.save(session)

    def attach_event_log(self, session_id: str, path: str) -> None:
        with self._lock:
            session = self._get(session_id)
            session.event_log = path
            self._persist(session)

    def load_session(self, session_id: str) -> TestSession:
        if self.store is None:
            raise SessionStoreError("service has no backing store")
        session = self.store.load(session_id)
        with self._lock:
            self._sessions[session.id] = session
        return replace_copy(session)

    def _get(self, session_id: str) -> TestSession:
        session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(session_id)
        return session

    def _current(self) -> TestSession:
        if self.current_id is None:
            self.open_session()
        return self._sessions[self.current_id]


def replace_copy(session: TestSession) -> TestSession:
    copy = replace(session)
    copy.warnings = list(session.warnings)
    return copy
