"""Append-only run log: one JSON object per line, stable field order.

This is the contract for the replay oracle and the golden tests. Records
are emitted in simulation order with non-decreasing timestamps; encoder
records appear only for ticks that produced at least one edge (absence
of a record means zero edges that tick). Serialization uses sorted keys
and compact separators so identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

LOG_VERSION = 1


class EventLogError(ValueError):
    pass


class EventLog:
    def __init__(self, records: list[dict] | None = None):
        self.records: list[dict] = records if records is not None else []

    def append(self, kind: str, **fields) -> dict:
        record = {"kind": kind, **fields}
        self.records.append(record)
        return record

    def of_kind(self, kind: str) -> list[dict]:
        return [r for r in self.records if r["kind"] == kind]

    def to_lines(self) -> str:
        return "".join(
            json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in self.records
        )

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_lines(), encoding="utf-8")
        return path

    @classmethod
    def parse(cls, text: str) -> "EventLog":
        records = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EventLogError(f"line {lineno}: invalid record: {exc}") from exc
            if not isinstance(record, dict) or "kind" not in record:
                raise EventLogError(f"line {lineno}: record must be an object with a 'kind'")
            records.append(record)
        if not records:
            raise EventLogError("empty event log")
        if records[0]["kind"] != "meta" or records[0].get("version") != LOG_VERSION:
            raise EventLogError("missing or unsupported meta header")
        return cls(records)

    @classmethod
    def read(cls, path: str | Path) -> "EventLog":
        return cls.parse(Path(path).read_text(encoding="utf-8"))
