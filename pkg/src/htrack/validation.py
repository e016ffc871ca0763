"""Candidate e-application checks and the clear-incorrect-fields rule.

Every error is reported, not just the first: the operator pop-up and the
clearing rule both need the complete list. A blank mandatory field is
reported as blank only; content rules apply once something was entered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date

BLANK_MANDATORY = "blank_mandatory"
BAD_GENDER = "bad_gender"
BAD_DOB = "bad_dob"
BAD_PIN = "bad_pin"

MANDATORY_FIELDS = (
    "first_name",
    "last_name",
    "address",
    "pin_code",
    "date_of_birth",
    "gender",
)
ALL_FIELDS = ("first_name", "middle_name") + MANDATORY_FIELDS[1:]

# Indian postal PIN: six digits, first nonzero.
_PIN_RE = re.compile(r"^[1-9][0-9]{5}$")
_DOB_RE = re.compile(r"^(\d{4})-(\d{2})-(\d{2})$")


@dataclass(frozen=True)
class Application:
    first_name: str = ""
    middle_name: str = ""
    last_name: str = ""
    address: str = ""
    pin_code: str = ""
    date_of_birth: str = ""  # YYYY-MM-DD
    gender: str = ""


@dataclass(frozen=True)
class FieldError:
    field: str
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    field_errors: tuple[FieldError, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.field_errors

    def flagged_fields(self) -> set[str]:
        return {e.field for e in self.field_errors}


@dataclass(frozen=True)
class ValidationRules:
    accepted_genders: frozenset[str] = frozenset({"male", "female", "other"})
    min_age_years: int = 18


DEFAULT_RULES = ValidationRules()


def _parse_dob(text: str) -> date | None:
    m = _DOB_RE.match(text.strip())
    if not m:
        return None
    try:
        return date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    except ValueError:
        return None


def _age_at(dob: date, today: date) -> int:
    return today.year - dob.year - ((today.month, today.day) < (dob.month, dob.day))


def validate_application(
    app: Application,
    today: date,
    rules: ValidationRules = DEFAULT_RULES,
) -> ValidationReport:
    errors: list[FieldError] = []

    for name in MANDATORY_FIELDS:
        if not getattr(app, name).strip():
            errors.append(FieldError(name, BLANK_MANDATORY))
    blank = {e.field for e in errors}

    if "gender" not in blank and app.gender.strip().lower() not in rules.accepted_genders:
        errors.append(FieldError("gender", BAD_GENDER))

    if "date_of_birth" not in blank:
        dob = _parse_dob(app.date_of_birth)
        if dob is None or dob > today or _age_at(dob, today) < rules.min_age_years:
            errors.append(FieldError("date_of_birth", BAD_DOB))

    if "pin_code" not in blank and not _PIN_RE.match(app.pin_code.strip()):
        errors.append(FieldError("pin_code", BAD_PIN))

    return ValidationReport(field_errors=tuple(errors))


def apply_clearing_rule(app: Application, report: ValidationReport) -> Application:
    """Blank every flagged field, retain every correct one."""
    cleared = {name: "" for name in report.flagged_fields()}
    return replace(app, **cleared)


class ApplicationParseError(ValueError):
    pass


def parse_application(text: str) -> Application:
    """Key/value application file: one 'field value' line per field."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split(None, 1)
        key = parts[0]
        if key not in ALL_FIELDS:
            raise ApplicationParseError(f"line {lineno}: unknown field {key!r}")
        if key in values:
            raise ApplicationParseError(f"line {lineno}: duplicate field {key!r}")
        values[key] = parts[1].strip() if len(parts) > 1 else ""
    return Application(**values)
