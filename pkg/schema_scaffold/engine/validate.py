"""
Field validation rules and input sanitizers.

Single rules return an optional ValidationError; validate_record applies them
per field in schema declaration order. Sanitizer violations are reported by
validate_record, while sanitize_whitelist itself rewrites text for callers
that want the cleaned value.
"""
import logging
import re
from datetime import date
from typing import FrozenSet, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..config.settings import DEFAULT_ALLOWED_CHARS
from .errors import CharsetError, RecordError
from .reference_data import US_COUNTRY_CODE, us_state_codes
from .schema_model import FieldKind, FieldSpec, TableSchema

logger = logging.getLogger(__name__)

_DATE_FORMAT = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_INTEGER_FORMAT = re.compile(r"^[+-]?\d+$")
BOOLEAN_VALUES = ("Y", "N")
REPLACEMENT = "_"


def parse_charset(spec: str) -> FrozenSet[str]:
    """
    Expand a character class body such as '-a-zA-Z0-9_.@'.

    A '-' at either end is literal; 'x-y' between two characters is a range.
    """
    chars = set()
    i = 0
    while i < len(spec):
        c = spec[i]
        if i + 2 < len(spec) and spec[i + 1] == "-":
            end = spec[i + 2]
            if ord(end) < ord(c):
                raise CharsetError(f"reversed range {c}-{end} in {spec!r}")
            chars.update(chr(code) for code in range(ord(c), ord(end) + 1))
            i += 3
        else:
            chars.add(c)
            i += 1
    return frozenset(chars)


DEFAULT_ALLOWED: FrozenSet[str] = parse_charset(DEFAULT_ALLOWED_CHARS)


class DateWindow(BaseModel):
    """Inclusive range of acceptable dates."""

    model_config = ConfigDict(frozen=True)

    oldest: date
    newest: date

    @model_validator(mode="after")
    def _ordered(self) -> "DateWindow":
        if self.oldest > self.newest:
            raise ValueError(f"oldest {self.oldest} is after newest {self.newest}")
        return self


class ValidationError(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: str
    message: str

    @field_validator("field", "message")
    @classmethod
    def _not_empty(cls, value: str) -> str:
        if not value:
            raise ValueError("must not be empty")
        return value

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


class ValidationOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    errors: Tuple[ValidationError, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def lines(self) -> List[str]:
        return [str(e) for e in self.errors]


def validate_required(field: str, value: str) -> Optional[ValidationError]:
    if value is None or not value.strip():
        return ValidationError(field=field, message="required")
    return None


def validate_date_window(field: str, value: str, w: DateWindow) -> Optional[ValidationError]:
    if not _DATE_FORMAT.match(value):
        return ValidationError(field=field, message="invalid date")
    try:
        parsed = date.fromisoformat(value)
    except ValueError:
        return ValidationError(field=field, message="invalid date")
    if parsed < w.oldest:
        return ValidationError(field=field, message=f"before oldest date {w.oldest.isoformat()}")
    if parsed > w.newest:
        return ValidationError(field=field, message=f"after newest date {w.newest.isoformat()}")
    return None


def validate_country_state(
    country: str,
    state: str,
    field: str = "state",
    state_codes: Optional[FrozenSet[str]] = None,
) -> Optional[ValidationError]:
    """USA goes with a US state code, and a US state code goes with USA."""
    codes = us_state_codes() if state_codes is None else state_codes
    is_usa = country == US_COUNTRY_CODE
    is_us_state = state in codes
    if is_usa == is_us_state:
        return None
    if is_usa:
        return ValidationError(field=field, message=f"{state or 'empty state'} is not a US state")
    return ValidationError(field=field, message=f"US state {state} requires country {US_COUNTRY_CODE}")


def sanitize_whitelist(value: str, allowed: FrozenSet[str] = DEFAULT_ALLOWED) -> str:
    """Replace every character outside `allowed` with an underscore."""
    return "".join(c if c in allowed else REPLACEMENT for c in value)


class MultiStatementFinding(BaseModel):
    model_config = ConfigDict(frozen=True)

    flagged: bool
    position: Optional[int] = None


def detect_multi_statement(sql: str) -> MultiStatementFinding:
    """
    Find the first semicolon outside single-quoted literals.

    A doubled quote inside a literal toggles out and straight back in, so
    escaped quotes need no special case.
    """
    in_literal = False
    for i, c in enumerate(sql):
        if c == "'":
            in_literal = not in_literal
        elif c == ";" and not in_literal:
            logger.debug(f"Statement separator found at offset {i}")
            return MultiStatementFinding(flagged=True, position=i)
    return MultiStatementFinding(flagged=False)


def _kind_rule(f: FieldSpec, value: str, w: DateWindow) -> Optional[ValidationError]:
    if f.kind == FieldKind.DATE:
        return validate_date_window(f.name, value, w)
    if f.kind == FieldKind.BOOLEAN and value not in BOOLEAN_VALUES:
        return ValidationError(field=f.name, message="must be Y or N")
    if f.kind == FieldKind.ENUM and value not in f.values:
        return ValidationError(field=f.name, message=f"must be one of {', '.join(f.values)}")
    if f.kind == FieldKind.INTEGER and not _INTEGER_FORMAT.match(value):
        return ValidationError(field=f.name, message="not an integer")
    return None


def validate_record(
    s: TableSchema,
    row: Mapping[str, str],
    w: DateWindow,
    allowed: FrozenSet[str] = DEFAULT_ALLOWED,
) -> ValidationOutcome:
    """
    Validate one submitted record against its schema.

    Raises:
        RecordError: row has keys the schema does not declare
    """
    unknown = [key for key in row if s.field(key) is None]
    if unknown:
        raise RecordError(f"field(s) {', '.join(unknown)} not declared in table {s.table}")

    countries = s.fields_of_kind(FieldKind.COUNTRY)
    states = s.fields_of_kind(FieldKind.STATE)
    pair = (countries[0], states[0]) if countries and states else None
    pair_at = None
    if pair:
        pair_at = max(s.fields.index(pair[0]), s.fields.index(pair[1]))

    errors: List[ValidationError] = []
    failed = set()
    for position, f in enumerate(s.fields):
        value = row.get(f.name, "")
        error = None
        if f.required:
            error = validate_required(f.name, value)
        if error is None and value.strip():
            if sanitize_whitelist(value, allowed) != value:
                error = ValidationError(field=f.name, message="contains disallowed characters")
            else:
                error = _kind_rule(f, value, w)
        if error is not None:
            errors.append(error)
            failed.add(f.name)

        # the pair is checked once both fields have been seen and reported
        # against whichever of the two is declared later
        if position == pair_at and not failed.intersection(p.name for p in pair):
            country, state = pair
            error = validate_country_state(row.get(country.name, ""), row.get(state.name, ""), field=f.name)
            if error is not None:
                errors.append(error)

    if errors:
        logger.info(f"Record for {s.table} failed validation with {len(errors)} error(s)")
    return ValidationOutcome(errors=tuple(errors))
