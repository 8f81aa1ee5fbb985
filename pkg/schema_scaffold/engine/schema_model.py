"""
Table schema model and schema file format.

A schema file is line oriented:

    # comment
    table table_a
    field field_aa text required
    field visa enum(F,J,H)
    field field_nn text key auto_id

The table header comes first. Field flags (required, key, auto_id) may appear
in any order. When no field carries the key flag the last declared field is
the key.
"""
import logging
import re
from collections import Counter
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from .errors import SchemaParseError
from .naming import is_snake_identifier

logger = logging.getLogger(__name__)


class FieldKind(str, Enum):
    TEXT = "text"
    LONG_TEXT = "long_text"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    DATE = "date"
    ENUM = "enum"
    COUNTRY = "country"
    STATE = "state"
    UPLOAD_REF = "upload_ref"


FLAGS = ("required", "key", "auto_id")

_FIELD_LINE = re.compile(r"^field\s+(\S+)\s+(enum\([^)]*\)|\S+)((?:\s+\S+)*)\s*$")
_ENUM_KIND = re.compile(r"^enum\((.*)\)$")


class FieldSpec(BaseModel):
    """One typed column of a table."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: FieldKind = FieldKind.TEXT
    values: Tuple[str, ...] = ()
    required: bool = False
    is_key: bool = False
    has_auto_id: bool = False


class TableSchema(BaseModel):
    """A table name plus its ordered fields; drives codegen, forms and validation."""

    model_config = ConfigDict(frozen=True)

    table: str
    fields: Tuple[FieldSpec, ...]
    key_field: str

    @classmethod
    def build(cls, table: str, fields: Sequence[FieldSpec]) -> "TableSchema":
        """Create a schema, resolving the key field from the flags."""
        fields = tuple(fields)
        flagged = [f.name for f in fields if f.is_key]
        if flagged:
            key_field = flagged[0]
        elif fields:
            key_field = fields[-1].name
            logger.debug(f"Table {table}: no key flag, defaulting key to last field {key_field}")
        else:
            key_field = ""
        return cls(table=table, fields=fields, key_field=key_field)

    @classmethod
    def from_names(cls, table: str, field_names: Sequence[str]) -> "TableSchema":
        """Legacy positional BeanHelper form: all text, last field is the key."""
        return cls.build(table, [FieldSpec(name=name) for name in field_names])

    @property
    def field_names(self) -> List[str]:
        return [f.name for f in self.fields]

    def field(self, name: str) -> Optional[FieldSpec]:
        for f in self.fields:
            if f.name == name:
                return f
        return None

    @property
    def key(self) -> FieldSpec:
        f = self.field(self.key_field)
        if f is None:
            raise SchemaParseError(f"key_field {self.key_field} not declared")
        return f

    @property
    def auto_id_field(self) -> Optional[FieldSpec]:
        for f in self.fields:
            if f.has_auto_id:
                return f
        return None

    def fields_of_kind(self, kind: FieldKind) -> List[FieldSpec]:
        return [f for f in self.fields if f.kind == kind]


def _parse_kind(token: str, line_no: int) -> Tuple[FieldKind, Tuple[str, ...]]:
    match = _ENUM_KIND.match(token)
    if match:
        inner = match.group(1).strip()
        values = tuple(v.strip() for v in inner.split(",")) if inner else ()
        if any(not v for v in values):
            raise SchemaParseError(f"empty value in {token}", line_no)
        return FieldKind.ENUM, values
    try:
        return FieldKind(token), ()
    except ValueError:
        raise SchemaParseError(f"unknown kind {token!r}", line_no) from None


def _read(source: str) -> Tuple[TableSchema, Dict[str, List[int]]]:
    if not source or not source.strip():
        raise SchemaParseError("schema source is empty")

    table: Optional[str] = None
    fields: List[FieldSpec] = []
    lines_by_field: Dict[str, List[int]] = {}

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        if line.split()[0] == "table":
            tokens = line.split()
            if len(tokens) != 2:
                raise SchemaParseError("expected 'table NAME'", line_no)
            if table is not None:
                raise SchemaParseError("duplicate table header", line_no)
            table = tokens[1]
            continue

        if table is None:
            raise SchemaParseError("expected 'table NAME' before fields", line_no)

        match = _FIELD_LINE.match(line)
        if not match:
            raise SchemaParseError("expected 'field NAME KIND [required] [key] [auto_id]'", line_no)

        name, kind_token, flag_text = match.groups()
        kind, values = _parse_kind(kind_token, line_no)
        flags = flag_text.split()
        for flag in flags:
            if flag not in FLAGS:
                raise SchemaParseError(f"unknown flag {flag!r}", line_no)
        if len(set(flags)) != len(flags):
            raise SchemaParseError("repeated flag", line_no)

        fields.append(FieldSpec(
            name=name,
            kind=kind,
            values=values,
            required="required" in flags,
            is_key="key" in flags,
            has_auto_id="auto_id" in flags,
        ))
        lines_by_field.setdefault(name, []).append(line_no)

    if table is None:
        raise SchemaParseError("missing 'table NAME' header")

    return TableSchema.build(table, fields), lines_by_field


def read_schema(source: str) -> TableSchema:
    """
    Structural parse only: identifier and uniqueness problems are left for
    validate_schema to report.
    """
    schema, _ = _read(source)
    return schema


def parse_schema(source: str) -> TableSchema:
    """
    Parse a schema file and enforce every schema rule.

    Raises:
        SchemaParseError: syntax problems or rule violations, with the
            line number of the offending declaration when one exists
    """
    schema, lines_by_field = _read(source)
    violations = validate_schema(schema)
    if violations:
        first = violations[0]
        subject = first.split(":", 1)[0]
        lines = lines_by_field.get(subject) or [None]
        # a duplicate is reported where it is redeclared
        line = lines[-1] if first.endswith("duplicate field") else lines[0]
        raise SchemaParseError(first, line)
    logger.debug(f"Parsed schema {schema.table} with {len(schema.fields)} fields")
    return schema


def validate_schema(s: TableSchema) -> List[str]:
    """Return violation messages, empty iff the schema is well formed."""
    violations: List[str] = []

    if not is_snake_identifier(s.table):
        violations.append(f"{s.table}: invalid identifier")
    if not s.fields:
        violations.append(f"{s.table}: table declares no fields")

    counts = Counter(f.name for f in s.fields)
    reported = set()
    for f in s.fields:
        if not is_snake_identifier(f.name):
            violations.append(f"{f.name}: invalid identifier")
        if counts[f.name] > 1 and f.name not in reported:
            violations.append(f"{f.name}: duplicate field")
            reported.add(f.name)
        if f.kind == FieldKind.ENUM and not f.values:
            violations.append(f"{f.name}: enum requires at least one value")
        if f.kind != FieldKind.ENUM and f.values:
            violations.append(f"{f.name}: only enum fields carry values")

    keys = [f.name for f in s.fields if f.is_key]
    if len(keys) > 1:
        violations.append(f"{keys[1]}: more than one key field ({', '.join(keys)})")
    auto_ids = [f.name for f in s.fields if f.has_auto_id]
    if len(auto_ids) > 1:
        violations.append(f"{auto_ids[1]}: more than one auto_id field ({', '.join(auto_ids)})")

    if s.fields and s.key_field not in counts:
        violations.append(f"key_field {s.key_field} not declared")
    elif keys and s.key_field != keys[0]:
        violations.append(f"key_field {s.key_field} disagrees with key flag on {keys[0]}")

    return violations


def serialize_schema(s: TableSchema) -> str:
    """Render a schema back into the file format."""
    lines = [f"table {s.table}"]
    for f in s.fields:
        kind = f"enum({','.join(f.values)})" if f.kind == FieldKind.ENUM else f.kind.value
        parts = ["field", f.name, kind]
        if f.required:
            parts.append("required")
        if f.is_key:
            parts.append("key")
        if f.has_auto_id:
            parts.append("auto_id")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
