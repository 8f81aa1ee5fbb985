"""
Schema Scaffold Engine Package

One module per toolkit component; every operation is a pure function over
immutable pydantic models except the loglite sinks.
"""

from .beanhelper import FragmentSet, gen_all
from .config_reader import ConfigNode, lookup, parse_config
from .errors import ScaffoldError
from .formgen import FormPolicy, render_form
from .loglite import LogEngine, Priority, effective_threshold, log_dispatch
from .schema_model import FieldKind, FieldSpec, TableSchema, parse_schema, validate_schema
from .tableconv import MappingSpec, emit_migration_sql, parse_mapping_file, transform_record
from .validate import DateWindow, detect_multi_statement, sanitize_whitelist, validate_record

__all__ = [
    "ConfigNode",
    "DateWindow",
    "FieldKind",
    "FieldSpec",
    "FormPolicy",
    "FragmentSet",
    "LogEngine",
    "MappingSpec",
    "Priority",
    "ScaffoldError",
    "TableSchema",
    "detect_multi_statement",
    "effective_threshold",
    "emit_migration_sql",
    "gen_all",
    "log_dispatch",
    "lookup",
    "parse_config",
    "parse_mapping_file",
    "parse_schema",
    "render_form",
    "sanitize_whitelist",
    "transform_record",
    "validate_record",
    "validate_schema",
]
