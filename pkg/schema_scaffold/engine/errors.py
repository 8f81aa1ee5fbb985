"""
Toolkit exception hierarchy.

Low-level failures (I/O, decoding, model validation) are wrapped into these
so callers and the CLI deal with one family of errors.
"""
from typing import Optional


class ScaffoldError(ValueError):
    """Base class for every error the toolkit raises on bad input."""


class LineError(ScaffoldError):
    """An error tied to a line of a text input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidIdentifierError(ScaffoldError):
    """A name that is not a canonical snake_case (or camelCase) identifier."""

    def __init__(self, name: str, expected: str = "snake_case identifier"):
        self.name = name
        super().__init__(f"{name!r}: invalid identifier (expected {expected})")


class SchemaParseError(LineError):
    """Schema file could not be parsed or breaks a schema rule."""


class MappingParseError(LineError):
    """TableConv spec file could not be parsed."""


class MappingError(ScaffoldError):
    """A record does not fit a mapping spec."""


class ConfigParseError(LineError):
    """XML configuration outside the supported subset."""


class PatternError(ScaffoldError):
    """Log format pattern with an unknown % token."""


class CharsetError(ScaffoldError):
    """Character class specification that cannot be expanded."""


class CategoryError(ScaffoldError):
    """Malformed log category name."""


class UnknownAppenderError(ScaffoldError):
    """A category references an appender that was never declared."""


class LogConfigError(ScaffoldError):
    """The <logging> section of a config document is malformed."""


class RecordError(ScaffoldError):
    """A record carries keys the schema does not declare."""


class InputFileError(ScaffoldError):
    """An input file could not be read."""


class SettingsError(ScaffoldError):
    """A toolkit setting (environment, XML config or flag) has a bad value."""
