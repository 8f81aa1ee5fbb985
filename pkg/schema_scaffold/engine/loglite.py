"""
loglite - a small log4j-style logging engine.

Priorities are ordered DEBUG < INFO < WARN < ERROR < FATAL. Categories are
dot-separated names; a category without its own threshold inherits the
nearest ancestor's, and the root category "" always has one. Appenders are
attached to categories, carry their own threshold and format pattern, and
receive events from every descendant category.

Configuration is built once (CategoryTree and LogConfig are immutable);
LogEngine then dispatches and writes, safe for concurrent callers.
"""
import logging
import re
import sys
import threading
from datetime import datetime
from enum import Enum, IntEnum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .errors import CategoryError, LogConfigError, PatternError, UnknownAppenderError

logger = logging.getLogger(__name__)

ROOT = ""
DEFAULT_PATTERN = "%p [%c] %m%n"
_TOKEN = re.compile(r"%(.?)", re.DOTALL)


class Priority(IntEnum):
    DEBUG = 10
    INFO = 20
    WARN = 30
    ERROR = 40
    FATAL = 50

    @classmethod
    def parse(cls, name: str) -> "Priority":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise LogConfigError(f"unknown priority {name!r}") from None

    @classmethod
    def from_logging_level(cls, levelno: int) -> "Priority":
        """Map a standard-library level number onto the nearest priority at or below it."""
        for priority in sorted(cls, reverse=True):
            if levelno >= priority:
                return priority
        return cls.DEBUG


class SinkKind(str, Enum):
    MEMORY = "memory"
    FILE = "file"
    STDOUT = "stdout"
    STDERR = "stderr"


def validate_pattern(pattern: str) -> str:
    for match in _TOKEN.finditer(pattern):
        if match.group(1) not in ("p", "c", "m", "n"):
            raise PatternError(f"unknown token {match.group(0)!r} in pattern {pattern!r}")
    return pattern


def format_message(pattern: str, p: Priority, category: str, message: str) -> str:
    """
    Substitute %p (priority), %c (category), %m (message) and %n (newline).

    Raises:
        PatternError: any other % token
    """
    validate_pattern(pattern)
    values = {"p": p.name, "c": category, "m": message, "n": "\n"}
    return _TOKEN.sub(lambda m: values[m.group(1)], pattern)


def check_category(category: str) -> str:
    if category == ROOT:
        return category
    segments = category.split(".")
    if any(not s or any(c.isspace() for c in s) for s in segments):
        raise CategoryError(f"malformed category {category!r}")
    return category


def ancestors(category: str) -> Iterator[str]:
    """The category itself, then each parent, ending with the root."""
    check_category(category)
    while category:
        yield category
        category = category.rpartition(".")[0]
    yield ROOT


class Appender(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    threshold: Priority = Priority.DEBUG
    format: str = DEFAULT_PATTERN
    sink: SinkKind = SinkKind.MEMORY
    path: Optional[str] = None

    @field_validator("format")
    @classmethod
    def _known_tokens(cls, value: str) -> str:
        return validate_pattern(value)

    @model_validator(mode="after")
    def _file_has_path(self) -> "Appender":
        if self.sink == SinkKind.FILE and not self.path:
            raise ValueError(f"file appender {self.name} needs a path")
        return self


class CategoryTree(BaseModel):
    """Explicit thresholds and appender attachments per category."""

    model_config = ConfigDict(frozen=True)

    thresholds: Dict[str, Priority] = {ROOT: Priority.DEBUG}
    attachments: Dict[str, Tuple[str, ...]] = {}

    @model_validator(mode="after")
    def _root_has_threshold(self) -> "CategoryTree":
        if ROOT not in self.thresholds:
            raise ValueError("root category needs an explicit threshold")
        for category in list(self.thresholds) + list(self.attachments):
            check_category(category)
        return self

    def with_threshold(self, category: str, p: Priority) -> "CategoryTree":
        check_category(category)
        return self.model_copy(update={"thresholds": {**self.thresholds, category: p}})

    def attach(self, category: str, appender_name: str) -> "CategoryTree":
        check_category(category)
        current = self.attachments.get(category, ())
        return self.model_copy(
            update={"attachments": {**self.attachments, category: current + (appender_name,)}}
        )


class LogConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    appenders: Tuple[Appender, ...] = ()
    tree: CategoryTree = CategoryTree()


def effective_threshold(t: CategoryTree, category: str) -> Priority:
    for name in ancestors(category):
        if name in t.thresholds:
            return t.thresholds[name]
    return t.thresholds[ROOT]


def log_dispatch(
    t: CategoryTree,
    appenders: Sequence[Appender],
    category: str,
    p: Priority,
    message: str,
) -> List[Tuple[str, str]]:
    """
    Decide which appenders receive an event and format it for each.

    Returns:
        (appender name, formatted line) pairs, nearest category first

    Raises:
        UnknownAppenderError: an attached name has no declared appender
    """
    if p < effective_threshold(t, category):
        return []

    by_name = {a.name: a for a in appenders}
    entries = []
    seen = set()
    for name in ancestors(category):
        for appender_name in t.attachments.get(name, ()):
            if appender_name in seen:
                continue
            seen.add(appender_name)
            appender = by_name.get(appender_name)
            if appender is None:
                raise UnknownAppenderError(f"category {name!r} attaches unknown appender {appender_name!r}")
            if p >= appender.threshold:
                entries.append((appender_name, format_message(appender.format, p, category, message)))
    return entries


class MemorySink:
    """Keeps lines in memory; appends are serialized."""

    def __init__(self):
        self.lines: List[str] = []
        self._lock = threading.Lock()

    def write(self, line: str) -> None:
        with self._lock:
            self.lines.append(line)


class FileSink:
    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()

    def write(self, line: str) -> None:
        if not line.endswith("\n"):
            line += "\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line)


class StreamSink:
    """Writes to sys.stdout or sys.stderr, resolved at write time."""

    def __init__(self, stream_name: str):
        self.stream_name = stream_name
        self._lock = threading.Lock()

    def write(self, line: str) -> None:
        if not line.endswith("\n"):
            line += "\n"
        with self._lock:
            getattr(sys, self.stream_name).write(line)


class TimestampingSink:
    """Prefixes each line with a timestamp from an injected clock."""

    def __init__(self, inner, clock: Callable[[], datetime] = datetime.now):
        self.inner = inner
        self.clock = clock

    def write(self, line: str) -> None:
        self.inner.write(f"{self.clock().isoformat(timespec='seconds')} {line}")

    @property
    def lines(self) -> List[str]:
        return self.inner.lines


def make_sink(appender: Appender):
    if appender.sink == SinkKind.FILE:
        return FileSink(appender.path)
    if appender.sink in (SinkKind.STDOUT, SinkKind.STDERR):
        return StreamSink(appender.sink.value)
    return MemorySink()


class LogEngine:
    """A configured logging engine: dispatch plus delivery to live sinks."""

    def __init__(self, log_config: LogConfig, sinks: Optional[Dict[str, object]] = None):
        self.config = log_config
        self.sinks = {a.name: make_sink(a) for a in log_config.appenders}
        if sinks:
            self.sinks.update(sinks)

    def log(self, category: str, p: Priority, message: str) -> List[Tuple[str, str]]:
        entries = log_dispatch(self.config.tree, self.config.appenders, category, p, message)
        for appender_name, line in entries:
            self.sinks[appender_name].write(line)
        return entries

    def sink(self, name: str):
        return self.sinks[name]


def log_config_from_document(node) -> LogConfig:
    """
    Build a LogConfig from a <logging> element:

        <logging>
          <appender name="console" threshold="DEBUG" format="%p [%c] %m%n" sink="stderr"/>
          <root threshold="INFO" appenders="console"/>
          <category name="schema_scaffold.engine" threshold="DEBUG"/>
        </logging>

    Raises:
        LogConfigError: unknown element, priority or sink, or a bad appender
    """
    appenders = []
    tree = CategoryTree()
    for child in node.children:
        attrs = dict(child.attributes)
        try:
            if child.name == "appender":
                appenders.append(Appender(
                    name=attrs["name"],
                    threshold=Priority.parse(attrs.get("threshold", "DEBUG")),
                    format=attrs.get("format", DEFAULT_PATTERN),
                    sink=SinkKind(attrs.get("sink", SinkKind.MEMORY.value)),
                    path=attrs.get("path"),
                ))
                continue
            if child.name == "root":
                category = ROOT
            elif child.name == "category":
                category = attrs.get("name", ROOT)
            else:
                raise LogConfigError(f"unexpected element <{child.name}> in <logging>")
            if "threshold" in attrs:
                tree = tree.with_threshold(category, Priority.parse(attrs["threshold"]))
            for appender_name in filter(None, (a.strip() for a in attrs.get("appenders", "").split(","))):
                tree = tree.attach(category, appender_name)
        except KeyError as e:
            raise LogConfigError(f"<{child.name}> is missing attribute {e}") from e
        except (ValueError, TypeError) as e:
            if isinstance(e, LogConfigError):
                raise
            raise LogConfigError(f"invalid <{child.name}>: {e}") from e

    declared = {a.name for a in appenders}
    for category, names in tree.attachments.items():
        for name in names:
            if name not in declared:
                raise UnknownAppenderError(f"category {category!r} attaches unknown appender {name!r}")
    logger.debug(f"Log config with {len(appenders)} appender(s) and {len(tree.thresholds)} threshold(s)")
    return LogConfig(appenders=tuple(appenders), tree=tree)


class LogliteHandler(logging.Handler):
    """Routes standard-library records into a LogEngine, using the logger name as category."""

    def __init__(self, engine: LogEngine, level: int = logging.NOTSET):
        super().__init__(level)
        self.engine = engine

    def emit(self, record: logging.LogRecord) -> None:
        try:
            self.engine.log(record.name, Priority.from_logging_level(record.levelno), record.getMessage())
        except Exception:
            self.handleError(record)
