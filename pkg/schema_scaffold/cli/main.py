"""
Command-line front end: one click group with a subcommand per generator
and checker.

Artifacts go to stdout and diagnostics to stderr. Exit codes: 0 success,
1 usage error, 2 input or parse error, 3 findings reported (validate,
check-schema, check-sql).
"""
import io
import logging
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from datetime import date
from typing import Dict, Mapping, Optional, Sequence

import click
from pydantic import BaseModel, ConfigDict

from ..config.settings import Config
from ..engine.beanhelper import gen_all
from ..engine.config_reader import load_config_file
from ..engine.errors import (
    InputFileError,
    LogConfigError,
    SchemaParseError,
    ScaffoldError,
    SettingsError,
)
from ..engine.formgen import BooleanWidget, FormPolicy, render_form
from ..engine.loglite import (
    LogConfig,
    LogEngine,
    LogliteHandler,
    Priority,
    SinkKind,
    StreamSink,
    log_config_from_document,
    log_dispatch,
)
from ..engine.schema_model import TableSchema, parse_schema, read_schema, validate_schema
from ..engine.tableconv import emit_migration_script, parse_mapping_file, transform_record
from ..engine.validate import (
    DateWindow,
    detect_multi_statement,
    parse_charset,
    sanitize_whitelist,
    validate_record,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_FINDINGS = 3

PACKAGE_LOGGER = "schema_scaffold"
WIDGETS = {"radio": BooleanWidget.RADIO_PAIR, "checkbox": BooleanWidget.CHECKBOX}


def configure_logging(config: Config) -> None:
    level = getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s - %(message)s",
        stream=sys.stderr,
    )


class RunResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    exit_code: int
    stdout: str
    stderr: str


class CliState:
    """Per-invocation settings, stdin and the optional loglite configuration."""

    def __init__(self, config: Config, stdin: Optional[str] = None):
        self.config = config
        self.log_config: Optional[LogConfig] = None
        self._stdin = stdin

    def read_stdin(self) -> str:
        return sys.stdin.read() if self._stdin is None else self._stdin


def read_input_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f"cannot read {path}: {e}") from e


def load_schema(path: str) -> TableSchema:
    try:
        return parse_schema(read_input_file(path))
    except SchemaParseError as e:
        raise SchemaParseError(f"{path}: {e.reason}", e.line) from e


def parse_rows(pairs: Sequence[str]) -> Dict[str, str]:
    """Turn repeated '--row key=value' options into a record."""
    row: Dict[str, str] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise click.BadParameter(f"expected key=value, got {pair!r}", param_hint="--row")
        if key in row:
            raise click.BadParameter(f"key {key!r} given twice", param_hint="--row")
        row[key] = value
    return row


def _attach_loglite(log_config: LogConfig) -> None:
    """
    Route package records through loglite until the command finishes.

    Stdout appenders write to stderr here; stdout carries only the artifact.
    """
    package_logger = logging.getLogger(PACKAGE_LOGGER)
    redirected = {
        a.name: StreamSink(SinkKind.STDERR.value)
        for a in log_config.appenders
        if a.sink == SinkKind.STDOUT
    }
    handler = LogliteHandler(LogEngine(log_config, sinks=redirected))
    saved = (package_logger.level, package_logger.propagate)
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.DEBUG)
    package_logger.propagate = False

    def detach() -> None:
        package_logger.removeHandler(handler)
        package_logger.setLevel(saved[0])
        package_logger.propagate = saved[1]

    click.get_current_context().call_on_close(detach)


@click.group()
@click.option("--config", "config_path", default=None, metavar="FILE",
              help="Toolkit XML config (default: $SCAFFOLD_CONFIG).")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str]) -> None:
    """Schema-driven scaffolding: code fragments, forms, migrations and checks."""
    if ctx.obj is None:
        ctx.obj = CliState(Config())
    state: CliState = ctx.obj
    path = config_path or state.config.CONFIG_PATH
    if path:
        root = load_config_file(path)
        state.config.apply_document(root)
        logging_node = root.child("logging")
        if logging_node is not None:
            state.log_config = log_config_from_document(logging_node)
            _attach_loglite(state.log_config)
        logger.debug(f"Loaded toolkit config from {path}")
    try:
        state.config.validate()
    except ValueError as e:
        raise SettingsError(str(e)) from e


@cli.command()
@click.argument("names", nargs=-1)
@click.option("--schema", "schema_path", default=None, metavar="FILE",
              help="Schema file instead of positional TABLE FIELD...")
@click.option("--sequence", default=None, help="Sequence expression for auto_id columns.")
@click.option("--artifact", type=click.Choice(["fragments", "bean", "save-or-update", "all"]),
              default="fragments", show_default=True)
@click.pass_obj
def beanhelper(state: CliState, names, schema_path, sequence, artifact) -> None:
    """Print code fragments for one table: TABLE FIELD... or --schema FILE."""
    if schema_path and names:
        raise click.UsageError("give either TABLE FIELD... or --schema, not both")
    if schema_path:
        schema = load_schema(schema_path)
    else:
        if len(names) < 2:
            raise click.UsageError("usage: beanhelper TABLE FIELD... (at least one field)")
        schema = TableSchema.from_names(names[0], names[1:])
        violations = validate_schema(schema)
        if violations:
            raise SchemaParseError(violations[0])

    fragments = gen_all(schema, sequence or state.config.SEQUENCE_TOKEN)
    outputs = {
        "fragments": fragments.render(),
        "bean": fragments.bean_class,
        "save-or-update": fragments.save_or_update,
    }
    if artifact == "all":
        text = "\n".join(outputs.values())
    else:
        text = outputs[artifact]
    click.echo(text, nl=False)


@cli.command()
@click.option("--schema", "schema_path", required=True, metavar="FILE")
@click.option("--action", default=None, help="POST target (default: scaffold.form.action).")
@click.option("--boolean", "boolean_widget", type=click.Choice(sorted(WIDGETS)), default=None)
@click.option("--title", default=None)
@click.option("--no-error-region", is_flag=True, default=False)
@click.pass_obj
def form(state: CliState, schema_path, action, boolean_widget, title, no_error_region) -> None:
    """Print an HTML entry form for a schema."""
    target = action or state.config.FORM_ACTION
    if not target.strip():
        raise click.UsageError("--action is required (or set scaffold.form.action)")
    policy = FormPolicy(
        boolean_widget=WIDGETS[boolean_widget or state.config.BOOLEAN_WIDGET],
        action_target=target,
        include_error_region=not no_error_region,
    )
    click.echo(render_form(load_schema(schema_path), policy, title=title), nl=False)


@cli.command()
@click.argument("specfile")
@click.option("--emit", type=click.Choice(["sql", "record"]), default="sql", show_default=True)
@click.option("--row", "rows", multiple=True, metavar="KEY=VALUE")
@click.option("--source-table", default=None, help="Block used by --emit record (default: first).")
@click.pass_obj
def tableconv(state: CliState, specfile, emit, rows, source_table) -> None:
    """Print migration statements, or a transformed record, for a mapping spec."""
    mapping = parse_mapping_file(read_input_file(specfile))
    if emit == "sql":
        if rows or source_table:
            raise click.UsageError("--row and --source-table only apply to --emit record")
        click.echo(emit_migration_script(mapping), nl=False)
        return

    record = transform_record(mapping.spec_for(source_table), parse_rows(rows))
    for key, value in record.items():
        click.echo(f"{key}={value}")


@cli.command()
@click.option("--schema", "schema_path", required=True, metavar="FILE")
@click.option("--row", "rows", multiple=True, metavar="KEY=VALUE")
@click.option("--oldest", type=click.DateTime(formats=["%Y-%m-%d"]), default=None)
@click.option("--newest", type=click.DateTime(formats=["%Y-%m-%d"]), default=None)
@click.option("--allow", default=None, help="Allowed character class, e.g. -a-zA-Z0-9_.@")
@click.pass_obj
def validate(state: CliState, schema_path, rows, oldest, newest, allow) -> None:
    """Validate one record; prints 'field: message' per error."""
    schema = load_schema(schema_path)
    try:
        window = DateWindow(
            oldest=oldest.date() if oldest else date.fromisoformat(state.config.DATE_OLDEST),
            newest=newest.date() if newest else date.fromisoformat(state.config.DATE_NEWEST),
        )
    except ValueError as e:
        raise SettingsError(f"invalid date window: {e}") from e
    allowed = parse_charset(allow if allow is not None else state.config.ALLOWED_CHARS)

    outcome = validate_record(schema, parse_rows(rows), window, allowed)
    if outcome.is_valid:
        click.echo("ok")
        return
    for line in outcome.lines():
        click.echo(line)
    click.get_current_context().exit(EXIT_FINDINGS)


@cli.command()
@click.option("--allow", default=None, help="Allowed character class, e.g. -a-zA-Z0-9_.@")
@click.pass_obj
def sanitize(state: CliState, allow) -> None:
    """Replace disallowed characters on stdin with '_'; line breaks are kept."""
    allowed = parse_charset(allow if allow is not None else state.config.ALLOWED_CHARS)
    text = state.read_stdin()
    click.echo("\n".join(sanitize_whitelist(part, allowed) for part in text.split("\n")), nl=False)


@cli.command("check-schema")
@click.argument("schema_file")
def check_schema(schema_file) -> None:
    """Print schema violations, one per line."""
    try:
        schema = read_schema(read_input_file(schema_file))
    except SchemaParseError as e:
        raise SchemaParseError(f"{schema_file}: {e.reason}", e.line) from e
    violations = validate_schema(schema)
    if not violations:
        click.echo("ok")
        return
    for violation in violations:
        click.echo(violation)
    click.get_current_context().exit(EXIT_FINDINGS)


@cli.command("check-sql")
@click.pass_obj
def check_sql(state: CliState) -> None:
    """Flag SQL on stdin that holds more than one statement."""
    finding = detect_multi_statement(state.read_stdin())
    if finding.flagged:
        click.echo(f"multi-statement at {finding.position}")
        click.get_current_context().exit(EXIT_FINDINGS)
    click.echo("ok")


@cli.command()
@click.option("--category", default="", help="Dot-separated category; empty is the root.")
@click.option("--priority", default="INFO", show_default=True)
@click.argument("message")
@click.pass_obj
def log(state: CliState, category, priority, message) -> None:
    """Show which appenders of the configured <logging> section receive an event."""
    if state.log_config is None:
        raise LogConfigError("no <logging> section in the toolkit config")
    entries = log_dispatch(
        state.log_config.tree,
        state.log_config.appenders,
        category,
        Priority.parse(priority),
        message,
    )
    for appender_name, line in entries:
        click.echo(f"{appender_name}: {line.rstrip(chr(10))}")


def run(
    argv: Sequence[str],
    stdin: Optional[str] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunResult:
    """
    Execute one invocation and capture its outputs.

    Args:
        argv: arguments after the program name
        stdin: text served to commands that read stdin (None reads the real one)
        environ: environment for settings (None uses os.environ)
    """
    state = CliState(Config(os.environ if environ is None else environ), stdin)
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = cli.main(
                args=list(argv),
                prog_name="schema-scaffold",
                standalone_mode=False,
                obj=state,
            )
        exit_code = EXIT_OK if code is None else int(code)
    except click.UsageError as e:
        err.write(f"error: {e.format_message()}\n")
        exit_code = EXIT_USAGE
    except (click.ClickException, click.Abort) as e:
        err.write(f"error: {e}\n")
        exit_code = EXIT_USAGE
    except ScaffoldError as e:
        logger.warning(f"{type(e).__name__}: {e}")
        err.write(f"error: {e}\n")
        exit_code = EXIT_INPUT
    return RunResult(exit_code=exit_code, stdout=out.getvalue(), stderr=err.getvalue())


def main() -> None:
    config = Config()
    configure_logging(config)
    result = run(sys.argv[1:])
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
