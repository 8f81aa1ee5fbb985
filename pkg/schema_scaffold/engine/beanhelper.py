"""
BeanHelper - code fragments for the bean/manager layer of one table.

Emits the copy-paste blocks (setters, adders, updaters, tester, servlet
helper) plus a full bean class and a saveOrUpdate method. Every identifier in
the output comes from the naming module; values are concatenated into SQL
text exactly as the hand-written managers do.
"""
import logging
from typing import List

from pydantic import BaseModel, ConfigDict

from ..config.settings import DEFAULT_SEQUENCE_TOKEN
from .naming import (
    accessor_names,
    bean_class_name,
    manager_class_name,
    name_forms,
    snake_to_camel,
)
from .schema_model import TableSchema

logger = logging.getLogger(__name__)

HEADER_LEAD = "-" * 14
BLOCK_HEADERS = {
    "setters": f"{HEADER_LEAD} SETTERS {'-' * 13}",
    "adders": f"{HEADER_LEAD} ADDERS {'-' * 13}",
    "updaters": f"{HEADER_LEAD} UPDATERS {'-' * 13}",
    "tester": f"{HEADER_LEAD} TESTER {'-' * 13}",
    "helper": f"{HEADER_LEAD} HELPER for servlets {'-' * 9}",
}
INDENT = "    "


class FragmentSet(BaseModel):
    """All generated artifacts for one table."""

    model_config = ConfigDict(frozen=True)

    setters: str
    adders: str
    updaters: str
    tester: str
    helper: str
    bean_class: str
    save_or_update: str

    def render(self) -> str:
        """The five copy-paste blocks under their header lines."""
        parts = []
        for block, header in BLOCK_HEADERS.items():
            parts.append(header + "\n")
            parts.append(getattr(self, block))
        return "".join(parts)


def _block(lines: List[str]) -> str:
    return "\n".join(lines) + "\n"


def gen_setters(s: TableSchema) -> str:
    lines = []
    for f in s.fields:
        _, setter = accessor_names(f.name)
        lines.append(f'b.{setter}(rs.getString("{f.name}"));')
    return _block(lines)


def gen_adders(s: TableSchema, sequence_token: str = DEFAULT_SEQUENCE_TOKEN) -> str:
    """
    INSERT statement text.

    An auto_id column is listed first and takes the sequence token as its
    value, so the column and value lists have equal length.
    """
    auto = s.auto_id_field
    ordered = list(s.fields)
    if auto is not None:
        ordered = [auto] + [f for f in s.fields if f.name != auto.name]
    columns = ", ".join(f.name for f in ordered)
    valued = [f for f in ordered if not f.has_auto_id]

    head = f'String insertStmt = "INSERT INTO {s.table}({columns}) VALUES ('
    if auto is None:
        lines = [head + '"']
    elif valued:
        lines = [f"{head} {sequence_token},"]
    else:
        return _block([f'{head} {sequence_token})";'])

    for i, f in enumerate(valued):
        getter, _ = accessor_names(f.name)
        tail = "')\";" if i == len(valued) - 1 else "', \""
        lines.append(f'+ "\'" + b.{getter}() + "{tail}')
    return _block(lines)


def gen_updaters(s: TableSchema) -> str:
    lines = [f'String updateStmt = "UPDATE {s.table} SET "']
    for i, f in enumerate(s.fields):
        getter, _ = accessor_names(f.name)
        sep = "' " if i == len(s.fields) - 1 else "', "
        lines.append(f'+ "{f.name}=\'" + b.{getter}() + "{sep}"')
    key_getter, _ = accessor_names(s.key_field)
    lines.append(f'+ "WHERE {s.key_field}=\'" + b.{key_getter}() + "\'";')
    return _block(lines)


def gen_tester(s: TableSchema) -> str:
    manager = manager_class_name(s.table)
    bean = bean_class_name(s.table)
    lines = [
        f"{manager} m = {manager}.instance();",
        f"{bean} b = new {bean}();",
    ]
    for f in s.fields:
        _, setter = accessor_names(f.name)
        lines.append(f'b.{setter}("{f.name}1");')
    return _block(lines)


def gen_helper(s: TableSchema) -> str:
    reads = []
    sets = []
    for f in s.fields:
        camel = snake_to_camel(f.name)
        _, setter = accessor_names(f.name)
        reads.append(f'String {camel} = request.getParameter("{camel}");')
        sets.append(f"b.{setter}({camel});")
    return _block(reads + sets)


def gen_bean_class(s: TableSchema) -> str:
    bean = bean_class_name(s.table)
    forms = [name_forms(f.name) for f in s.fields]

    lines = [
        "import java.util.ArrayList;",
        "import java.util.List;",
        "",
        f"public class {bean} {{",
        "",
    ]
    for n in forms:
        lines.append(f"{INDENT}private String {n.camel};")
    for n in forms:
        lines += [
            "",
            f"{INDENT}public String {n.getter}() {{",
            f"{INDENT * 2}return {n.camel};",
            f"{INDENT}}}",
            "",
            f"{INDENT}public void {n.setter}(String {n.camel}) {{",
            f"{INDENT * 2}this.{n.camel} = {n.camel};",
            f"{INDENT}}}",
        ]

    lines += [
        "",
        f"{INDENT}public List<String> isValid() {{",
        f"{INDENT * 2}List<String> errors = new ArrayList<String>();",
    ]
    for f, n in zip(s.fields, forms):
        if not f.required:
            continue
        lines += [
            f"{INDENT * 2}if ({n.camel} == null || {n.camel}.trim().length() == 0) {{",
            f'{INDENT * 3}errors.add("{f.name}: required");',
            f"{INDENT * 2}}}",
        ]
    lines += [
        f"{INDENT * 2}return errors;",
        f"{INDENT}}}",
        "}",
    ]
    return _block(lines)


def gen_save_or_update(s: TableSchema, sequence_token: str = DEFAULT_SEQUENCE_TOKEN) -> str:
    """
    Upsert method: look the row up by its key, then update or insert.

    The update and insert statements are the gen_updaters/gen_adders texts,
    embedded unchanged as the branch bodies.
    """
    bean = bean_class_name(s.table)
    key_getter, _ = accessor_names(s.key_field)
    body = INDENT * 2

    lines = [
        f"public void saveOrUpdate({bean} b) throws SQLException {{",
        f'{INDENT}String existsStmt = "SELECT {s.key_field} FROM {s.table} '
        f'WHERE {s.key_field}=\'" + b.{key_getter}() + "\'";',
        f"{INDENT}Statement stmt = conn.createStatement();",
        f"{INDENT}ResultSet rs = stmt.executeQuery(existsStmt);",
        f"{INDENT}if (rs.next()) {{",
    ]
    text = _block(lines)
    text += gen_updaters(s)
    text += _block([
        f"{body}stmt.executeUpdate(updateStmt);",
        f"{INDENT}}} else {{",
    ])
    text += gen_adders(s, sequence_token)
    text += _block([
        f"{body}stmt.executeUpdate(insertStmt);",
        f"{INDENT}}}",
        f"{INDENT}rs.close();",
        f"{INDENT}stmt.close();",
        "}",
    ])
    return text


def gen_all(s: TableSchema, sequence_token: str = DEFAULT_SEQUENCE_TOKEN) -> FragmentSet:
    logger.debug(f"Generating fragments for {s.table} ({len(s.fields)} fields)")
    return FragmentSet(
        setters=gen_setters(s),
        adders=gen_adders(s, sequence_token),
        updaters=gen_updaters(s),
        tester=gen_tester(s),
        helper=gen_helper(s),
        bean_class=gen_bean_class(s),
        save_or_update=gen_save_or_update(s, sequence_token),
    )
