"""
TableConv - table-to-table field mapping.

A spec file holds one or more blocks separated by blank lines. The first line
of a block names the source and destination tables; each following line maps
one source field to one destination field:

    language ps_su_apply_lnguag
    language_id SEQNUM
    user_id SU_APPLY_USER_ID

Output is SQL text; executing it is left to the operator.
"""
import logging
from typing import Dict, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .errors import MappingError, MappingParseError

logger = logging.getLogger(__name__)


class MappingSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    src_table: str
    dst_table: str
    pairs: Tuple[Tuple[str, str], ...]

    @property
    def src_fields(self) -> List[str]:
        return [src for src, _ in self.pairs]

    @property
    def dst_fields(self) -> List[str]:
        return [dst for _, dst in self.pairs]


class MappingFile(BaseModel):
    model_config = ConfigDict(frozen=True)

    specs: Tuple[MappingSpec, ...]

    def spec_for(self, src_table: Optional[str] = None) -> MappingSpec:
        """First block, or the first block reading from src_table."""
        if src_table is None:
            return self.specs[0]
        for spec in self.specs:
            if spec.src_table == src_table:
                return spec
        raise MappingError(f"no mapping block reads from table {src_table}")


def _two_tokens(line: str, line_no: int) -> Tuple[str, str]:
    tokens = line.split()
    if len(tokens) != 2:
        raise MappingParseError(f"expected 2 whitespace-separated names, found {len(tokens)}", line_no)
    return tokens[0], tokens[1]


def _build_spec(block: List[Tuple[int, str]]) -> MappingSpec:
    header_no, header = block[0]
    src_table, dst_table = _two_tokens(header, header_no)
    if len(block) == 1:
        raise MappingParseError(f"block {src_table} -> {dst_table} maps no fields", header_no)

    pairs = []
    seen = set()
    for line_no, line in block[1:]:
        src, dst = _two_tokens(line, line_no)
        if src in seen:
            raise MappingParseError(f"duplicate source field {src}", line_no)
        seen.add(src)
        pairs.append((src, dst))
    return MappingSpec(src_table=src_table, dst_table=dst_table, pairs=tuple(pairs))


def parse_mapping_file(source: str) -> MappingFile:
    """
    Parse a TableConv spec file.

    Raises:
        MappingParseError: malformed line, empty block or duplicate source field
    """
    if not source or not source.strip():
        raise MappingParseError("mapping spec is empty")

    blocks: List[List[Tuple[int, str]]] = []
    current: List[Tuple[int, str]] = []
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((line_no, line))
    if current:
        blocks.append(current)

    specs = tuple(_build_spec(block) for block in blocks)
    logger.debug(f"Parsed {len(specs)} mapping block(s)")
    return MappingFile(specs=specs)


def serialize_mapping_file(m: MappingFile) -> str:
    blocks = []
    for spec in m.specs:
        lines = [f"{spec.src_table} {spec.dst_table}"]
        lines += [f"{src} {dst}" for src, dst in spec.pairs]
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def emit_migration_sql(m: MappingSpec) -> str:
    dst_columns = ", ".join(m.dst_fields)
    src_columns = ", ".join(m.src_fields)
    return f"INSERT INTO {m.dst_table} ({dst_columns}) SELECT {src_columns} FROM {m.src_table};"


def emit_migration_script(m: MappingFile) -> str:
    return "".join(emit_migration_sql(spec) + "\n" for spec in m.specs)


def transform_record(m: MappingSpec, row: Mapping[str, str]) -> Dict[str, str]:
    """
    Rename a source row's keys to destination fields; values pass through.

    Raises:
        MappingError: row carries a key no pair covers
    """
    mapped = dict(m.pairs)
    unknown = [key for key in row if key not in mapped]
    if unknown:
        raise MappingError(
            f"field(s) {', '.join(unknown)} not mapped by {m.src_table} -> {m.dst_table}"
        )
    return {dst: row[src] for src, dst in m.pairs if src in row}
