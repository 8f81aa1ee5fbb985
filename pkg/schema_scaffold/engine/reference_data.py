"""
Shipped reference tables (countries, US states).

Files live next to settings.py in the config directory, one entry per line
as CODE<TAB>Display Name.
"""
import logging
import os
from functools import lru_cache
from typing import Optional, Tuple

from ..config.settings import config
from .errors import InputFileError

logger = logging.getLogger(__name__)

US_COUNTRY_CODE = "USA"

Table = Tuple[Tuple[str, str], ...]


def load_code_table(path: str) -> Table:
    """
    Read a CODE<TAB>Name table.

    Raises:
        InputFileError: unreadable file or malformed line
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f"cannot read reference table {path}: {e}") from e

    entries = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise InputFileError(f"{path}: line {line_no}: expected CODE<TAB>Name")
        entries.append((parts[0], parts[1]))
    logger.debug(f"Loaded {len(entries)} entries from {path}")
    return tuple(entries)


def _data_path(name: str, data_dir: Optional[str]) -> str:
    return os.path.join(data_dir or config.data_dir, name)


@lru_cache(maxsize=None)
def us_states(data_dir: Optional[str] = None) -> Table:
    return load_code_table(_data_path("us_states.txt", data_dir))


@lru_cache(maxsize=None)
def countries(data_dir: Optional[str] = None) -> Table:
    return load_code_table(_data_path("countries.txt", data_dir))


def us_state_codes(data_dir: Optional[str] = None) -> frozenset:
    return frozenset(code for code, _ in us_states(data_dir))
