"""
Naming convention for generated code.

A table or column name in snake_case maps to a camelCase variable, a
PascalCase class stem and get/set accessor names. Invalid input is rejected
rather than coerced so camel_to_snake(snake_to_camel(s)) == s holds.
"""
import re
from typing import Tuple

from pydantic import BaseModel, ConfigDict

from .errors import InvalidIdentifierError

SNAKE_PATTERN = re.compile(r"^[a-z][a-z0-9]*(?:_[a-z0-9]+)*$")
# Segments after the first start with a letter; digits join the previous word.
CANONICAL_SNAKE_PATTERN = re.compile(r"^[a-z][a-z0-9]*(?:_[a-z][a-z0-9]*)*$")
CAMEL_PATTERN = re.compile(r"^[a-z][A-Za-z0-9]*$")


class NameForms(BaseModel):
    """Every generated spelling of one identifier."""

    model_config = ConfigDict(frozen=True)

    snake: str
    camel: str
    pascal: str
    getter: str
    setter: str


def is_snake_identifier(name: str) -> bool:
    return bool(SNAKE_PATTERN.match(name))


def is_canonical_snake(name: str) -> bool:
    return bool(CANONICAL_SNAKE_PATTERN.match(name))


def _require_snake(name: str) -> None:
    if not isinstance(name, str) or not is_snake_identifier(name):
        raise InvalidIdentifierError(str(name))


def snake_to_pascal(name: str) -> str:
    """table_a -> TableA"""
    _require_snake(name)
    return "".join(segment[0].upper() + segment[1:] for segment in name.split("_"))


def snake_to_camel(name: str) -> str:
    """first_name -> firstName"""
    pascal = snake_to_pascal(name)
    return pascal[0].lower() + pascal[1:]


def camel_to_snake(name: str) -> str:
    """
    Inverse of snake_to_camel.

    Each uppercase letter opens a new segment; digits stay attached to the
    segment before them (fieldAa1 -> field_aa1).
    """
    if not isinstance(name, str) or not CAMEL_PATTERN.match(name):
        raise InvalidIdentifierError(str(name), expected="camelCase identifier")
    return re.sub(r"[A-Z]", lambda m: "_" + m.group(0).lower(), name)


def accessor_names(field: str) -> Tuple[str, str]:
    pascal = snake_to_pascal(field)
    return f"get{pascal}", f"set{pascal}"


def bean_class_name(table: str) -> str:
    return f"{snake_to_pascal(table)}Bean"


def manager_class_name(table: str) -> str:
    return f"{snake_to_pascal(table)}Manager"


def name_forms(name: str) -> NameForms:
    pascal = snake_to_pascal(name)
    getter, setter = accessor_names(name)
    return NameForms(
        snake=name,
        camel=pascal[0].lower() + pascal[1:],
        pascal=pascal,
        getter=getter,
        setter=setter,
    )


def label_for(name: str) -> str:
    """Human label for forms and titles: field_aa -> Field Aa."""
    return " ".join(segment.capitalize() for segment in name.split("_") if segment)
