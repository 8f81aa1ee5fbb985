"""
Pytest configuration and shared fixtures for unit tests.

Provides schemas, mapping specs and file paths used across multiple test files.
"""
from pathlib import Path

import pytest

from schema_scaffold.engine.schema_model import FieldKind, FieldSpec, TableSchema, parse_schema
from schema_scaffold.engine.tableconv import parse_mapping_file

TESTS_DIR = Path(__file__).parent
FIXTURES_DIR = TESTS_DIR / "fixtures"
GOLDEN_DIR = TESTS_DIR / "golden"


# =============================================================================
# File Locations
# =============================================================================

@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


# =============================================================================
# Schemas
# =============================================================================

@pytest.fixture
def table_a():
    """The BeanHelper usage-line table: two text fields, keyed on the last."""
    return TableSchema.from_names("table_a", ["field_aa", "field_nn"])


@pytest.fixture
def language_schema():
    """The language table, keyed on an auto-generated language_id."""
    return parse_schema((FIXTURES_DIR / "language.schema").read_text(encoding="utf-8"))


@pytest.fixture
def applicant_schema():
    """A general-information style schema touching every field kind."""
    return parse_schema((FIXTURES_DIR / "applicant.schema").read_text(encoding="utf-8"))


@pytest.fixture
def address_schema():
    """Country before state, both required-free, plus a required name."""
    return TableSchema.build("address", [
        FieldSpec(name="first_name", required=True),
        FieldSpec(name="country", kind=FieldKind.COUNTRY),
        FieldSpec(name="state", kind=FieldKind.STATE),
        FieldSpec(name="dob", kind=FieldKind.DATE),
    ])


# =============================================================================
# Mapping Specs
# =============================================================================

@pytest.fixture
def language_spec_text():
    return (FIXTURES_DIR / "language.spec").read_text(encoding="utf-8")


@pytest.fixture
def language_mapping(language_spec_text):
    return parse_mapping_file(language_spec_text).specs[0]


# =============================================================================
# Environment
# =============================================================================

@pytest.fixture
def clean_environ():
    """An environment with no toolkit variables set."""
    return {}


@pytest.fixture
def scaffold_config_path():
    return str(FIXTURES_DIR / "scaffold.xml")
