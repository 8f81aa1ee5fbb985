"""
Unit tests for the schema model and schema file format.
"""
import pytest

from schema_scaffold.engine.errors import SchemaParseError
from schema_scaffold.engine.schema_model import (
    FieldKind,
    FieldSpec,
    TableSchema,
    parse_schema,
    read_schema,
    serialize_schema,
    validate_schema,
)


class TestParseSchema:
    """Test parsing well-formed schema files."""

    def test_default_key_is_last_field(self):
        s = parse_schema("table table_a\nfield field_aa text\nfield field_nn text")
        assert s.table == "table_a"
        assert s.field_names == ["field_aa", "field_nn"]
        assert s.key_field == "field_nn"

    def test_single_keyed_field(self):
        s = parse_schema("table t\nfield a text key")
        assert s.key_field == "a"
        assert s.key.is_key

    def test_explicit_key_wins_over_last(self, language_schema):
        assert language_schema.key_field == "language_id"
        assert language_schema.auto_id_field.name == "language_id"

    def test_comments_and_blank_lines_ignored(self):
        s = parse_schema("# header\n\ntable t\n  # inner\nfield a text\n\n")
        assert s.field_names == ["a"]

    def test_enum_values_and_flags_in_any_order(self):
        s = parse_schema("table t\nfield visa enum(F, J,H) key required\nfield b date")
        visa = s.field("visa")
        assert visa.kind == FieldKind.ENUM
        assert visa.values == ("F", "J", "H")
        assert visa.required and visa.is_key

    def test_every_kind(self, applicant_schema):
        kinds = {f.kind for f in applicant_schema.fields}
        assert kinds == {
            FieldKind.TEXT, FieldKind.DATE, FieldKind.ENUM, FieldKind.BOOLEAN,
            FieldKind.COUNTRY, FieldKind.STATE, FieldKind.LONG_TEXT,
            FieldKind.INTEGER, FieldKind.UPLOAD_REF,
        }

    def test_declaration_order_preserved(self, applicant_schema):
        assert applicant_schema.field_names[0] == "first_name"
        assert applicant_schema.field_names[-1] == "applicant_id"


class TestParseErrors:
    """Test rejection of malformed schema files."""

    def test_duplicate_field_reports_second_line(self):
        with pytest.raises(SchemaParseError) as exc:
            parse_schema("table t\nfield a text\nfield a date")
        assert exc.value.line == 3
        assert "duplicate field" in str(exc.value)

    def test_unknown_kind(self):
        with pytest.raises(SchemaParseError) as exc:
            parse_schema("table t\nfield a money")
        assert exc.value.line == 2
        assert "unknown kind" in str(exc.value)

    def test_invalid_identifier(self):
        with pytest.raises(SchemaParseError) as exc:
            parse_schema("table t\nfield First_Name text")
        assert "First_Name: invalid identifier" in str(exc.value)
        assert exc.value.line == 2

    def test_unknown_flag(self):
        with pytest.raises(SchemaParseError, match="unknown flag"):
            parse_schema("table t\nfield a text primary")

    def test_field_before_table(self):
        with pytest.raises(SchemaParseError) as exc:
            parse_schema("field a text\ntable t")
        assert exc.value.line == 1

    def test_empty_source(self):
        with pytest.raises(SchemaParseError):
            parse_schema("  \n")

    def test_empty_enum(self):
        with pytest.raises(SchemaParseError, match="at least one value"):
            parse_schema("table t\nfield a enum()")

    def test_two_auto_ids(self):
        with pytest.raises(SchemaParseError, match="more than one auto_id"):
            parse_schema("table t\nfield a integer auto_id\nfield b integer auto_id")

    def test_is_a_value_error(self):
        with pytest.raises(ValueError):
            parse_schema("table t\nfield a text text text")


class TestValidateSchema:
    """Test violation reporting."""

    def test_well_formed(self, table_a):
        assert validate_schema(table_a) == []

    def test_uppercase_field(self):
        s = TableSchema.build("t", [FieldSpec(name="First_Name"), FieldSpec(name="b")])
        assert validate_schema(s) == ["First_Name: invalid identifier"]

    def test_key_field_missing(self):
        s = TableSchema(table="t", fields=(FieldSpec(name="a"),), key_field="missing")
        assert validate_schema(s) == ["key_field missing not declared"]

    def test_no_fields(self):
        assert validate_schema(TableSchema.build("t", [])) == ["t: table declares no fields"]

    def test_values_on_non_enum(self):
        s = TableSchema.build("t", [FieldSpec(name="a", values=("x",))])
        assert validate_schema(s) == ["a: only enum fields carry values"]

    def test_read_schema_defers_identifier_checks(self):
        s = read_schema("table Bad_Table\nfield a text\nfield a text")
        assert validate_schema(s) == ["Bad_Table: invalid identifier", "a: duplicate field"]


class TestSerializeSchema:
    """Test rendering back to the file format."""

    def test_round_trip(self, applicant_schema):
        assert parse_schema(serialize_schema(applicant_schema)) == applicant_schema

    def test_text(self):
        s = parse_schema("table t\nfield v enum(A,B) required key")
        assert serialize_schema(s) == "table t\nfield v enum(A,B) required key\n"

    def test_from_names(self, table_a):
        assert serialize_schema(table_a) == "table table_a\nfield field_aa text\nfield field_nn text\n"
