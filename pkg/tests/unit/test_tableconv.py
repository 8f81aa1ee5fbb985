"""
Unit tests for TableConv mapping specs.
"""
import pytest

from schema_scaffold.engine.errors import MappingError, MappingParseError
from schema_scaffold.engine.tableconv import (
    MappingSpec,
    emit_migration_script,
    emit_migration_sql,
    parse_mapping_file,
    serialize_mapping_file,
    transform_record,
)

LANGUAGE_PAIRS = (
    ("language_id", "SEQNUM"),
    ("user_id", "SU_APPLY_USER_ID"),
    ("language_name", "LANGUAGE_CD"),
    ("speak", "READ_PROFICIENCY"),
    ("read", "WRITE_PROFICIENCY"),
    ("write", "SPEAK_PROFICIENCY"),
)


class TestParseMappingFile:
    """Test spec file parsing."""

    def test_language_block(self, language_mapping):
        assert language_mapping.src_table == "language"
        assert language_mapping.dst_table == "ps_su_apply_lnguag"
        assert language_mapping.pairs == LANGUAGE_PAIRS

    def test_two_blocks(self):
        m = parse_mapping_file("a A\nx X\n\nb B\ny Y\n")
        assert [s.src_table for s in m.specs] == ["a", "b"]

    def test_extra_blank_lines_and_tabs(self):
        m = parse_mapping_file("\n\na\tA\nx  X   \n\n\n\nb B\ny Y")
        assert len(m.specs) == 2
        assert m.specs[0].pairs == (("x", "X"),)

    def test_three_tokens_names_line(self):
        with pytest.raises(MappingParseError) as exc:
            parse_mapping_file("t U\na b c\n")
        assert exc.value.line == 2

    def test_block_without_pairs(self):
        with pytest.raises(MappingParseError, match="maps no fields") as exc:
            parse_mapping_file("t U\na B\n\nv W\n")
        assert exc.value.line == 4

    def test_duplicate_source_field(self):
        with pytest.raises(MappingParseError, match="duplicate source field a") as exc:
            parse_mapping_file("t U\na B\na C\n")
        assert exc.value.line == 3

    def test_empty_source(self):
        with pytest.raises(MappingParseError):
            parse_mapping_file("   \n")


class TestSerializeMappingFile:
    """Test rendering back to the spec format."""

    def test_round_trip(self, language_spec_text):
        m = parse_mapping_file(language_spec_text + "\nt U\na B\n")
        assert parse_mapping_file(serialize_mapping_file(m)) == m

    def test_verbatim_block(self, language_spec_text):
        assert serialize_mapping_file(parse_mapping_file(language_spec_text)) == language_spec_text


class TestEmitMigrationSql:
    """Test INSERT ... SELECT statements."""

    def test_language(self, language_mapping):
        assert emit_migration_sql(language_mapping) == (
            "INSERT INTO ps_su_apply_lnguag (SEQNUM, SU_APPLY_USER_ID, LANGUAGE_CD, "
            "READ_PROFICIENCY, WRITE_PROFICIENCY, SPEAK_PROFICIENCY) "
            "SELECT language_id, user_id, language_name, speak, read, write FROM language;"
        )

    def test_single_pair(self):
        spec = MappingSpec(src_table="t", dst_table="U", pairs=(("a", "B"),))
        assert emit_migration_sql(spec) == "INSERT INTO U (B) SELECT a FROM t;"

    def test_script_one_line_per_block(self):
        m = parse_mapping_file("a A\nx X\n\nb B\ny Y\n")
        assert emit_migration_script(m) == (
            "INSERT INTO A (X) SELECT x FROM a;\n"
            "INSERT INTO B (Y) SELECT y FROM b;\n"
        )


class TestTransformRecord:
    """Test record key renaming."""

    def test_single_key(self, language_mapping):
        assert transform_record(language_mapping, {"language_name": "French"}) == {"LANGUAGE_CD": "French"}

    def test_empty(self, language_mapping):
        assert transform_record(language_mapping, {}) == {}

    def test_full_row_preserves_values(self, language_mapping):
        row = {src: f"v{i}" for i, (src, _) in enumerate(LANGUAGE_PAIRS)}
        out = transform_record(language_mapping, row)
        assert len(out) == 6
        assert sorted(out.values()) == sorted(row.values())
        assert out["SPEAK_PROFICIENCY"] == row["write"]

    def test_unmapped_key(self, language_mapping):
        with pytest.raises(MappingError, match="fluency"):
            transform_record(language_mapping, {"fluency": "high"})

    def test_spec_for_source_table(self):
        m = parse_mapping_file("a A\nx X\n\nb B\ny Y\n")
        assert m.spec_for("b").dst_table == "B"
        assert m.spec_for().src_table == "a"
        with pytest.raises(MappingError):
            m.spec_for("zzz")
