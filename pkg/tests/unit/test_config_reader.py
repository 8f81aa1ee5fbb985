"""
Unit tests for the XML-subset config reader.
"""
import pytest

from schema_scaffold.engine.config_reader import (
    MAX_DEPTH,
    ConfigNode,
    load_config_file,
    lookup,
    parse_config,
    serialize_config,
)
from schema_scaffold.engine.errors import ConfigParseError, InputFileError

SMTP = '<gaw><smtp host="mail.example.org"/></gaw>'


class TestParseConfig:
    """Test the supported subset."""

    def test_self_closing_child_with_attribute(self):
        root = parse_config(SMTP)
        assert root.name == "gaw"
        assert root.children[0].name == "smtp"
        assert root.children[0].attribute("host") == "mail.example.org"

    def test_text_content(self):
        root = parse_config("<a><b>text</b></a>")
        assert root.child("b").text == "text"

    def test_comments_skipped(self):
        root = parse_config("<!-- top -->\n<a>\n  <!-- inside -->\n  <b/>\n</a>\n<!-- tail -->")
        assert [c.name for c in root.children] == ["b"]
        assert root.text == ""

    def test_single_quotes_and_entities(self):
        root = parse_config("<a v='x &lt; y &amp; &quot;z&quot;'>1 &gt; 0</a>")
        assert root.attribute("v") == 'x < y & "z"'
        assert root.text == "1 > 0"

    def test_attribute_order_preserved(self):
        root = parse_config('<a z="1" b="2" m="3"/>')
        assert root.attributes == (("z", "1"), ("b", "2"), ("m", "3"))

    def test_whitespace_inside_tags(self):
        root = parse_config('<a  k = "v" ></a >')
        assert root.attribute("k") == "v"


class TestParseErrors:
    """Test rejection with line numbers."""

    def test_mismatched_tag(self):
        with pytest.raises(ConfigParseError, match="mismatched tag"):
            parse_config("<a></b>")

    def test_mismatched_tag_line(self):
        with pytest.raises(ConfigParseError) as exc:
            parse_config("<a>\n<b>\n</a>\n</b>")
        assert exc.value.line == 3

    def test_unterminated_comment(self):
        with pytest.raises(ConfigParseError, match="unterminated comment") as exc:
            parse_config("<a>\n<!-- never closed\n</a>")
        assert exc.value.line == 2

    @pytest.mark.parametrize("source", [
        "<a>&nbsp;</a>",
        "<a>&#65;</a>",
        "<a v='&apos;'/>",
        "<a>fish & chips</a>",
    ])
    def test_undeclared_entity(self, source):
        with pytest.raises(ConfigParseError, match="undeclared entity"):
            parse_config(source)

    @pytest.mark.parametrize("source", [
        "<!DOCTYPE a><a/>",
        '<?xml version="1.0"?><a/>',
        "<a><![CDATA[x]]></a>",
        "<ns:a/>",
        '<a xmlns:ns="u" ns:k="v"/>',
    ])
    def test_unsupported_markup(self, source):
        with pytest.raises(ConfigParseError):
            parse_config(source)

    def test_duplicate_attribute(self):
        with pytest.raises(ConfigParseError, match="duplicate attribute"):
            parse_config('<a k="1" k="2"/>')

    def test_unclosed_element(self):
        with pytest.raises(ConfigParseError, match="never closed"):
            parse_config("<a><b></b>")

    def test_nesting_at_limit(self):
        root = parse_config("<a>" * MAX_DEPTH + "</a>" * MAX_DEPTH)
        assert root.children[0].name == "a"

    def test_nesting_too_deep(self):
        depth = 5000
        with pytest.raises(ConfigParseError, match="nesting too deep") as exc:
            parse_config("<a>\n" * depth + "</a>" * depth)
        assert exc.value.line == MAX_DEPTH + 1

    def test_two_roots(self):
        with pytest.raises(ConfigParseError, match="after the root"):
            parse_config("<a/><b/>")

    def test_empty(self):
        with pytest.raises(ConfigParseError):
            parse_config("")


class TestLookup:
    """Test dotted-path resolution."""

    def test_attribute_path(self):
        assert lookup(parse_config(SMTP), "gaw.smtp.host") == "mail.example.org"

    def test_absent_path(self):
        root = parse_config(SMTP)
        assert lookup(root, "gaw.smtp.port") is None
        assert lookup(root, "gaw.pop.host") is None
        assert lookup(root, "other.smtp") is None

    def test_first_duplicate_wins(self):
        root = parse_config("<a><b>first</b><b>second</b></a>")
        assert lookup(root, "a.b") == "first"

    def test_attribute_checked_before_child(self):
        root = parse_config('<a><s port="25"><port>587</port></s></a>')
        assert lookup(root, "a.s.port") == "25"

    def test_child_text(self):
        root = parse_config("<a><s><port>587</port></s></a>")
        assert lookup(root, "a.s.port") == "587"

    def test_root_text_and_empty_segments(self):
        root = parse_config("<a>hello</a>")
        assert lookup(root, "a") == "hello"
        assert lookup(root, "a..b") is None


class TestSerializeConfig:
    """Test rendering back to text."""

    def test_round_trip(self, scaffold_config_path):
        root = load_config_file(scaffold_config_path)
        assert parse_config(serialize_config(root)) == root

    def test_escapes(self):
        node = ConfigNode(name="a", attributes=(("v", '<"&>'),), text="1 < 2")
        assert parse_config(serialize_config(node)) == node

    def test_mixed_text_and_children(self):
        root = parse_config("<a>note<b/></a>")
        assert parse_config(serialize_config(root)) == root


class TestLoadConfigFile:
    """Test file loading."""

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFileError):
            load_config_file(str(tmp_path / "absent.xml"))

    def test_error_names_file(self, tmp_path):
        path = tmp_path / "bad.xml"
        path.write_text("<a>\n</b>", encoding="utf-8")
        with pytest.raises(ConfigParseError) as exc:
            load_config_file(str(path))
        assert exc.value.line == 2
        assert "bad.xml" in str(exc.value)
