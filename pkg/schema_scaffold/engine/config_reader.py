"""
ConfigReader - a minimal XML-subset parser with dotted-path lookup.

Supported: elements (including self-closing), attributes with single- or
double-quoted values, nested elements, text content and comments. Anything
else (doctype, processing instructions, CDATA, namespaces, entities other
than &lt; &gt; &amp; &quot;) is rejected with the line it appears on.
"""
import logging
import re
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .errors import ConfigParseError, InputFileError

logger = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")
_ATTRIBUTE = re.compile(r"\s+([A-Za-z_][A-Za-z0-9_.\-]*)\s*=\s*(\"[^\"]*\"|'[^']*')")
_ENTITY = re.compile(r"&([^;&\s]*);?")
ENTITIES = {"lt": "<", "gt": ">", "amp": "&", "quot": '"'}
MAX_DEPTH = 64


class ConfigNode(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    attributes: Tuple[Tuple[str, str], ...] = ()
    children: Tuple["ConfigNode", ...] = ()
    text: str = ""

    def attribute(self, name: str) -> Optional[str]:
        for key, value in self.attributes:
            if key == name:
                return value
        return None

    def child(self, name: str) -> Optional["ConfigNode"]:
        for node in self.children:
            if node.name == name:
                return node
        return None


ConfigNode.model_rebuild()


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0

    def line(self, pos: Optional[int] = None) -> int:
        return self.source.count("\n", 0, self.pos if pos is None else pos) + 1

    def error(self, message: str, pos: Optional[int] = None) -> ConfigParseError:
        return ConfigParseError(message, self.line(pos))

    def decode(self, text: str, start: int) -> str:
        def replace(match):
            if not match.group(0).endswith(";") or match.group(1) not in ENTITIES:
                raise self.error(f"undeclared entity {match.group(0)!r}", start + match.start())
            return ENTITIES[match.group(1)]

        return _ENTITY.sub(replace, text)

    def skip_misc(self) -> None:
        """Whitespace and comments between markup."""
        while True:
            while self.pos < len(self.source) and self.source[self.pos].isspace():
                self.pos += 1
            if self.source.startswith("<!--", self.pos):
                self.skip_comment()
            else:
                return

    def skip_comment(self) -> None:
        end = self.source.find("-->", self.pos + 4)
        if end == -1:
            raise self.error("unterminated comment")
        self.pos = end + 3

    def parse_document(self) -> ConfigNode:
        self.skip_misc()
        if not self.source.startswith("<", self.pos):
            raise self.error("expected a root element")
        root = self.parse_element()
        self.skip_misc()
        if self.pos != len(self.source):
            raise self.error("content after the root element")
        return root

    def parse_element(self, depth: int = 1) -> ConfigNode:
        start = self.pos
        if depth > MAX_DEPTH:
            raise self.error(f"nesting too deep (more than {MAX_DEPTH} levels)")
        if self.source.startswith("<!", start) or self.source.startswith("<?", start):
            raise self.error("unsupported markup (doctype, CDATA or processing instruction)")
        match = _NAME.match(self.source, start + 1)
        if not match:
            raise self.error("expected an element name")
        name = match.group(0)
        self.pos = match.end()
        if self.source.startswith(":", self.pos):
            raise self.error(f"namespaces are not supported (<{name}:...>)")

        attributes: List[Tuple[str, str]] = []
        while True:
            attr = _ATTRIBUTE.match(self.source, self.pos)
            if not attr:
                break
            key, quoted = attr.group(1), attr.group(2)
            if ":" in key:
                raise self.error("namespaces are not supported")
            if any(k == key for k, _ in attributes):
                raise self.error(f"duplicate attribute {key!r} on <{name}>")
            value = quoted[1:-1]
            if "<" in value:
                raise self.error(f"'<' in value of attribute {key!r}")
            attributes.append((key, self.decode(value, attr.start(2) + 1)))
            self.pos = attr.end()

        while self.pos < len(self.source) and self.source[self.pos].isspace():
            self.pos += 1
        if self.source.startswith("/>", self.pos):
            self.pos += 2
            return ConfigNode(name=name, attributes=tuple(attributes))
        if not self.source.startswith(">", self.pos):
            raise self.error(f"malformed start tag <{name}>")
        self.pos += 1

        children: List[ConfigNode] = []
        text_parts: List[str] = []
        while True:
            if self.pos >= len(self.source):
                raise self.error(f"element <{name}> opened on line {self.line(start)} is never closed")
            if self.source.startswith("<!--", self.pos):
                self.skip_comment()
            elif self.source.startswith("</", self.pos):
                close_at = self.pos
                closing = _NAME.match(self.source, self.pos + 2)
                close_name = closing.group(0) if closing else ""
                end = closing.end() if closing else self.pos + 2
                while end < len(self.source) and self.source[end].isspace():
                    end += 1
                if close_name != name or not self.source.startswith(">", end):
                    raise self.error(f"mismatched tag: </{close_name}> closes <{name}>", close_at)
                self.pos = end + 1
                break
            elif self.source.startswith("<", self.pos):
                children.append(self.parse_element(depth + 1))
            else:
                next_markup = self.source.find("<", self.pos)
                if next_markup == -1:
                    next_markup = len(self.source)
                raw = self.source[self.pos:next_markup]
                if ">" in raw:
                    raise self.error("stray '>' in text")
                text_parts.append(self.decode(raw, self.pos))
                self.pos = next_markup

        return ConfigNode(
            name=name,
            attributes=tuple(attributes),
            children=tuple(children),
            text="".join(text_parts).strip(),
        )


def parse_config(source: str) -> ConfigNode:
    """
    Parse a config document into its root node.

    Raises:
        ConfigParseError: anything outside the supported subset, with a line number
    """
    if not source or not source.strip():
        raise ConfigParseError("config source is empty")
    root = _Parser(source).parse_document()
    logger.debug(f"Parsed config document with root <{root.name}>")
    return root


def load_config_file(path: str) -> ConfigNode:
    try:
        with open(path, "r", encoding="utf-8") as f:
            source = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f"cannot read config file {path}: {e}") from e
    try:
        return parse_config(source)
    except ConfigParseError as e:
        raise ConfigParseError(f"{path}: {e.reason}", e.line) from e


def lookup(root: ConfigNode, path: str) -> Optional[str]:
    """
    Resolve 'root.child.leaf'. The first segment names the root; the last
    segment is tried as an attribute before a child element. The first
    matching child wins at every step.
    """
    segments = path.split(".")
    if any(not s for s in segments) or segments[0] != root.name:
        return None

    node = root
    for segment in segments[1:-1]:
        node = node.child(segment)
        if node is None:
            return None

    if len(segments) == 1:
        return node.text
    last = segments[-1]
    value = node.attribute(last)
    if value is not None:
        return value
    leaf = node.child(last)
    return leaf.text if leaf is not None else None


def escape_markup(value: str) -> str:
    """Escape the four characters the reader decodes as entities."""
    return (
        value.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def serialize_config(node: ConfigNode, indent: str = "  ", _depth: int = 0) -> str:
    pad = indent * _depth
    attrs = "".join(f' {key}="{escape_markup(value)}"' for key, value in node.attributes)
    if not node.children and not node.text:
        return f"{pad}<{node.name}{attrs}/>\n"
    if not node.children:
        return f"{pad}<{node.name}{attrs}>{escape_markup(node.text)}</{node.name}>\n"

    parts = [f"{pad}<{node.name}{attrs}>{escape_markup(node.text)}\n"]
    parts += [serialize_config(child, indent, _depth + 1) for child in node.children]
    parts.append(f"{pad}</{node.name}>\n")
    return "".join(parts)
