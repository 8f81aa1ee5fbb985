"""
Form page generation from a table schema.

One control group per field, named with the camelCase form of the field so
the servlet helper emitted by beanhelper reads the same parameter names.
Forms are always submitted with POST.
"""
import logging
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from .config_reader import escape_markup
from .naming import label_for, snake_to_camel
from .reference_data import countries, us_states
from .schema_model import FieldKind, FieldSpec, TableSchema

logger = logging.getLogger(__name__)

BOOLEAN_TRUE = "Y"
BOOLEAN_FALSE = "N"
OTHER_STATE = "OTHER"
DATE_HINT = "YYYY-MM-DD"


class BooleanWidget(str, Enum):
    RADIO_PAIR = "radio_pair"
    CHECKBOX = "checkbox"


class WidgetKind(str, Enum):
    TEXT_INPUT = "text_input"
    TEXTAREA = "textarea"
    SELECT = "select"
    RADIO_PAIR = "radio_pair"
    CHECKBOX = "checkbox"
    DATE_INPUT = "date_input"


class FormPolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    boolean_widget: BooleanWidget = BooleanWidget.RADIO_PAIR
    action_target: str
    include_error_region: bool = True

    @field_validator("action_target")
    @classmethod
    def _action_not_empty(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("action_target must not be empty")
        return value


class Widget(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: WidgetKind
    control_name: str
    options: Tuple[Tuple[str, str], ...] = ()


def widget_for(f: FieldSpec, p: FormPolicy) -> Widget:
    """Choose the control for a field by its kind."""
    name = snake_to_camel(f.name)

    if f.kind == FieldKind.BOOLEAN:
        kind = WidgetKind.RADIO_PAIR if p.boolean_widget == BooleanWidget.RADIO_PAIR else WidgetKind.CHECKBOX
        return Widget(kind=kind, control_name=name)
    if f.kind == FieldKind.ENUM:
        return Widget(kind=WidgetKind.SELECT, control_name=name, options=tuple((v, v) for v in f.values))
    if f.kind == FieldKind.COUNTRY:
        return Widget(kind=WidgetKind.SELECT, control_name=name, options=countries())
    if f.kind == FieldKind.STATE:
        # US states plus an escape entry for addresses outside the USA
        options = us_states() + ((OTHER_STATE, "Other (outside USA)"),)
        return Widget(kind=WidgetKind.SELECT, control_name=name, options=options)
    if f.kind == FieldKind.LONG_TEXT:
        return Widget(kind=WidgetKind.TEXTAREA, control_name=name)
    if f.kind == FieldKind.DATE:
        return Widget(kind=WidgetKind.DATE_INPUT, control_name=name)
    return Widget(kind=WidgetKind.TEXT_INPUT, control_name=name)


def _render_widget(f: FieldSpec, w: Widget) -> List[str]:
    name = w.control_name
    label = escape_markup(label_for(f.name))
    required = ' required="required"' if f.required else ""

    if w.kind == WidgetKind.RADIO_PAIR:
        return [
            f'<span class="label">{label}</span>',
            f'<input type="radio" id="{name}{BOOLEAN_TRUE}" name="{name}" value="{BOOLEAN_TRUE}"{required}/>',
            f'<label for="{name}{BOOLEAN_TRUE}">Yes</label>',
            f'<input type="radio" id="{name}{BOOLEAN_FALSE}" name="{name}" value="{BOOLEAN_FALSE}"/>',
            f'<label for="{name}{BOOLEAN_FALSE}">No</label>',
        ]

    lines = [f'<label for="{name}">{label}</label>']
    if w.kind == WidgetKind.CHECKBOX:
        lines.append(f'<input type="checkbox" id="{name}" name="{name}" value="{BOOLEAN_TRUE}"/>')
    elif w.kind == WidgetKind.TEXTAREA:
        lines.append(f'<textarea id="{name}" name="{name}" rows="6" cols="60"{required}></textarea>')
    elif w.kind == WidgetKind.SELECT:
        lines.append(f'<select id="{name}" name="{name}"{required}>')
        for value, text in w.options:
            lines.append(f'<option value="{escape_markup(value)}">{escape_markup(text)}</option>')
        lines.append("</select>")
    elif w.kind == WidgetKind.DATE_INPUT:
        lines.append(
            f'<input type="text" id="{name}" name="{name}" value="" '
            f'placeholder="{DATE_HINT}"{required}/>'
        )
    else:
        lines.append(f'<input type="text" id="{name}" name="{name}" value=""{required}/>')
    return lines


def render_form(s: TableSchema, p: FormPolicy, title: Optional[str] = None) -> str:
    """
    Render the HTML page for one schema.

    Returns:
        The document text, newline-terminated
    """
    page_title = escape_markup(title or label_for(s.table))
    lines = [
        "<!DOCTYPE html>",
        "<html>",
        "<head>",
        f"<title>{page_title}</title>",
        "</head>",
        "<body>",
    ]
    if p.include_error_region:
        lines.append('<div id="errors"></div>')
    lines.append(f'<form method="POST" action="{escape_markup(p.action_target)}">')

    for f in s.fields:
        lines.append('<div class="field">')
        lines.extend(_render_widget(f, widget_for(f, p)))
        lines.append("</div>")

    lines += [
        '<div class="submit">',
        '<input type="submit" value="Save"/>',
        "</div>",
        "</form>",
        "</body>",
        "</html>",
    ]
    logger.debug(f"Rendered form for {s.table} with {len(s.fields)} control groups")
    return "\n".join(lines) + "\n"
