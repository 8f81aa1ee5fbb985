"""
Centralized configuration management with environment variable support.
All tunable constants are configurable via environment variables.
"""
import os
from datetime import date
from typing import Mapping, Optional

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SEQUENCE_TOKEN = "xxxID.nextval"
DEFAULT_ALLOWED_CHARS = "-a-zA-Z0-9_.@"
BOOLEAN_WIDGETS = ("radio", "checkbox")


class Config:
    """Toolkit configuration with environment variable support."""

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        env = os.environ if environ is None else environ

        # Toolkit XML config location
        self.CONFIG_PATH: Optional[str] = env.get("SCAFFOLD_CONFIG") or None

        # Logging
        self.LOG_LEVEL: str = env.get("SCAFFOLD_LOG_LEVEL", "WARNING").upper()

        # BeanHelper
        self.SEQUENCE_TOKEN: str = env.get("SCAFFOLD_SEQUENCE_TOKEN", DEFAULT_SEQUENCE_TOKEN)

        # Validation
        self.DATE_OLDEST: str = env.get("SCAFFOLD_DATE_OLDEST", "1900-01-01")
        self.DATE_NEWEST: str = env.get("SCAFFOLD_DATE_NEWEST", "2099-12-31")
        self.ALLOWED_CHARS: str = env.get("SCAFFOLD_ALLOWED_CHARS", DEFAULT_ALLOWED_CHARS)

        # Form generation
        self.FORM_ACTION: str = env.get("SCAFFOLD_FORM_ACTION", "")
        self.BOOLEAN_WIDGET: str = env.get("SCAFFOLD_BOOLEAN_WIDGET", "radio").lower()

    def validate(self) -> None:
        """Validate configuration values."""
        try:
            oldest = date.fromisoformat(self.DATE_OLDEST)
            newest = date.fromisoformat(self.DATE_NEWEST)
        except ValueError as e:
            raise ValueError(f"Date window settings must be YYYY-MM-DD: {e}") from e
        if oldest > newest:
            raise ValueError(
                f"SCAFFOLD_DATE_OLDEST ({self.DATE_OLDEST}) is after "
                f"SCAFFOLD_DATE_NEWEST ({self.DATE_NEWEST})"
            )
        if self.BOOLEAN_WIDGET not in BOOLEAN_WIDGETS:
            raise ValueError(f"SCAFFOLD_BOOLEAN_WIDGET must be one of {BOOLEAN_WIDGETS}")
        if not self.SEQUENCE_TOKEN.strip():
            raise ValueError("SCAFFOLD_SEQUENCE_TOKEN must not be empty")

    def apply_document(self, root) -> "Config":
        """
        Overlay settings declared in a parsed toolkit XML config.

        Args:
            root: ConfigNode returned by config_reader.parse_config

        Returns:
            self, for chaining
        """
        from ..engine.config_reader import lookup

        overrides = {
            "SEQUENCE_TOKEN": "scaffold.beanhelper.sequence",
            "DATE_OLDEST": "scaffold.validate.oldest",
            "DATE_NEWEST": "scaffold.validate.newest",
            "ALLOWED_CHARS": "scaffold.validate.allow",
            "FORM_ACTION": "scaffold.form.action",
            "BOOLEAN_WIDGET": "scaffold.form.boolean",
        }
        for attr, path in overrides.items():
            value = lookup(root, path)
            if value is not None:
                setattr(self, attr, value)
        self.BOOLEAN_WIDGET = self.BOOLEAN_WIDGET.lower()
        return self

    @property
    def data_dir(self) -> str:
        """Directory holding the shipped reference tables."""
        return os.path.dirname(os.path.abspath(__file__))


# Global config instance
config = Config()
