from . import main
from .main import cli, run

__all__ = ["cli", "main", "run"]
