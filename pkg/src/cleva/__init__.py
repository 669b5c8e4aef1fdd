"""Toolchain for machine-readable continual-learning method descriptors:
schema and validation, evaluation measures over experiment logs,
deterministic SVG/TikZ compass rendering, a methods-repository sync
client, a CLI, and a local HTTP API for the interactive builder.
"""

from .model import (
    CompassDocument,
    CompassEntry,
    InnerDimension,
    OuterMeasure,
    SupervisionMark,
    ValidationReport,
    Violation,
    diff_entries,
    parse_document,
    parse_entry,
    serialize_document,
    serialize_entry,
    validate_document,
    validate_entry,
)
from .render import layout, render_svg, render_tikz
from .tooltips import TOOLTIPS, get_tooltip

__version__ = "0.1.0"

__all__ = [
    "CompassDocument",
    "CompassEntry",
    "InnerDimension",
    "OuterMeasure",
    "SupervisionMark",
    "ValidationReport",
    "Violation",
    "diff_entries",
    "parse_document",
    "parse_entry",
    "serialize_document",
    "serialize_entry",
    "validate_document",
    "validate_entry",
    "layout",
    "render_svg",
    "render_tikz",
    "TOOLTIPS",
    "get_tooltip",
    "__version__",
]
