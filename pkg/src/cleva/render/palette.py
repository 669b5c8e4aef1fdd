"""The fixed six-color palette.

Slots 0-4 carry the colors of the shipped five-method compass in legend
order; slot 5 adds a violet chosen for hue distance from the other five.
Hex values are the RGB evaluations of the TikZ color mixes so SVG and
TikZ output stay in step.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SchemaError
from ..model import CompassDocument, validate_document


@dataclass(frozen=True)
class PaletteColor:
    name: str
    fill_hex: str
    stroke_hex: str
    tikz_fill: str
    tikz_stroke: str


PALETTE: tuple[PaletteColor, ...] = (
    PaletteColor("deep_blue", "#0000B3", "#0000B3", "blue!70!black", "blue!70!black"),
    PaletteColor("magenta", "#FF00FF", "#FF00FF", "magenta", "magenta"),
    PaletteColor("dark_green", "#008000", "#008000", "green!50!black", "green!50!black"),
    PaletteColor("orange", "#FF9933", "#E67300", "orange!80", "orange!90!black"),
    PaletteColor("dark_cyan", "#00CCCC", "#00E6E6", "cyan!80!black", "cyan!90!black"),
    PaletteColor("violet", "#800080", "#800080", "violet", "violet"),
)


def palette_color(slot: int) -> PaletteColor:
    if not 0 <= slot < len(PALETTE):
        raise SchemaError(f"color slot must be in [0, {len(PALETTE) - 1}], got {slot}")
    return PALETTE[slot]


def assign_palette(doc: CompassDocument) -> tuple[PaletteColor, ...]:
    """Colors for the document's entries in document order."""
    report = validate_document(doc)
    if not report.ok:
        raise SchemaError("; ".join(str(v) for v in report.violations), report.violations)
    return tuple(palette_color(entry.color_slot) for entry in doc.entries)
