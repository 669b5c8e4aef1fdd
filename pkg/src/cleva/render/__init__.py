"""Deterministic compass rendering: geometry resolution plus SVG and
TikZ emitters."""

from .geometry import CONSTANTS, GeometryConstants, RenderPlan, SectorArc, Tick, layout
from .palette import PALETTE, PaletteColor, assign_palette, palette_color
from .svg import render_svg
from .tikz import escape_latex, render_tikz

__all__ = [
    "CONSTANTS",
    "GeometryConstants",
    "RenderPlan",
    "SectorArc",
    "Tick",
    "layout",
    "PALETTE",
    "PaletteColor",
    "assign_palette",
    "palette_color",
    "render_svg",
    "escape_latex",
    "render_tikz",
]
