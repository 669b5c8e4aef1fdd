"""Standalone SVG emitter for a resolved render plan.

Output is deterministic: fixed draw order, fixed 4-decimal number
formatting, no timestamps. The canvas is 800x800 with the origin at the
center and 100 SVG units per geometry unit.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

from ..model import INNER_DISPLAY_NAMES, OUTER_DISPLAY_NAMES
from .geometry import RenderPlan

SIZE = 800
CENTER = 400.0
SCALE = 100.0

# Wedges for outer marks hug the ring: two strip half-widths deep.
RADIAL_PAD = 0.015
TICK_ANGLE_PAD_FRACTION = 0.08

DIMENSION_LABEL_RADIUS = 2.875
LABEL_WRAP_LIMIT = 24

POLYGON_FILL_OPACITY = "0.4"
POLYGON_STROKE_OPACITY = "0.3"


def _fmt(value: float) -> str:
    if abs(value) < 5e-5:
        value = 0.0
    return f"{value:.4f}"


def _point(radius_units: float, angle_deg: float) -> tuple[float, float]:
    rad = math.radians(angle_deg)
    return (
        CENTER + radius_units * SCALE * math.cos(rad),
        CENTER - radius_units * SCALE * math.sin(rad),
    )


def _arc(radius: float, a_from: float, a_to: float, sweep: int) -> str:
    x0, y0 = _point(radius, a_from)
    x1, y1 = _point(radius, a_to)
    r = _fmt(radius * SCALE)
    return (
        f"M {_fmt(x0)} {_fmt(y0)} A {r} {r} 0 0 {sweep} {_fmt(x1)} {_fmt(y1)}"
    )


def _annulus_wedge(r_inner: float, r_outer: float, a0: float, a1: float) -> str:
    """Closed path of the ring segment between two radii and two angles;
    a1 > a0 and the span stays below a half turn."""
    ox0, oy0 = _point(r_outer, a0)
    ox1, oy1 = _point(r_outer, a1)
    ix0, iy0 = _point(r_inner, a0)
    ix1, iy1 = _point(r_inner, a1)
    ro = _fmt(r_outer * SCALE)
    ri = _fmt(r_inner * SCALE)
    return (
        f"M {_fmt(ox0)} {_fmt(oy0)} "
        f"A {ro} {ro} 0 0 0 {_fmt(ox1)} {_fmt(oy1)} "
        f"L {_fmt(ix1)} {_fmt(iy1)} "
        f"A {ri} {ri} 0 0 1 {_fmt(ix0)} {_fmt(iy0)} Z"
    )


def wrap_label(text: str, limit: int = LABEL_WRAP_LIMIT) -> list[str]:
    """Split long labels at a word boundary into at most two lines."""
    if len(text) <= limit:
        return [text]
    words = text.split(" ")
    first: list[str] = []
    rest = list(words)
    while rest and len(" ".join(first + [rest[0]])) <= limit:
        first.append(rest.pop(0))
    if not first:
        first.append(rest.pop(0))
    if not rest:
        return [" ".join(first)]
    return [" ".join(first), " ".join(rest)]


def render_svg(plan: RenderPlan) -> bytes:
    """Emit the compass as standalone SVG bytes."""
    c = plan.constants
    band_inner = c.ring_radius - 2.0 * c.strip_half_width
    lines: list[str] = []
    out = lines.append

    out('<?xml version="1.0" encoding="UTF-8"?>')
    out(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="Helvetica, Arial, sans-serif">'
    )

    # Arc paths the curved measure labels ride on. Lower-half labels run
    # counterclockwise so the glyphs stay upright.
    out("<defs>")
    for index, sector in enumerate(plan.sectors):
        radius = c.label_radius_low if index % 2 == 0 else c.label_radius_high
        center = sector.center_deg
        if math.sin(math.radians(center)) < 0.0:
            path = _arc(radius, sector.start_deg, sector.end_deg, sweep=0)
        else:
            path = _arc(radius, sector.end_deg, sector.start_deg, sweep=1)
        out(f'<path id="label-arc-{index}" d="{path}" fill="none"/>')
    out("</defs>")

    out(f'<rect class="background" x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#FFFFFF"/>')

    for angle in plan.axis_angles:
        x, y = _point(c.star_radius, angle)
        out(
            f'<line class="axis" x1="{_fmt(CENTER)}" y1="{_fmt(CENTER)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(y)}" stroke="#A0A0A0" stroke-width="1"/>'
        )

    for radius in (plan.supervised_radius, plan.unsupervised_radius):
        out(
            f'<circle class="marking-circle" cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" '
            f'r="{_fmt(radius * SCALE)}" fill="none" stroke="#C0C0C0" stroke-width="1"/>'
        )

    for radius in (band_inner, c.ring_radius):
        out(
            f'<circle class="ring" cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" '
            f'r="{_fmt(radius * SCALE)}" fill="none" stroke="#B4B4B4" stroke-width="1"/>'
        )

    for dim_index, dimension in enumerate(plan.dimensions):
        angle = plan.axis_angles[dim_index]
        x, y = _point(DIMENSION_LABEL_RADIUS, angle)
        cos_a = math.cos(math.radians(angle))
        if cos_a > 0.25:
            anchor = "start"
        elif cos_a < -0.25:
            anchor = "end"
        else:
            anchor = "middle"
        label = escape(INNER_DISPLAY_NAMES[dimension])
        out(
            f'<text class="dimension-label" x="{_fmt(x)}" y="{_fmt(y + 4)}" '
            f'font-size="13" fill="#202020" text-anchor="{anchor}">{label}</text>'
        )

    for index, sector in enumerate(plan.sectors):
        radius = c.label_radius_low if index % 2 == 0 else c.label_radius_high
        sx0, sy0 = _point(band_inner, sector.start_deg)
        sx1, sy1 = _point(c.ring_radius, sector.start_deg)
        strip = _annulus_wedge(
            radius - c.strip_half_width,
            radius + c.strip_half_width,
            sector.start_deg,
            sector.end_deg,
        )
        name = escape(OUTER_DISPLAY_NAMES[sector.measure])
        out(f'<g class="sector" data-measure={quoteattr(sector.measure.value)}>')
        out(
            f'<line class="sector-separator" x1="{_fmt(sx0)}" y1="{_fmt(sy0)}" '
            f'x2="{_fmt(sx1)}" y2="{_fmt(sy1)}" stroke="#C8C8C8" stroke-width="1"/>'
        )
        out(f'<path class="sector-strip" d="{strip}" fill="#F0F0F0"/>')
        out(
            f'<text class="sector-label" font-size="11" fill="#404040">'
            f'<textPath href="#label-arc-{index}" startOffset="50%" '
            f'text-anchor="middle" dominant-baseline="middle">{name}</textPath></text>'
        )
        out("</g>")

    for entry_index, radii in enumerate(plan.polygons):
        color = plan.entry_colors[entry_index]
        points = []
        for dim_index, radius in enumerate(radii):
            x, y = _point(radius, plan.axis_angles[dim_index])
            points.append(f"{_fmt(x)},{_fmt(y)}")
        out(
            f'<polygon class="entry-polygon" points="{" ".join(points)}" '
            f'fill="{color.fill_hex}" fill-opacity="{POLYGON_FILL_OPACITY}" '
            f'stroke="{color.stroke_hex}" stroke-opacity="{POLYGON_STROKE_OPACITY}" '
            f'stroke-width="2"/>'
        )
        for dim_index, radius in enumerate(radii):
            if radius <= 0.0:
                continue
            x, y = _point(radius, plan.axis_angles[dim_index])
            out(
                f'<circle class="entry-vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" '
                f'fill="{color.stroke_hex}" fill-opacity="0.9"/>'
            )

    angle_pad = TICK_ANGLE_PAD_FRACTION * plan.band_step
    for tick in plan.ticks:
        color = plan.entry_colors[tick.entry_index]
        wedge = _annulus_wedge(
            band_inner + RADIAL_PAD,
            c.ring_radius - RADIAL_PAD,
            tick.start_deg + angle_pad,
            tick.end_deg - angle_pad,
        )
        out(
            f'<path class="tick" data-measure={quoteattr(tick.measure.value)} '
            f'd="{wedge}" fill="{color.fill_hex}" fill-opacity="0.85"/>'
        )

    for legend_index, (label, color) in enumerate(plan.legend):
        x0 = 16.0
        y0 = 20.0 + legend_index * 40.0
        pieces = wrap_label(label)
        out('<g class="legend-item">')
        out(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="18" height="18" '
            f'fill="{color.fill_hex}" fill-opacity="{POLYGON_FILL_OPACITY}" '
            f'stroke="{color.stroke_hex}" stroke-width="1"/>'
        )
        for line_index, piece in enumerate(pieces):
            out(
                f'<text class="legend-label" x="{_fmt(x0 + 26.0)}" '
                f'y="{_fmt(y0 + 13.0 + line_index * 15.0)}" font-size="13" '
                f'fill="#202020">{escape(piece)}</text>'
            )
        out("</g>")

    out("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
