"""TikZ/LaTeX emitter.

Produces a self-contained figure fragment meant to be \\input inside a
document: geometry constants, styles, the compass picture, and a legend
macro, all wrapped in a group so repeated inclusion stays safe. Output is
deterministic and golden-file tested byte for byte.
"""

from __future__ import annotations

import math

from ..errors import EscapeError
from ..model import (
    CompassDocument,
    INNER_DISPLAY_NAMES,
    OUTER_DISPLAY_NAMES,
)
from .geometry import RenderPlan, layout
from .svg import DIMENSION_LABEL_RADIUS, RADIAL_PAD, TICK_ANGLE_PAD_FRACTION

_ESCAPES = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def escape_latex(text: str) -> str:
    """Escape label text for LaTeX; control characters have no defined
    escape and are rejected."""
    pieces = []
    for ch in text:
        if ord(ch) < 0x20 or ord(ch) == 0x7F:
            raise EscapeError(f"label contains control character U+{ord(ch):04X}")
        pieces.append(_ESCAPES.get(ch, ch))
    return "".join(pieces)


def _fmt(value: float) -> str:
    if abs(value) < 5e-5:
        value = 0.0
    return f"{value:.4f}"


def _mark_factor(radius: float, star_radius: float) -> str:
    return _fmt(radius / star_radius)


def _constants_block(plan: RenderPlan) -> list[str]:
    c = plan.constants
    band_inner = c.ring_radius - 2.0 * c.strip_half_width
    return [
        "% Geometry constants.",
        f"\\newcommand{{\\cD}}{{{c.inner_axes}}}% inner axes",
        f"\\newcommand{{\\cEV}}{{{c.outer_sectors}}}% outer sectors",
        f"\\newcommand{{\\cM}}{{{plan.bands_per_sector}}}% method bands per sector",
        f"\\newcommand{{\\cA}}{{{_fmt(c.axis_step)}}}% 360/\\cD",
        f"\\newcommand{{\\cB}}{{{_fmt(c.sector_step)}}}% 360/\\cEV",
        f"\\newcommand{{\\cSub}}{{{_fmt(plan.band_step)}}}% \\cB/\\cM",
        f"\\newcommand{{\\cRot}}{{{_fmt(c.rotation_offset)}}}% 3*\\cA - 90",
        "\\newdimen\\cR",
        f"\\cR={c.star_radius}cm% inner star radius",
        "\\newdimen\\cL",
        f"\\cL={c.ring_radius}cm% outer ring radius",
        "\\newdimen\\cBandIn",
        f"\\cBandIn={_fmt(band_inner)}cm% ring inner edge: \\cL minus two strip half-widths",
        f"\\newcommand{{\\cStrip}}{{{_fmt(c.strip_half_width)}cm}}% label strip half-width",
    ]


def _styles_block(plan: RenderPlan) -> list[str]:
    lines = [
        "\\tikzset{",
        "  cleva axis/.style={draw=black!40, line width=0.4pt},",
        "  cleva circle/.style={draw=black!25, line width=0.4pt},",
        "  cleva ring/.style={draw=black!30, line width=0.4pt},",
        "  cleva strip/.style={draw=none, fill=black!06},",
        "  cleva label/.style={font=\\tiny, text=black!85},",
    ]
    for index, color in enumerate(plan.entry_colors):
        lines.append(
            f"  shell{index}/.style={{draw={color.tikz_stroke}, fill={color.tikz_fill}, "
            "fill opacity=0.4, opacity=0.3},"
        )
        lines.append(
            f"  mark{index}/.style={{draw={color.tikz_stroke}, fill={color.tikz_fill}, "
            "fill opacity=0.85},"
        )
    lines.append("}")
    return lines


def _anchor(angle_deg: float) -> str:
    cos_a = math.cos(math.radians(angle_deg))
    if cos_a > 0.25:
        return "west"
    if cos_a < -0.25:
        return "east"
    return "center"


def _legend_block(plan: RenderPlan) -> list[str]:
    lines = ["% Legend macro.", "\\newcommand{\\clevaCompassLegend}{%"]
    if not plan.legend:
        lines.append("}")
        return lines
    rows = (len(plan.legend) + 2) // 3
    height = 0.2 + 0.4 * rows
    lines.append("\\begin{tikzpicture}")
    lines.append(
        f"\\draw[draw=black!05] (-0.2,{_fmt(-height)}) rectangle (9.8,0.0);"
    )
    for index, (label, color) in enumerate(plan.legend):
        column = index % 3
        row = index // 3
        x = column * 3.3
        y = -0.2 - row * 0.4
        lines.append(
            f"\\draw[fill={color.tikz_fill}, fill opacity=0.3, draw={color.tikz_stroke}] "
            f"({_fmt(x)},{_fmt(y - 0.1)}) rectangle ({_fmt(x + 0.2)},{_fmt(y + 0.1)});"
        )
        lines.append(
            f"\\node[anchor=west, font=\\tiny] at ({_fmt(x + 0.25)},{_fmt(y)}) "
            f"{{{escape_latex(label)}}};"
        )
    lines.append("\\end{tikzpicture}}")
    return lines


def render_tikz(doc: CompassDocument) -> str:
    """Emit the compass as a LaTeX fragment."""
    plan = layout(doc)
    c = plan.constants
    band_inner = c.ring_radius - 2.0 * c.strip_half_width

    lines: list[str] = []
    out = lines.append
    out("% Compass figure fragment (generated; do not edit by hand).")
    out("% Requires \\usepackage{tikz} and \\usetikzlibrary{decorations.text, arrows.meta}.")
    out("\\begingroup")
    lines.extend(_constants_block(plan))
    lines.extend(_styles_block(plan))
    lines.extend(_legend_block(plan))

    out("\\begin{tikzpicture}")
    out("% Inner axes and marking circles.")
    angle_list = ",".join(_fmt(a) for a in plan.axis_angles)
    out(f"\\foreach \\ang in {{{angle_list}}}{{")
    out("  \\draw[cleva axis] (0,0) -- (\\ang:\\cR);")
    out("}")
    out(f"\\draw[cleva circle] (0,0) circle ({_fmt(c.supervised_fraction)}\\cR);")
    out("\\draw[cleva circle] (0,0) circle (\\cR);")

    out("% Dimension labels.")
    for dim_index, dimension in enumerate(plan.dimensions):
        angle = plan.axis_angles[dim_index]
        out(
            f"\\node[cleva label, anchor={_anchor(angle)}] at "
            f"({_fmt(angle)}:{_fmt(DIMENSION_LABEL_RADIUS)}cm) "
            f"{{{INNER_DISPLAY_NAMES[dimension]}}};"
        )

    out("% Outer ring and sector separators.")
    out("\\draw[cleva ring] (0,0) circle (\\cBandIn);")
    out("\\draw[cleva ring] (0,0) circle (\\cL);")
    for sector in plan.sectors:
        out(
            f"\\draw[cleva ring] ({_fmt(sector.start_deg)}:\\cBandIn) -- "
            f"({_fmt(sector.start_deg)}:\\cL);"
        )

    out("% Measure label strips.")
    for index, sector in enumerate(plan.sectors):
        radius = c.label_radius_low if index % 2 == 0 else c.label_radius_high
        r = _fmt(radius)
        r_lo = _fmt(radius - c.strip_half_width)
        r_hi = _fmt(radius + c.strip_half_width)
        a0 = _fmt(sector.start_deg)
        a1 = _fmt(sector.end_deg)
        out(
            f"\\draw[cleva strip] ({a0}:{r_lo}cm) arc ({a0}:{a1}:{r_lo}cm)"
            f" -- ({a1}:{r}cm) -- ({a1}:{r_hi}cm) arc ({a1}:{a0}:{r_hi}cm)"
            f" -- ({a0}:{r}cm) -- cycle;"
        )
        name = OUTER_DISPLAY_NAMES[sector.measure]
        if math.sin(math.radians(sector.center_deg)) < 0.0:
            t0, t1 = a0, a1
        else:
            t0, t1 = a1, a0
        out(
            "\\path[decoration={text along path, "
            f"text={{|\\tiny|{name}}}, text align={{align=center}}, raise=-0.3ex}}, "
            f"decorate] ({t0}:{r}cm) arc ({t0}:{t1}:{r}cm);"
        )

    for entry_index, radii in enumerate(plan.polygons):
        out(f"% Entry {entry_index} star polygon and marks.")
        coords = []
        for dim_index, radius in enumerate(radii):
            factor = _mark_factor(radius, c.star_radius)
            coords.append(f"({_fmt(plan.axis_angles[dim_index])}:{factor}\\cR)")
        out(f"\\draw[shell{entry_index}] " + " -- ".join(coords) + " -- cycle;")
        for dim_index, radius in enumerate(radii):
            if radius <= 0.0:
                continue
            factor = _mark_factor(radius, c.star_radius)
            out(
                f"\\fill[mark{entry_index}] "
                f"({_fmt(plan.axis_angles[dim_index])}:{factor}\\cR) circle (1.4pt);"
            )

    if plan.ticks:
        out("% Outer-level marks.")
    angle_pad = TICK_ANGLE_PAD_FRACTION * plan.band_step
    r_in = _fmt(band_inner + RADIAL_PAD)
    r_out = _fmt(c.ring_radius - RADIAL_PAD)
    for tick in plan.ticks:
        a0 = _fmt(tick.start_deg + angle_pad)
        a1 = _fmt(tick.end_deg - angle_pad)
        out(
            f"\\fill[mark{tick.entry_index}] ({a0}:{r_in}cm) arc ({a0}:{a1}:{r_in}cm)"
            f" -- ({a1}:{r_out}cm) arc ({a1}:{a0}:{r_out}cm) -- cycle;"
        )

    out("\\end{tikzpicture}")
    out("")
    out("\\par\\medskip")
    out("\\clevaCompassLegend")
    out("\\endgroup")
    return "\n".join(lines) + "\n"
