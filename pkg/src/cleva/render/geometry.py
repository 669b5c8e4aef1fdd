"""Resolved compass geometry.

One canonical length unit equals one centimeter of the print figure.
Angles are degrees in mathematical convention (0 = east, counterclockwise
positive). The first inner dimension sits at six o'clock and the canonical
order runs clockwise, as does the outer sector order; sector 0 starts at
six o'clock.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import SchemaError
from ..model import (
    CompassDocument,
    InnerDimension,
    OuterMeasure,
    SupervisionMark,
    INNER_DIMENSIONS,
    OUTER_MEASURES,
    validate_document,
)
from .palette import PALETTE, PaletteColor, assign_palette


@dataclass(frozen=True)
class GeometryConstants:
    """Frozen layout constants of the compass figure."""

    inner_axes: int = 11
    outer_sectors: int = 15
    bands_per_sector: int = 5
    star_radius: float = 2.7
    ring_radius: float = 3.3
    strip_half_width: float = 0.125
    label_radius_low: float = 3.55
    label_radius_high: float = 3.8
    # Fraction of the star radius for the supervised marking circle; the
    # unsupervised circle is the star radius itself.
    supervised_fraction: float = 0.6

    @property
    def axis_step(self) -> float:
        return 360.0 / self.inner_axes

    @property
    def sector_step(self) -> float:
        return 360.0 / self.outer_sectors

    @property
    def rotation_offset(self) -> float:
        return 3.0 * self.axis_step - 90.0

    @property
    def supervised_radius(self) -> float:
        return self.supervised_fraction * self.star_radius

    @property
    def unsupervised_radius(self) -> float:
        return self.star_radius


CONSTANTS = GeometryConstants()

_MARK_RADII = {
    SupervisionMark.NONE: 0.0,
    SupervisionMark.SUPERVISED: CONSTANTS.supervised_radius,
    SupervisionMark.UNSUPERVISED: CONSTANTS.unsupervised_radius,
}


@dataclass(frozen=True)
class SectorArc:
    """Angular extent of one outer measure; end = start + sector step."""

    measure: OuterMeasure
    start_deg: float
    end_deg: float

    @property
    def center_deg(self) -> float:
        return (self.start_deg + self.end_deg) / 2.0


@dataclass(frozen=True)
class Tick:
    """One filled method band inside one sector."""

    entry_index: int
    measure: OuterMeasure
    band_index: int
    start_deg: float
    end_deg: float


@dataclass(frozen=True)
class RenderPlan:
    """Everything the emitters need, fully resolved and deterministic."""

    constants: GeometryConstants
    dimensions: tuple[InnerDimension, ...]
    axis_angles: tuple[float, ...]
    supervised_radius: float
    unsupervised_radius: float
    polygons: tuple[tuple[float, ...], ...]
    sectors: tuple[SectorArc, ...]
    bands_per_sector: int
    band_step: float
    ticks: tuple[Tick, ...]
    palette: tuple[PaletteColor, ...]
    entry_colors: tuple[PaletteColor, ...]
    legend: tuple[tuple[str, PaletteColor], ...] = field(default=())


def axis_angle(dimension_index: int, constants: GeometryConstants = CONSTANTS) -> float:
    """Angle of one inner axis. Axis positions are rotation_offset + k*A;
    position k = (8 - d) mod 11 places dimension 0 at six o'clock with the
    canonical order running clockwise."""
    k = (8 - dimension_index) % constants.inner_axes
    return (constants.rotation_offset + k * constants.axis_step) % 360.0


def sector_arc(measure_index: int, constants: GeometryConstants = CONSTANTS) -> tuple[float, float]:
    """Counterclockwise (start, end) of one outer sector; sector 0 begins
    at six o'clock and the order runs clockwise."""
    step = constants.sector_step
    start = (270.0 - (measure_index + 1) * step) % 360.0
    return start, start + step


def layout(doc: CompassDocument) -> RenderPlan:
    """Resolve a validated document into concrete geometry. Label content
    never influences anything but text placement."""
    report = validate_document(doc)
    if not report.ok:
        raise SchemaError("; ".join(str(v) for v in report.violations), report.violations)

    constants = CONSTANTS
    angles = tuple(axis_angle(d) for d in range(constants.inner_axes))

    polygons = []
    for entry in doc.entries:
        polygons.append(tuple(_MARK_RADII[entry.inner[dim]] for dim in INNER_DIMENSIONS))

    sectors = []
    for index, measure in enumerate(OUTER_MEASURES):
        start, end = sector_arc(index)
        sectors.append(SectorArc(measure=measure, start_deg=start, end_deg=end))

    # Five bands reproduce the print figure; a sixth entry narrows them.
    bands = max(constants.bands_per_sector, len(doc.entries))
    band_step = constants.sector_step / bands

    ticks = []
    for entry_index, entry in enumerate(doc.entries):
        for sector in sectors:
            if not entry.outer[sector.measure]:
                continue
            band_start = sector.end_deg - (entry_index + 1) * band_step
            ticks.append(
                Tick(
                    entry_index=entry_index,
                    measure=sector.measure,
                    band_index=entry_index,
                    start_deg=band_start,
                    end_deg=band_start + band_step,
                )
            )

    entry_colors = assign_palette(doc)
    legend = tuple((entry.label, color) for entry, color in zip(doc.entries, entry_colors))

    return RenderPlan(
        constants=constants,
        dimensions=INNER_DIMENSIONS,
        axis_angles=angles,
        supervised_radius=constants.supervised_radius,
        unsupervised_radius=constants.unsupervised_radius,
        polygons=tuple(polygons),
        sectors=tuple(sectors),
        bands_per_sector=bands,
        band_step=band_step,
        ticks=tuple(ticks),
        palette=PALETTE,
        entry_colors=entry_colors,
        legend=legend,
    )
