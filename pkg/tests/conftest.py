from __future__ import annotations

import random

import pytest

from cleva.model import (
    CompassDocument,
    CompassEntry,
    INNER_DIMENSIONS,
    OUTER_MEASURES,
    PROVENANCE_VALUES,
    SupervisionMark,
)

MARKS = tuple(SupervisionMark)


def random_entry(rng: random.Random, color_slot: int) -> CompassEntry:
    label_length = rng.randint(1, 40)
    label = "".join(rng.choice("abcdefgh XYZ&_%#{}~^\\ (),.") for _ in range(label_length))
    label = label.strip() or "m"
    inner = {dim: rng.choice(MARKS) for dim in INNER_DIMENSIONS}
    outer = {measure: rng.random() < 0.5 for measure in OUTER_MEASURES}
    provenance = {}
    if rng.random() < 0.3:
        keys = rng.sample([d.value for d in INNER_DIMENSIONS], rng.randint(1, 4))
        provenance = {key: rng.choice(PROVENANCE_VALUES) for key in keys}
    return CompassEntry(
        label=label, color_slot=color_slot, inner=inner, outer=outer, provenance=provenance
    )


def random_document(rng: random.Random) -> CompassDocument:
    count = rng.randint(0, 6)
    slots = rng.sample(range(6), count)
    return CompassDocument(entries=tuple(random_entry(rng, slot) for slot in slots))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC1E7A)
