"""Bundled descriptors for the five continual-learning methods shipped
with the tool, plus the registry of which marks are backed by published
prose. Everything not listed in the attested registries defaults to
none/False and is flagged "unattested" in the descriptor provenance so
that figure data is never invented.
"""

from __future__ import annotations

from importlib import resources

from .model import (
    CompassDocument,
    CompassEntry,
    InnerDimension as D,
    OuterMeasure as M,
    SupervisionMark as S,
    INNER_DIMENSIONS,
    OUTER_MEASURES,
    parse_entry,
    serialize_entry,
)

METHOD_IDS = (
    "osaka-caccia-2020",
    "fedweit-yoon-2021",
    "agem-chaudhry-2019",
    "vcl-nguyen-2018",
    "ocdvae-mundt-2020",
)

METHOD_LABELS = {
    "osaka-caccia-2020": "OSAKA (Caccia et al., 2020)",
    "fedweit-yoon-2021": "FedWeIT (Yoon et al., 2021)",
    "agem-chaudhry-2019": "A-GEM (Chaudhry et al., 2019)",
    "vcl-nguyen-2018": "VCL (Nguyen et al., 2018)",
    "ocdvae-mundt-2020": "OCDVAE (Mundt et al., 2020)",
}

# Inner marks with direct prose backing, per method. These are the triples
# the fixture-fidelity tests assert.
ATTESTED_INNER_MARKS: dict[str, dict[D, S]] = {
    "osaka-caccia-2020": {
        D.TASK_AGNOSTIC: S.SUPERVISED,
        D.OPEN_WORLD: S.SUPERVISED,
        D.ONLINE: S.SUPERVISED,
    },
    "fedweit-yoon-2021": {
        D.FEDERATED: S.UNSUPERVISED,
        D.MULTIPLE_MODELS: S.SUPERVISED,
    },
    "agem-chaudhry-2019": {
        D.TASK_AGNOSTIC: S.SUPERVISED,
        D.EPISODIC_MEMORY: S.UNSUPERVISED,
    },
    "vcl-nguyen-2018": {
        D.UNCERTAINTY: S.UNSUPERVISED,
        D.GENERATIVE: S.UNSUPERVISED,
        D.EPISODIC_MEMORY: S.UNSUPERVISED,
        D.MULTIPLE_MODELS: S.SUPERVISED,
    },
    "ocdvae-mundt-2020": {
        D.TASK_ORDER_DISCOVERY: S.SUPERVISED,
        D.ACTIVE_DATA_QUERY: S.SUPERVISED,
        D.MULTIPLE_MODALITIES: S.SUPERVISED,
        D.OPEN_WORLD: S.SUPERVISED,
        D.EPISODIC_MEMORY: S.SUPERVISED,
    },
}

# VCL's use of multiple models is backed, but the supervision level of the
# required model-indexing mechanism is a judgement call.
LEVEL_UNATTESTED: dict[str, tuple[D, ...]] = {
    "vcl-nguyen-2018": (D.MULTIPLE_MODELS,),
}

ATTESTED_OUTER_MARKS: dict[str, tuple[M, ...]] = {
    "osaka-caccia-2020": (),
    "fedweit-yoon-2021": (M.COMMUNICATION, M.PARAMETERS, M.MEMORY),
    "agem-chaudhry-2019": (),
    "vcl-nguyen-2018": (),
    "ocdvae-mundt-2020": (),
}

# Legend / palette order of the shipped five-method compass.
METHOD_COLOR_SLOTS = {method_id: slot for slot, method_id in enumerate(METHOD_IDS)}


def build_bundled_entry(method_id: str) -> CompassEntry:
    """Construct a bundled method entry from the attested-mark registries.
    The shipped JSON files are canonical serializations of these values."""
    attested_inner = ATTESTED_INNER_MARKS[method_id]
    attested_outer = ATTESTED_OUTER_MARKS[method_id]
    level_unattested = LEVEL_UNATTESTED.get(method_id, ())

    provenance: dict[str, str] = {}
    for dim in INNER_DIMENSIONS:
        if dim in level_unattested:
            provenance[dim.value] = "level-unattested"
        elif dim in attested_inner:
            provenance[dim.value] = "attested"
        else:
            provenance[dim.value] = "unattested"
    for measure in OUTER_MEASURES:
        provenance[measure.value] = (
            "attested" if measure in attested_outer else "unattested"
        )

    return CompassEntry.build(
        label=METHOD_LABELS[method_id],
        color_slot=METHOD_COLOR_SLOTS[method_id],
        inner_marks=attested_inner,
        outer_marks=attested_outer,
        provenance=provenance,
    )


def bundled_entry_text(method_id: str) -> str:
    """Raw UTF-8 text of the shipped single-entry descriptor file."""
    if method_id not in METHOD_IDS:
        raise KeyError(method_id)
    path = resources.files("cleva").joinpath(f"data/methods/{method_id}.json")
    return path.read_text(encoding="utf-8")


def bundled_entry(method_id: str) -> CompassEntry:
    """Parse the shipped descriptor file for one bundled method."""
    return parse_entry(bundled_entry_text(method_id))


def five_method_document() -> CompassDocument:
    """The five bundled methods as one document, in legend order."""
    return CompassDocument(entries=tuple(bundled_entry(m) for m in METHOD_IDS))


def write_bundled_files(directory) -> None:
    """Regenerate the shipped descriptor files from the registries.
    Maintainer utility; output is canonical and deterministic."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for method_id in METHOD_IDS:
        text = serialize_entry(build_bundled_entry(method_id))
        (out / f"{method_id}.json").write_text(text, encoding="utf-8")
