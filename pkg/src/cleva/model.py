"""Canonical compass schema: enumerations, descriptor types, parsing,
validation, serialization, and entry diffing.

The descriptor file format is UTF-8 JSON. A document holds up to six
entries; each entry carries a total map over the 11 inner dimensions
(tri-state supervision) and the 15 outer measures (booleans). Parsing is
strict by default: unknown fields are schema violations unless the caller
opts into lenient mode, where they are downgraded to warnings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

from .errors import JsonSyntaxError, SchemaError, VersionError

FORMAT_VERSION = "1"
MAX_ENTRIES = 6
MAX_LABEL_LENGTH = 200


class InnerDimension(str, Enum):
    """The 11 inner-level axes, in canonical clockwise order starting at
    the six o'clock position."""

    TASK_AGNOSTIC = "task_agnostic"
    TASK_ORDER_DISCOVERY = "task_order_discovery"
    ACTIVE_DATA_QUERY = "active_data_query"
    MULTIPLE_MODALITIES = "multiple_modalities"
    OPEN_WORLD = "open_world"
    ONLINE = "online"
    FEDERATED = "federated"
    MULTIPLE_MODELS = "multiple_models"
    UNCERTAINTY = "uncertainty"
    GENERATIVE = "generative"
    EPISODIC_MEMORY = "episodic_memory"


class SupervisionMark(str, Enum):
    """Tri-state mark for an inner dimension. Supervised maps to the inner
    marking circle of the star plot, unsupervised to the outer one."""

    NONE = "none"
    SUPERVISED = "supervised"
    UNSUPERVISED = "unsupervised"


class OuterMeasure(str, Enum):
    """The 15 outer-level measures, in canonical order."""

    DATA_PER_TASK = "data_per_task"
    TASK_ORDER = "task_order"
    PER_TASK_METRICS = "per_task_metrics"
    OPTIMIZATION_STEPS = "optimization_steps"
    GENERATED_DATA = "generated_data"
    STORED_DATA = "stored_data"
    PARAMETERS = "parameters"
    MEMORY = "memory"
    COMPUTE_TIME = "compute_time"
    MAC_OPERATIONS = "mac_operations"
    COMMUNICATION = "communication"
    FORGETTING = "forgetting"
    FORWARD_TRANSFER = "forward_transfer"
    BACKWARD_TRANSFER = "backward_transfer"
    OPENNESS = "openness"


INNER_DIMENSIONS: tuple[InnerDimension, ...] = tuple(InnerDimension)
OUTER_MEASURES: tuple[OuterMeasure, ...] = tuple(OuterMeasure)

INNER_DISPLAY_NAMES: dict[InnerDimension, str] = {
    InnerDimension.TASK_AGNOSTIC: "Task agnostic",
    InnerDimension.TASK_ORDER_DISCOVERY: "Task order discovery",
    InnerDimension.ACTIVE_DATA_QUERY: "Active data query",
    InnerDimension.MULTIPLE_MODALITIES: "Multiple modalities",
    InnerDimension.OPEN_WORLD: "Open world",
    InnerDimension.ONLINE: "Online",
    InnerDimension.FEDERATED: "Federated",
    InnerDimension.MULTIPLE_MODELS: "Multiple models",
    InnerDimension.UNCERTAINTY: "Uncertainty",
    InnerDimension.GENERATIVE: "Generative",
    InnerDimension.EPISODIC_MEMORY: "Episodic memory",
}

OUTER_DISPLAY_NAMES: dict[OuterMeasure, str] = {
    OuterMeasure.DATA_PER_TASK: "Data per task",
    OuterMeasure.TASK_ORDER: "Task order",
    OuterMeasure.PER_TASK_METRICS: "Per task metrics",
    OuterMeasure.OPTIMIZATION_STEPS: "Optimization steps",
    OuterMeasure.GENERATED_DATA: "Generated data",
    OuterMeasure.STORED_DATA: "Stored data",
    OuterMeasure.PARAMETERS: "Parameters",
    OuterMeasure.MEMORY: "Memory",
    OuterMeasure.COMPUTE_TIME: "Compute time",
    OuterMeasure.MAC_OPERATIONS: "MAC operations",
    OuterMeasure.COMMUNICATION: "Communication",
    OuterMeasure.FORGETTING: "Forgetting",
    OuterMeasure.FORWARD_TRANSFER: "Forward transfer",
    OuterMeasure.BACKWARD_TRANSFER: "Backward transfer",
    OuterMeasure.OPENNESS: "Openness",
}

# Per-field provenance recorded in bundled descriptors: whether a mark is
# backed by published prose, or merely a default. "level-unattested" means
# the mark itself is backed but its supervision level was a judgement call.
PROVENANCE_VALUES = ("attested", "unattested", "level-unattested")

_INNER_KEYS = frozenset(d.value for d in INNER_DIMENSIONS)
_OUTER_KEYS = frozenset(m.value for m in OUTER_MEASURES)
_PROVENANCE_KEYS = _INNER_KEYS | _OUTER_KEYS

_ENTRY_FIELDS = ("label", "color_slot", "inner", "outer", "provenance")
_DOCUMENT_FIELDS = ("version", "entries")


@dataclass(frozen=True)
class Violation:
    """One schema violation, located by a dotted field path."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Zero or more violations; an empty report means the value is valid."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def paths(self) -> tuple[str, ...]:
        return tuple(v.path for v in self.violations)

    def prefixed(self, prefix: str) -> ValidationReport:
        return ValidationReport(
            tuple(Violation(f"{prefix}{v.path}", v.message) for v in self.violations)
        )


@dataclass(frozen=True)
class CompassEntry:
    """One method's descriptor: label, palette slot, and total inner/outer
    mark maps. Instances are plain values; use validate_entry to check
    invariants."""

    label: str
    color_slot: int
    inner: Mapping[InnerDimension, SupervisionMark]
    outer: Mapping[OuterMeasure, bool]
    provenance: Mapping[str, str] = field(default_factory=dict)

    @staticmethod
    def build(
        label: str,
        color_slot: int,
        inner_marks: Mapping[InnerDimension, SupervisionMark] | None = None,
        outer_marks: Iterable[OuterMeasure] = (),
        provenance: Mapping[str, str] | None = None,
    ) -> CompassEntry:
        """Construct an entry from sparse marks, filling the remaining
        dimensions with none/False so the maps are total."""
        inner = {d: SupervisionMark.NONE for d in INNER_DIMENSIONS}
        inner.update(inner_marks or {})
        outer = {m: False for m in OUTER_MEASURES}
        for m in outer_marks:
            outer[m] = True
        return CompassEntry(
            label=label,
            color_slot=color_slot,
            inner=inner,
            outer=outer,
            provenance=dict(provenance or {}),
        )


@dataclass(frozen=True)
class CompassDocument:
    """An ordered set of at most six entries plus the format version."""

    version: str = FORMAT_VERSION
    entries: tuple[CompassEntry, ...] = ()


def validate_entry(entry: CompassEntry) -> ValidationReport:
    """Check every entry invariant; violations are data, not exceptions."""
    violations: list[Violation] = []

    if not isinstance(entry.label, str) or not entry.label:
        violations.append(Violation("label", "label must be a non-empty string"))
    elif len(entry.label) > MAX_LABEL_LENGTH:
        violations.append(
            Violation("label", f"label exceeds {MAX_LABEL_LENGTH} characters")
        )

    if not isinstance(entry.color_slot, int) or isinstance(entry.color_slot, bool):
        violations.append(Violation("color_slot", "color_slot must be an integer"))
    elif not 0 <= entry.color_slot <= MAX_ENTRIES - 1:
        violations.append(
            Violation("color_slot", f"color_slot must be in [0, {MAX_ENTRIES - 1}]")
        )

    for dim in INNER_DIMENSIONS:
        if dim not in entry.inner:
            violations.append(Violation(f"inner.{dim.value}", "missing inner dimension"))
        elif not isinstance(entry.inner[dim], SupervisionMark):
            violations.append(
                Violation(f"inner.{dim.value}", "value is not a supervision mark")
            )
    for key in entry.inner:
        if not isinstance(key, InnerDimension):
            violations.append(Violation(f"inner.{key}", "unknown inner dimension"))

    for measure in OUTER_MEASURES:
        if measure not in entry.outer:
            violations.append(Violation(f"outer.{measure.value}", "missing outer measure"))
        elif not isinstance(entry.outer[measure], bool):
            violations.append(
                Violation(f"outer.{measure.value}", "value is not a boolean")
            )
    for key in entry.outer:
        if not isinstance(key, OuterMeasure):
            violations.append(Violation(f"outer.{key}", "unknown outer measure"))

    for key, value in entry.provenance.items():
        if key not in _PROVENANCE_KEYS:
            violations.append(Violation(f"provenance.{key}", "unknown field key"))
        elif value not in PROVENANCE_VALUES:
            violations.append(
                Violation(
                    f"provenance.{key}",
                    f"value must be one of {', '.join(PROVENANCE_VALUES)}",
                )
            )

    return ValidationReport(tuple(violations))


def validate_document(doc: CompassDocument) -> ValidationReport:
    """Check document-level invariants plus every contained entry."""
    violations: list[Violation] = []

    if doc.version != FORMAT_VERSION:
        violations.append(Violation("version", f"unrecognized version {doc.version!r}"))
    if len(doc.entries) > MAX_ENTRIES:
        violations.append(
            Violation("entries", f"at most {MAX_ENTRIES} entries are allowed")
        )

    seen_slots: dict[int, int] = {}
    for index, entry in enumerate(doc.entries):
        report = validate_entry(entry)
        violations.extend(report.prefixed(f"entries[{index}].").violations)
        if isinstance(entry.color_slot, int) and not isinstance(entry.color_slot, bool):
            if entry.color_slot in seen_slots:
                violations.append(
                    Violation(
                        f"entries[{index}].color_slot",
                        f"color_slot {entry.color_slot} already used by entry "
                        f"{seen_slots[entry.color_slot]}",
                    )
                )
            else:
                seen_slots[entry.color_slot] = index

    return ValidationReport(tuple(violations))


# --------------------------------------------------------------------------
# Parsing


def _check_version(obj: Mapping[str, Any], violations: list[Violation]) -> str:
    if "version" not in obj:
        violations.append(Violation("version", "missing version"))
        return ""
    version = obj["version"]
    if not isinstance(version, str):
        raise VersionError("version must be a string")
    if version != FORMAT_VERSION:
        raise VersionError(f"unrecognized version {version!r}")
    return version


def _read_entry_fields(
    obj: Mapping[str, Any],
    path: str,
    violations: list[Violation],
    warnings: list[str],
    lenient: bool,
    extra_allowed: frozenset[str] = frozenset(),
) -> CompassEntry:
    for key in obj:
        if key in _ENTRY_FIELDS or key in extra_allowed:
            continue
        if lenient:
            warnings.append(f"{path}{key}: unknown field ignored")
        else:
            violations.append(Violation(f"{path}{key}", "unknown field"))

    label = obj.get("label", "")
    color_slot = obj.get("color_slot", -1)
    if "label" not in obj:
        violations.append(Violation(f"{path}label", "missing label"))
    if "color_slot" not in obj:
        violations.append(Violation(f"{path}color_slot", "missing color_slot"))

    inner: dict[InnerDimension, SupervisionMark] = {}
    raw_inner = obj.get("inner")
    if not isinstance(raw_inner, dict):
        violations.append(Violation(f"{path}inner", "missing or non-object inner map"))
    else:
        for key, value in raw_inner.items():
            if key not in _INNER_KEYS:
                if lenient:
                    warnings.append(f"{path}inner.{key}: unknown field ignored")
                else:
                    violations.append(Violation(f"{path}inner.{key}", "unknown inner dimension"))
                continue
            dim = InnerDimension(key)
            try:
                inner[dim] = SupervisionMark(value)
            except ValueError:
                violations.append(
                    Violation(f"{path}inner.{key}", f"invalid supervision mark {value!r}")
                )
        for dim in INNER_DIMENSIONS:
            if dim.value not in raw_inner:
                violations.append(
                    Violation(f"{path}inner.{dim.value}", "missing inner dimension")
                )

    outer: dict[OuterMeasure, bool] = {}
    raw_outer = obj.get("outer")
    if not isinstance(raw_outer, dict):
        violations.append(Violation(f"{path}outer", "missing or non-object outer map"))
    else:
        for key, value in raw_outer.items():
            if key not in _OUTER_KEYS:
                if lenient:
                    warnings.append(f"{path}outer.{key}: unknown field ignored")
                else:
                    violations.append(Violation(f"{path}outer.{key}", "unknown outer measure"))
                continue
            if not isinstance(value, bool):
                violations.append(
                    Violation(f"{path}outer.{key}", f"expected a boolean, got {value!r}")
                )
                continue
            outer[OuterMeasure(key)] = value
        for measure in OUTER_MEASURES:
            if measure.value not in raw_outer:
                violations.append(
                    Violation(f"{path}outer.{measure.value}", "missing outer measure")
                )

    provenance: dict[str, str] = {}
    raw_provenance = obj.get("provenance", {})
    if not isinstance(raw_provenance, dict):
        violations.append(Violation(f"{path}provenance", "provenance must be an object"))
    else:
        for key, value in raw_provenance.items():
            if key not in _PROVENANCE_KEYS:
                violations.append(Violation(f"{path}provenance.{key}", "unknown field key"))
            elif value not in PROVENANCE_VALUES:
                violations.append(
                    Violation(
                        f"{path}provenance.{key}",
                        f"value must be one of {', '.join(PROVENANCE_VALUES)}",
                    )
                )
            else:
                provenance[key] = value

    return CompassEntry(
        label=label, color_slot=color_slot, inner=inner, outer=outer, provenance=provenance
    )


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonSyntaxError(f"malformed JSON: {exc}") from exc


def _raise_if_invalid(violations: list[Violation]) -> None:
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        if len(violations) > 5:
            summary += f"; ... ({len(violations)} violations)"
        raise SchemaError(summary, tuple(violations))


def parse_document_with_warnings(
    text: str, *, lenient: bool = False
) -> tuple[CompassDocument, tuple[str, ...]]:
    """Parse a full compass document, returning lenient-mode warnings."""
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise SchemaError("top level must be a JSON object")

    violations: list[Violation] = []
    warnings: list[str] = []
    version = _check_version(obj, violations)

    for key in obj:
        if key in _DOCUMENT_FIELDS:
            continue
        if lenient:
            warnings.append(f"{key}: unknown field ignored")
        else:
            violations.append(Violation(key, "unknown field"))

    entries: list[CompassEntry] = []
    raw_entries = obj.get("entries")
    if not isinstance(raw_entries, list):
        violations.append(Violation("entries", "missing or non-array entries"))
    else:
        if len(raw_entries) > MAX_ENTRIES:
            violations.append(
                Violation("entries", f"at most {MAX_ENTRIES} entries are allowed")
            )
        for index, raw in enumerate(raw_entries):
            if not isinstance(raw, dict):
                violations.append(Violation(f"entries[{index}]", "entry must be an object"))
                continue
            entries.append(
                _read_entry_fields(raw, f"entries[{index}].", violations, warnings, lenient)
            )

    doc = CompassDocument(version=version, entries=tuple(entries))
    if not violations:
        violations.extend(validate_document(doc).violations)
    _raise_if_invalid(violations)
    return doc, tuple(warnings)


def parse_document(text: str, *, lenient: bool = False) -> CompassDocument:
    """Parse and strictly validate a compass document."""
    doc, _ = parse_document_with_warnings(text, lenient=lenient)
    return doc


def parse_entry_with_warnings(
    text: str, *, lenient: bool = False
) -> tuple[CompassEntry, tuple[str, ...]]:
    """Parse a single-entry descriptor file (one entry plus a version),
    the form used for repository exchange."""
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise SchemaError("top level must be a JSON object")

    violations: list[Violation] = []
    warnings: list[str] = []
    _check_version(obj, violations)
    entry = _read_entry_fields(
        obj, "", violations, warnings, lenient, extra_allowed=frozenset(("version",))
    )
    if not violations:
        violations.extend(validate_entry(entry).violations)
    _raise_if_invalid(violations)
    return entry, tuple(warnings)


def parse_entry(text: str, *, lenient: bool = False) -> CompassEntry:
    entry, _ = parse_entry_with_warnings(text, lenient=lenient)
    return entry


def parse_descriptor_with_warnings(
    text: str, *, lenient: bool = False
) -> tuple[CompassDocument, tuple[str, ...]]:
    """Parse either a full document or a single-entry file; single entries
    are wrapped into a one-entry document."""
    obj = _loads(text)
    if isinstance(obj, dict) and "entries" not in obj and "label" in obj:
        entry, warnings = parse_entry_with_warnings(text, lenient=lenient)
        return CompassDocument(entries=(entry,)), warnings
    return parse_document_with_warnings(text, lenient=lenient)


def parse_descriptor(text: str, *, lenient: bool = False) -> CompassDocument:
    doc, _ = parse_descriptor_with_warnings(text, lenient=lenient)
    return doc


# --------------------------------------------------------------------------
# Serialization


def _entry_payload(entry: CompassEntry) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "label": entry.label,
        "color_slot": entry.color_slot,
        "inner": {d.value: entry.inner[d].value for d in INNER_DIMENSIONS},
        "outer": {m.value: entry.outer[m] for m in OUTER_MEASURES},
    }
    if entry.provenance:
        ordered = [d.value for d in INNER_DIMENSIONS] + [m.value for m in OUTER_MEASURES]
        payload["provenance"] = {
            key: entry.provenance[key] for key in ordered if key in entry.provenance
        }
    return payload


def serialize_document(doc: CompassDocument) -> str:
    """Canonical form: keys in schema order, two-space indent, trailing
    newline. Deterministic, so value-equal documents serialize to
    identical bytes."""
    payload = {
        "version": doc.version,
        "entries": [_entry_payload(entry) for entry in doc.entries],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def serialize_entry(entry: CompassEntry) -> str:
    """Canonical single-entry form used for repository exchange."""
    payload: dict[str, Any] = {"version": FORMAT_VERSION}
    payload.update(_entry_payload(entry))
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# Diffing


def diff_entries(
    a: CompassEntry, b: CompassEntry
) -> list[tuple[str, SupervisionMark | bool, SupervisionMark | bool]]:
    """List the inner/outer fields on which two entries disagree; label,
    color slot, and provenance metadata are presentation details and do
    not participate."""
    diffs: list[tuple[str, SupervisionMark | bool, SupervisionMark | bool]] = []
    for dim in INNER_DIMENSIONS:
        if a.inner[dim] != b.inner[dim]:
            diffs.append((f"inner.{dim.value}", a.inner[dim], b.inner[dim]))
    for measure in OUTER_MEASURES:
        if a.outer[measure] != b.outer[measure]:
            diffs.append((f"outer.{measure.value}", a.outer[measure], b.outer[measure]))
    return diffs
