from __future__ import annotations

from pathlib import Path

import pytest

from cleva.fixtures import (
    ATTESTED_INNER_MARKS,
    ATTESTED_OUTER_MARKS,
    METHOD_COLOR_SLOTS,
    METHOD_IDS,
    METHOD_LABELS,
    build_bundled_entry,
    bundled_entry,
    bundled_entry_text,
    five_method_document,
)
from cleva.model import (
    InnerDimension,
    OuterMeasure,
    SupervisionMark,
    diff_entries,
    parse_entry,
    serialize_entry,
    validate_document,
    validate_entry,
)

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "cleva" / "data" / "methods"


class TestBundledFiles:
    def test_five_methods_shipped(self):
        assert len(METHOD_IDS) == 5

    @pytest.mark.parametrize("method_id", METHOD_IDS)
    def test_file_matches_registry(self, method_id):
        assert bundled_entry_text(method_id) == serialize_entry(build_bundled_entry(method_id))

    @pytest.mark.parametrize("method_id", METHOD_IDS)
    def test_file_parses_strictly_and_round_trips(self, method_id):
        text = bundled_entry_text(method_id)
        entry = parse_entry(text)
        assert validate_entry(entry).ok
        assert serialize_entry(entry) == text

    def test_color_slots_follow_legend_order(self):
        for slot, method_id in enumerate(METHOD_IDS):
            assert METHOD_COLOR_SLOTS[method_id] == slot
            assert bundled_entry(method_id).color_slot == slot


class TestAttestedMarks:
    @pytest.mark.parametrize("method_id", METHOD_IDS)
    def test_attested_inner_marks_present(self, method_id):
        entry = bundled_entry(method_id)
        for dimension, mark in ATTESTED_INNER_MARKS[method_id].items():
            assert entry.inner[dimension] is mark, (method_id, dimension)

    @pytest.mark.parametrize("method_id", METHOD_IDS)
    def test_unattested_dimensions_are_none_and_flagged(self, method_id):
        entry = bundled_entry(method_id)
        attested = ATTESTED_INNER_MARKS[method_id]
        for dimension in InnerDimension:
            if dimension not in attested:
                assert entry.inner[dimension] is SupervisionMark.NONE
                assert entry.provenance[dimension.value] == "unattested"

    @pytest.mark.parametrize("method_id", METHOD_IDS)
    def test_outer_marks(self, method_id):
        entry = bundled_entry(method_id)
        reported = ATTESTED_OUTER_MARKS[method_id]
        for measure in OuterMeasure:
            assert entry.outer[measure] is (measure in reported)
            expected = "attested" if measure in reported else "unattested"
            assert entry.provenance[measure.value] == expected

    def test_fedweit_reports_its_three_measures(self):
        entry = bundled_entry("fedweit-yoon-2021")
        assert entry.outer[OuterMeasure.COMMUNICATION]
        assert entry.outer[OuterMeasure.PARAMETERS]
        assert entry.outer[OuterMeasure.MEMORY]

    def test_vcl_model_indexing_level_is_flagged(self):
        entry = bundled_entry("vcl-nguyen-2018")
        assert entry.inner[InnerDimension.MULTIPLE_MODELS] is SupervisionMark.SUPERVISED
        assert entry.provenance[InnerDimension.MULTIPLE_MODELS.value] == "level-unattested"


class TestFiveMethodDocument:
    def test_document_is_valid(self):
        assert validate_document(five_method_document()).ok

    def test_shipped_document_file_matches(self):
        from cleva.model import parse_document, serialize_document

        path = DATA_DIR.parent / "five_methods.json"
        text = path.read_text(encoding="utf-8")
        assert parse_document(text) == five_method_document()
        assert serialize_document(five_method_document()) == text

    def test_labels(self):
        doc = five_method_document()
        assert [e.label for e in doc.entries] == [METHOD_LABELS[m] for m in METHOD_IDS]

    def test_osaka_vs_agem_diff(self):
        osaka = bundled_entry("osaka-caccia-2020")
        agem = bundled_entry("agem-chaudhry-2019")
        diffs = diff_entries(osaka, agem)
        assert (
            "inner.open_world",
            SupervisionMark.SUPERVISED,
            SupervisionMark.NONE,
        ) in diffs
        assert (
            "inner.online",
            SupervisionMark.SUPERVISED,
            SupervisionMark.NONE,
        ) in diffs
