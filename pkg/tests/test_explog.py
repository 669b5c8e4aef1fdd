from __future__ import annotations

import json

import pytest

from cleva.errors import JsonSyntaxError, MissingEntryError, SchemaError
from cleva.explog import REPORT_KEYS, compute_report, parse_experiment_log


def report_for(payload, **kwargs):
    return compute_report(parse_experiment_log(json.dumps(payload)), **kwargs)


WORKED_MATRIX = {"accuracy_matrix": [[0.9, None], [0.6, 0.8]]}


class TestParsing:
    def test_malformed(self):
        with pytest.raises(JsonSyntaxError):
            parse_experiment_log("{")

    def test_unknown_section(self):
        with pytest.raises(SchemaError):
            parse_experiment_log('{"bogus": 1}')

    def test_zb_and_raw_are_exclusive(self):
        with pytest.raises(SchemaError):
            parse_experiment_log('{"zb": [0.5], "raw_batch_accuracy": [[0.5]]}')

    def test_empty_log_gives_empty_report(self):
        assert report_for({}).values == {}


class TestReport:
    def test_worked_matrix(self):
        report = report_for(WORKED_MATRIX)
        assert report.values["forgetting"] == pytest.approx(0.3, abs=1e-12)
        assert report.values["backward_transfer"] == pytest.approx(-0.3, abs=1e-12)
        assert report.values["average_accuracy"] == pytest.approx(0.7, abs=1e-12)

    def test_forward_transfer_needs_baseline(self):
        assert "forward_transfer" not in report_for(WORKED_MATRIX).values
        payload = {"accuracy_matrix": [[0.9, 0.4], [0.6, 0.8]], "baseline": [None, 0.1]}
        assert report_for(payload).values["forward_transfer"] == pytest.approx(0.3)

    def test_incomplete_matrix_errors_rather_than_imputes(self):
        with pytest.raises(MissingEntryError):
            report_for({"accuracy_matrix": [[0.9, None], [None, 0.8]]})

    def test_alpha_section(self):
        payload = {"alpha": {"new": [0.6, 0.8], "base": [0.9, 0.9], "all": [0.45, 0.45], "ideal": 0.9}}
        values = report_for(payload).values
        assert values["omega_base"] == pytest.approx(1.0)
        assert values["omega_new"] == pytest.approx(0.7)
        assert values["omega_all"] == pytest.approx(0.5)

    def test_lca_defaults_to_full_curve(self):
        assert report_for({"zb": [1.0, 0.0]}).values["lca"] == pytest.approx(0.5)
        assert report_for({"zb": [1.0, 0.0]}, beta=0).values["lca"] == 1.0

    def test_raw_batch_accuracy(self):
        payload = {"raw_batch_accuracy": [[0.2, 0.4], [0.4, 0.6]]}
        assert report_for(payload).values["lca"] == pytest.approx(0.4)

    def test_codelength(self):
        payload = {"prediction_trace": {"num_labels": 4, "probs": [0.5, 0.5]}}
        assert report_for(payload).values["codelength"] == pytest.approx(4.0)

    def test_openness_counts_and_warning(self):
        payload = {"openness": {"n_train": 10, "n_test": 5, "n_target": 5}}
        report = report_for(payload)
        assert report.values["openness"] < 0
        assert report.warnings

    def test_resources(self):
        payload = {
            "resources": {
                "mem_theta": [10, 20],
                "mem_buffer": [50, 50],
                "mem_dataset": 100,
                "ops_train": [100, 100],
                "ops_one_pass": [10, 10],
            }
        }
        values = report_for(payload).values
        assert values["parameters"] == pytest.approx(0.75)
        assert values["stored_data"] == pytest.approx(0.5)
        assert values["mac_operations"] == pytest.approx(0.1)

    def test_reported_scalars_pass_through(self):
        values = report_for({"compute_time": 12.5, "communication": 3.0}).values
        assert values["compute_time"] == 12.5
        assert values["communication"] == 3.0

    def test_select_filters_and_rejects_unknown(self):
        report = report_for(WORKED_MATRIX, select=["forgetting"])
        assert list(report.values) == ["forgetting"]
        with pytest.raises(SchemaError):
            report_for(WORKED_MATRIX, select=["nope"])

    def test_keys_are_canonical_subset(self):
        payload = {
            "accuracy_matrix": [[0.9, None], [0.6, 0.8]],
            "zb": [0.5],
            "openness": {"unknown_probability": 0.2},
        }
        keys = list(report_for(payload).values)
        assert keys == [k for k in REPORT_KEYS if k in keys]
