"""Experiment-log ingestion and metric-report assembly.

A log is a UTF-8 JSON object with optional sections; each present section
unlocks the measures computable from it. The report is a flat map whose
keys reuse the outer-measure names where a measure has one (forgetting,
forward_transfer, backward_transfer, openness, parameters, stored_data,
mac_operations) plus the named scalar summaries. Compute time and
communication have no formula and are passed through as reported scalars.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable

from .errors import JsonSyntaxError, SchemaError
from .metrics import (
    AccuracyMatrix,
    BaselineVector,
    ConvergenceCurve,
    OpennessSpec,
    PredictionTrace,
    ResourceTrace,
    TaskAccuracyTriple,
    average_accuracy,
    backward_transfer,
    computational_efficiency,
    forgetting,
    forward_transfer,
    lca,
    model_size_efficiency,
    omega_metrics,
    online_codelength,
    openness,
    sample_storage_efficiency,
    zb_curve,
)

_SECTIONS = (
    "accuracy_matrix",
    "alpha",
    "baseline",
    "zb",
    "raw_batch_accuracy",
    "prediction_trace",
    "openness",
    "resources",
    "compute_time",
    "communication",
)

# Canonical report-key order.
REPORT_KEYS = (
    "average_accuracy",
    "omega_base",
    "omega_new",
    "omega_all",
    "forgetting",
    "forward_transfer",
    "backward_transfer",
    "lca",
    "codelength",
    "openness",
    "parameters",
    "stored_data",
    "mac_operations",
    "compute_time",
    "communication",
)


@dataclass(frozen=True)
class ExperimentLog:
    """Everything the measures consume, with absent sections left None."""

    matrix: AccuracyMatrix | None = None
    alpha: TaskAccuracyTriple | None = None
    baseline: BaselineVector | None = None
    curve: ConvergenceCurve | None = None
    raw_batch_accuracy: tuple[tuple[float, ...], ...] | None = None
    trace: PredictionTrace | None = None
    openness_spec: OpennessSpec | None = None
    resources: ResourceTrace | None = None
    compute_time: float | None = None
    communication: float | None = None


@dataclass(frozen=True)
class MetricsReport:
    """Computed measures in canonical key order plus any warnings."""

    values: dict[str, float]
    warnings: tuple[str, ...] = ()


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _number(value: Any, what: str) -> float:
    _expect(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        f"{what} must be a number, got {value!r}",
    )
    return float(value)


def _number_list(value: Any, what: str) -> tuple[float, ...]:
    _expect(isinstance(value, list), f"{what} must be an array")
    return tuple(_number(v, f"{what} element") for v in value)


def parse_experiment_log(text: str) -> ExperimentLog:
    """Parse and structurally validate an experiment-log file."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonSyntaxError(f"malformed JSON: {exc}") from exc
    _expect(isinstance(obj, dict), "top level must be a JSON object")
    for key in obj:
        if key not in _SECTIONS:
            raise SchemaError(f"unknown log section {key!r}")
    _expect(
        not ("zb" in obj and "raw_batch_accuracy" in obj),
        "give either zb or raw_batch_accuracy, not both",
    )

    matrix = None
    if "accuracy_matrix" in obj:
        raw = obj["accuracy_matrix"]
        _expect(isinstance(raw, list) and raw, "accuracy_matrix must be a non-empty array")
        rows = []
        for row in raw:
            _expect(isinstance(row, list), "accuracy_matrix rows must be arrays")
            rows.append(
                tuple(None if v is None else _number(v, "accuracy") for v in row)
            )
        matrix = AccuracyMatrix.from_rows(rows)

    alpha = None
    if "alpha" in obj:
        raw = obj["alpha"]
        _expect(isinstance(raw, dict), "alpha must be an object")
        for key in raw:
            _expect(key in ("new", "base", "all", "ideal"), f"unknown alpha field {key!r}")
        for key in ("new", "base", "all", "ideal"):
            _expect(key in raw, f"alpha.{key} is required")
        alpha = TaskAccuracyTriple(
            alpha_new=_number_list(raw["new"], "alpha.new"),
            alpha_base=_number_list(raw["base"], "alpha.base"),
            alpha_all=_number_list(raw["all"], "alpha.all"),
            alpha_ideal=_number(raw["ideal"], "alpha.ideal"),
        )

    baseline = None
    if "baseline" in obj:
        raw = obj["baseline"]
        _expect(isinstance(raw, list), "baseline must be an array")
        baseline = BaselineVector(
            tuple(None if v is None else _number(v, "baseline") for v in raw)
        )

    curve = None
    if "zb" in obj:
        curve = ConvergenceCurve(_number_list(obj["zb"], "zb"))

    raw_batch = None
    if "raw_batch_accuracy" in obj:
        raw = obj["raw_batch_accuracy"]
        _expect(isinstance(raw, list) and raw, "raw_batch_accuracy must be a non-empty array")
        raw_batch = tuple(
            _number_list(task, "raw_batch_accuracy task") for task in raw
        )

    trace = None
    if "prediction_trace" in obj:
        raw = obj["prediction_trace"]
        _expect(isinstance(raw, dict), "prediction_trace must be an object")
        for key in raw:
            _expect(key in ("num_labels", "probs"), f"unknown prediction_trace field {key!r}")
        _expect("num_labels" in raw and "probs" in raw, "prediction_trace needs num_labels and probs")
        num_labels = raw["num_labels"]
        _expect(
            isinstance(num_labels, int) and not isinstance(num_labels, bool),
            "num_labels must be an integer",
        )
        trace = PredictionTrace(
            num_labels=num_labels, probs=_number_list(raw["probs"], "probs")
        )

    openness_spec = None
    if "openness" in obj:
        raw = obj["openness"]
        _expect(isinstance(raw, dict), "openness must be an object")
        for key in raw:
            _expect(
                key in ("n_train", "n_test", "n_target", "unknown_probability"),
                f"unknown openness field {key!r}",
            )
        openness_spec = OpennessSpec(
            n_train=raw.get("n_train"),
            n_test=raw.get("n_test"),
            n_target=raw.get("n_target"),
            unknown_probability=raw.get("unknown_probability"),
        )

    resources = None
    if "resources" in obj:
        raw = obj["resources"]
        _expect(isinstance(raw, dict), "resources must be an object")
        known = ("mem_theta", "mem_buffer", "mem_dataset", "ops_train", "ops_one_pass", "n")
        for key in raw:
            _expect(key in known, f"unknown resources field {key!r}")
        resources = ResourceTrace(
            mem_theta=_number_list(raw.get("mem_theta", []), "mem_theta"),
            mem_buffer=_number_list(raw.get("mem_buffer", []), "mem_buffer"),
            mem_dataset=(
                _number(raw["mem_dataset"], "mem_dataset") if "mem_dataset" in raw else None
            ),
            ops_train=_number_list(raw.get("ops_train", []), "ops_train"),
            ops_one_pass=_number_list(raw.get("ops_one_pass", []), "ops_one_pass"),
            normalizer=_number(raw["n"], "n") if "n" in raw else None,
        )

    return ExperimentLog(
        matrix=matrix,
        alpha=alpha,
        baseline=baseline,
        curve=curve,
        raw_batch_accuracy=raw_batch,
        trace=trace,
        openness_spec=openness_spec,
        resources=resources,
        compute_time=(
            _number(obj["compute_time"], "compute_time") if "compute_time" in obj else None
        ),
        communication=(
            _number(obj["communication"], "communication") if "communication" in obj else None
        ),
    )


def compute_report(
    log: ExperimentLog,
    *,
    beta: int | None = None,
    select: Iterable[str] | None = None,
    truncate_ragged: bool = False,
) -> MetricsReport:
    """Compute every measure the log's sections support. `beta` defaults
    to the last recorded batch of the convergence curve."""
    values: dict[str, float] = {}
    warnings: list[str] = []

    if log.matrix is not None:
        values["average_accuracy"] = average_accuracy(log.matrix)
        t = log.matrix.task_count
        if t >= 2:
            values["forgetting"] = forgetting(log.matrix, t).average
            values["backward_transfer"] = backward_transfer(log.matrix, t).average
            if log.baseline is not None:
                values["forward_transfer"] = forward_transfer(log.matrix, log.baseline).average

    if log.alpha is not None:
        omega = omega_metrics(log.alpha)
        values["omega_base"] = omega.base
        values["omega_new"] = omega.new
        values["omega_all"] = omega.all

    curve = log.curve
    if curve is None and log.raw_batch_accuracy is not None:
        curve = zb_curve(log.raw_batch_accuracy, truncate=truncate_ragged)
    if curve is not None:
        effective_beta = len(curve.z) - 1 if beta is None else beta
        values["lca"] = lca(curve, effective_beta)

    if log.trace is not None:
        values["codelength"] = online_codelength(log.trace)

    if log.openness_spec is not None:
        result = openness(log.openness_spec)
        values["openness"] = result.value
        if result.warning:
            warnings.append(result.warning)

    if log.resources is not None:
        r = log.resources
        if r.mem_theta:
            values["parameters"] = model_size_efficiency(r)
        if r.mem_buffer and r.mem_dataset is not None:
            values["stored_data"] = sample_storage_efficiency(r)
        if r.ops_train and r.ops_one_pass:
            values["mac_operations"] = computational_efficiency(r)

    if log.compute_time is not None:
        values["compute_time"] = log.compute_time
    if log.communication is not None:
        values["communication"] = log.communication

    ordered = {key: values[key] for key in REPORT_KEYS if key in values}
    if select is not None:
        wanted = list(select)
        unknown = [k for k in wanted if k not in REPORT_KEYS]
        if unknown:
            raise SchemaError(f"unknown metric keys: {', '.join(sorted(unknown))}")
        ordered = {key: ordered[key] for key in REPORT_KEYS if key in ordered and key in wanted}
    return MetricsReport(values=ordered, warnings=tuple(warnings))
