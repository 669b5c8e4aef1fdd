"""Evaluation measures over experiment logs: per-task accuracy summaries,
forgetting, forward/backward transfer, learning-curve area, online
codelength, openness, and resource-efficiency ratios.

All functions are pure and operate at 64-bit float precision. Absent
accuracy-matrix entries are explicit (None) and make the affected measure
fail rather than being silently imputed as zero. Task indices in the
public API are 1-based, matching the usual notation t = 1..T; storage is
0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    CurveIndexError,
    InvalidCountsError,
    InvalidTaskError,
    InvalidTraceError,
    LengthMismatchError,
    MissingEntryError,
    RaggedInputError,
    ZeroProbabilityError,
)


def _check_unit_interval(value: float, what: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InvalidTraceError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise InvalidTraceError(f"{what} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class AccuracyMatrix:
    """T x T matrix with rows indexed by the last trained task and columns
    by the evaluated task. Entries above the diagonal may be absent."""

    rows: tuple[tuple[float | None, ...], ...]

    def __post_init__(self):
        if len(self.rows) < 1:
            raise InvalidTaskError("accuracy matrix needs at least one task")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.rows):
                raise LengthMismatchError(
                    f"row {i + 1} has {len(row)} entries, expected {len(self.rows)}"
                )
            for j, value in enumerate(row):
                if value is not None:
                    _check_unit_interval(value, f"accuracy a[{i + 1}][{j + 1}]")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[float | None]]) -> AccuracyMatrix:
        return AccuracyMatrix(tuple(tuple(row) for row in rows))

    @property
    def task_count(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> float:
        """a[i][j] with 1-based indices; absent entries raise."""
        value = self.rows[i - 1][j - 1]
        if value is None:
            raise MissingEntryError(f"accuracy a[{i}][{j}] is not recorded")
        return value


@dataclass(frozen=True)
class TaskAccuracyTriple:
    """Per-step base/new/all test accuracies for steps t = 2..T, plus the
    offline accuracy on the base set taken as ideal performance."""

    alpha_new: tuple[float, ...]
    alpha_base: tuple[float, ...]
    alpha_all: tuple[float, ...]
    alpha_ideal: float

    def __post_init__(self):
        n = len(self.alpha_new)
        if n == 0:
            raise InvalidTraceError("alpha lists must cover at least one step")
        if len(self.alpha_base) != n or len(self.alpha_all) != n:
            raise LengthMismatchError("alpha lists must share one length")
        for name, values in (
            ("alpha_new", self.alpha_new),
            ("alpha_base", self.alpha_base),
            ("alpha_all", self.alpha_all),
        ):
            for v in values:
                _check_unit_interval(v, name)
        _check_unit_interval(self.alpha_ideal, "alpha_ideal")
        if self.alpha_ideal <= 0.0:
            raise InvalidTraceError("alpha_ideal must be positive")


@dataclass(frozen=True)
class BaselineVector:
    """Per-task accuracies of a random baseline; the first slot is never
    consumed and may be left unrecorded."""

    values: tuple[float | None, ...]

    def __post_init__(self):
        if not self.values:
            raise InvalidTraceError("baseline vector must not be empty")
        for idx, v in enumerate(self.values):
            if v is None and idx == 0:
                continue
            if v is None:
                raise MissingEntryError(f"baseline for task {idx + 1} is not recorded")
            _check_unit_interval(v, f"baseline b[{idx + 1}]")


@dataclass(frozen=True)
class ConvergenceCurve:
    """Average b-shot accuracy across tasks, indexed by mini-batch number
    starting at zero."""

    z: tuple[float, ...]

    def __post_init__(self):
        if not self.z:
            raise InvalidTraceError("convergence curve must not be empty")
        for v in self.z:
            _check_unit_interval(v, "Z_b")


@dataclass(frozen=True)
class PredictionTrace:
    """Sequential probabilities assigned to the true labels of instances
    2..N under the evolving model, plus the label-space size."""

    num_labels: int
    probs: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.num_labels, int) or self.num_labels < 2:
            raise InvalidTraceError("num_labels must be an integer >= 2")
        if not self.probs:
            raise InvalidTraceError("prediction trace needs at least one probability")
        for p in self.probs:
            _check_unit_interval(p, "probability")


@dataclass(frozen=True)
class OpennessSpec:
    """Either train/test/target class counts or a raw unknown-instance
    probability; exactly one representation is populated."""

    n_train: int | None = None
    n_test: int | None = None
    n_target: int | None = None
    unknown_probability: float | None = None

    def __post_init__(self):
        counts = (self.n_train, self.n_test, self.n_target)
        has_counts = any(c is not None for c in counts)
        has_prob = self.unknown_probability is not None
        if has_counts == has_prob:
            raise InvalidCountsError(
                "exactly one of class counts and unknown_probability must be given"
            )
        if has_counts:
            for name, c in zip(("n_train", "n_test", "n_target"), counts):
                if not isinstance(c, int) or isinstance(c, bool) or c <= 0:
                    raise InvalidCountsError(f"{name} must be a positive integer, got {c!r}")
        else:
            _check_unit_interval(self.unknown_probability, "unknown_probability")


@dataclass(frozen=True)
class ResourceTrace:
    """Per-step parameter counts, rehearsal-buffer sizes, and operation
    counts; `normalizer` overrides the default N = number of steps."""

    mem_theta: tuple[float, ...] = ()
    mem_buffer: tuple[float, ...] = ()
    mem_dataset: float | None = None
    ops_train: tuple[float, ...] = ()
    ops_one_pass: tuple[float, ...] = ()
    normalizer: float | None = None

    def __post_init__(self):
        for v in self.mem_theta:
            if v <= 0:
                raise InvalidTraceError("parameter counts must be positive")
        for v in self.mem_buffer:
            if v < 0:
                raise InvalidTraceError("buffer sizes must be non-negative")
        if self.mem_dataset is not None and self.mem_dataset <= 0:
            raise InvalidTraceError("dataset size must be positive")
        for v in self.ops_train:
            if v <= 0:
                raise InvalidTraceError("training operation counts must be positive")
        for v in self.ops_one_pass:
            if v < 0:
                raise InvalidTraceError("one-pass operation counts must be non-negative")
        if self.normalizer is not None and self.normalizer <= 0:
            raise InvalidTraceError("normalizer must be positive")


class OmegaMetrics(NamedTuple):
    base: float
    new: float
    all: float


class TaskMetric(NamedTuple):
    """Per-task values of a transfer-style measure plus their average."""

    values: tuple[float, ...]
    average: float


class OpennessResult(NamedTuple):
    value: float
    warning: str | None


def average_accuracy(m: AccuracyMatrix) -> float:
    """Mean accuracy over all tasks after the final task was observed."""
    t = m.task_count
    return sum(m.entry(t, j) for j in range(1, t + 1)) / t


def omega_metrics(triple: TaskAccuracyTriple) -> OmegaMetrics:
    """Normalized base/new/all accuracy summaries; base and all are
    expressed relative to the ideal offline accuracy."""
    n = len(triple.alpha_new)
    base = sum(triple.alpha_base) / (n * triple.alpha_ideal)
    new = sum(triple.alpha_new) / n
    all_ = sum(triple.alpha_all) / (n * triple.alpha_ideal)
    return OmegaMetrics(base=base, new=new, all=all_)


def _check_task_index(m: AccuracyMatrix, t: int) -> None:
    if not isinstance(t, int) or t < 2 or t > m.task_count:
        raise InvalidTaskError(
            f"task index must lie in [2, {m.task_count}], got {t!r}"
        )


def forgetting(m: AccuracyMatrix, t: int) -> TaskMetric:
    """Per-task forgetting after task t: the gap between the best accuracy
    a past model reached on task j and the current accuracy, averaged over
    j < t. Negative values mean retrospective improvement."""
    _check_task_index(m, t)
    values = []
    for j in range(1, t):
        best_past = max(m.entry(i, j) for i in range(1, t))
        values.append(best_past - m.entry(t, j))
    return TaskMetric(tuple(values), sum(values) / len(values))


def forward_transfer(m: AccuracyMatrix, baseline: BaselineVector) -> TaskMetric:
    """Accuracy on each not-yet-trained task j, evaluated right after task
    j-1, relative to a random baseline; averaged over j = 2..T."""
    t = m.task_count
    if len(baseline.values) != t:
        raise LengthMismatchError(
            f"baseline has {len(baseline.values)} tasks, matrix has {t}"
        )
    if t < 2:
        raise InvalidTaskError("forward transfer needs at least two tasks")
    values = []
    for j in range(2, t + 1):
        values.append(m.entry(j - 1, j) - baseline.values[j - 1])
    return TaskMetric(tuple(values), sum(values) / len(values))


def backward_transfer(m: AccuracyMatrix, t: int) -> TaskMetric:
    """Change of each previous task's accuracy after learning task t,
    relative to its accuracy right after its own training. Negative
    averages coincide with forgetting-style degradation."""
    _check_task_index(m, t)
    values = []
    for j in range(1, t):
        values.append(m.entry(t, j) - m.entry(j, j))
    return TaskMetric(tuple(values), sum(values) / len(values))


def zb_curve(
    raw: Sequence[Sequence[float]], *, truncate: bool = False
) -> ConvergenceCurve:
    """Average the per-task b-shot accuracies into one curve. Tasks must
    agree on the available batch range unless truncation is requested."""
    if not raw or any(len(task) == 0 for task in raw):
        raise InvalidTraceError("per-task curves must not be empty")
    lengths = {len(task) for task in raw}
    if len(lengths) > 1:
        if not truncate:
            raise RaggedInputError(
                f"tasks disagree on batch range: lengths {sorted(lengths)}"
            )
        limit = min(lengths)
    else:
        limit = lengths.pop()
    z = []
    for b in range(limit):
        z.append(sum(_check_unit_interval(task[b], "accuracy") for task in raw) / len(raw))
    return ConvergenceCurve(tuple(z))


def lca(curve: ConvergenceCurve, beta: int) -> float:
    """Normalized area under the convergence curve up to batch beta."""
    if not isinstance(beta, int) or beta < 0:
        raise CurveIndexError(f"beta must be a non-negative integer, got {beta!r}")
    if beta >= len(curve.z):
        raise CurveIndexError(
            f"beta {beta} exceeds curve length {len(curve.z)}"
        )
    return sum(curve.z[: beta + 1]) / (beta + 1)


def online_codelength(trace: PredictionTrace) -> float:
    """Bits needed to encode the label sequence under the evolving model:
    log2 of the label-space size minus the summed log-probabilities of
    instances 2..N."""
    total = math.log2(trace.num_labels)
    for idx, p in enumerate(trace.probs):
        if p == 0.0:
            raise ZeroProbabilityError(
                f"probability at position {idx + 2} is zero; codelength diverges"
            )
        total -= math.log2(p)
    return total


def openness(spec: OpennessSpec) -> OpennessResult:
    """Departure from the closed-world assumption. Zero when training,
    test, and target classes coincide; negative values (over-covered
    training sets) are returned raw with a warning."""
    if spec.unknown_probability is not None:
        return OpennessResult(float(spec.unknown_probability), None)
    value = 1.0 - math.sqrt(2.0 * spec.n_train / (spec.n_test + spec.n_target))
    warning = None
    if value < 0.0:
        warning = (
            "openness is negative: training classes exceed the test/target span"
        )
    return OpennessResult(value, warning)


def _normalizer(trace: ResourceTrace, steps: int) -> float:
    return trace.normalizer if trace.normalizer is not None else float(steps)


def model_size_efficiency(trace: ResourceTrace) -> float:
    """Growth of the parameter count relative to the first step, summed
    over steps and normalized; capped at 1."""
    if not trace.mem_theta:
        raise InvalidTraceError("model-size efficiency needs parameter counts")
    first = trace.mem_theta[0]
    total = sum(first / m for m in trace.mem_theta)
    return min(1.0, total / _normalizer(trace, len(trace.mem_theta)))


def sample_storage_efficiency(trace: ResourceTrace) -> float:
    """One minus the normalized share of the observed dataset retained in
    the rehearsal buffer; 1 means nothing is stored."""
    if not trace.mem_buffer or trace.mem_dataset is None:
        raise InvalidTraceError(
            "sample-storage efficiency needs buffer sizes and the dataset size"
        )
    total = sum(b / trace.mem_dataset for b in trace.mem_buffer)
    return 1.0 - min(1.0, total / _normalizer(trace, len(trace.mem_buffer)))


def computational_efficiency(trace: ResourceTrace) -> float:
    """Cost of one forward/backward pass relative to the full training
    cost per step, summed and normalized; capped at 1."""
    if not trace.ops_train or not trace.ops_one_pass:
        raise InvalidTraceError("computational efficiency needs both operation counts")
    if len(trace.ops_train) != len(trace.ops_one_pass):
        raise LengthMismatchError("operation-count lists must share one length")
    total = sum(op / ot for op, ot in zip(trace.ops_one_pass, trace.ops_train))
    return min(1.0, total / _normalizer(trace, len(trace.ops_train)))
