"""Hover-help texts for every inner dimension and outer measure.

The outer texts describe each evaluation measure and its relevance; the
inner texts give short example hints for how supervision manifests on the
corresponding axis. The UI and the tooltip API serve these verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import InnerDimension, OuterMeasure

_INNER_TEXTS: dict[InnerDimension, str] = {
    InnerDimension.TASK_AGNOSTIC: (
        "A method is task agnostic if prediction with a deployed model does not "
        "require any additional information for which task a data instance "
        "originates from. A supervised manifestation explicitly includes a "
        "time-step or task label to condition the prediction; a fully "
        "unsupervised variant predicts correctly without any such information. "
        "No mark implies a task oracle is required for prediction."
    ),
    InnerDimension.TASK_ORDER_DISCOVERY: (
        "Instead of learning a fixed benchmark sequence, the approach decides "
        "which task is meaningful to learn next. Supervised if prospective "
        "class labels are used to choose, unsupervised if the order follows "
        "from label-free divergences or distances in a feature space."
    ),
    InnerDimension.ACTIVE_DATA_QUERY: (
        "The approach actively chooses which data instances to include next "
        "into optimization, based on a utility measure for prospective "
        "inclusion. That measure can require supervision or be entirely "
        "unsupervised."
    ),
    InnerDimension.MULTIPLE_MODALITIES: (
        "The system learns on more than one modality, such as text and images. "
        "The supervision distinction condenses to whether a label is required "
        "for which modality an instance originates from, e.g. to condition a "
        "modality-specific computation."
    ),
    InnerDimension.OPEN_WORLD: (
        "The learner robustly identifies unknown, sometimes corrupted or "
        "perturbed, data instances. Supervised if the recognition mechanism "
        "is conceived from class labels, such as a classifier entropy; "
        "unsupervised if it relies on label-free quantities such as "
        "reconstruction losses or divergence measures."
    ),
    InnerDimension.ONLINE: (
        "Observed data instances are not revisited; no mark implies data is "
        "revisited, e.g. training each task for several epochs. Consistent "
        "online training can rely on supervised importance measures or "
        "pre-training, or on unsupervised quantities such as exponential "
        "moving averages."
    ),
    InnerDimension.FEDERATED: (
        "Optimization is distributed across communicating devices. "
        "Communication can exploit supervised side information about device "
        "groups or participation, or follow a fully unsupervised route that "
        "simply averages communicated updates without any such labels."
    ),
    InnerDimension.MULTIPLE_MODELS: (
        "Several models are employed across the sequence. Supervised if an "
        "additional mechanism is required to index the appropriate model for "
        "prediction; unsupervised if the correct model is queried "
        "automatically. No mark means a single model is used."
    ),
    InnerDimension.UNCERTAINTY: (
        "The method provides uncertainty estimates. Measures that require "
        "calibration receive a supervised signal of what uncertainty should "
        "look like, whereas inherently meaningful uncertainties, such as "
        "those of a fully Bayesian treatment, are unsupervised."
    ),
    InnerDimension.GENERATIVE: (
        "A supervised generative model learns the joint distribution of data "
        "and labels, whereas unsupervised generative models learn or "
        "approximate the data distribution only. No mark corresponds to a "
        "purely discriminative model."
    ),
    InnerDimension.EPISODIC_MEMORY: (
        "A buffer of stored data instances is rehearsed during training. "
        "Construction is supervised if it relies on labels, e.g. per-class "
        "means, and unsupervised when filling the buffer by random sampling "
        "or label-free clustering."
    ),
}

_OUTER_TEXTS: dict[OuterMeasure, str] = {
    OuterMeasure.DATA_PER_TASK: (
        "What data is introduced sequentially. The number of data instances "
        "is a primary indicator for sample efficiency and provides the "
        "context for e.g. few-shot settings."
    ),
    OuterMeasure.TASK_ORDER: (
        "The order in which tasks are introduced, even if randomly sampled "
        "in practice. The order has a significant impact on obtainable "
        "continual performance depending on the constructed curriculum."
    ),
    OuterMeasure.PER_TASK_METRICS: (
        "Task specific parts of reported losses or metrics allow for a "
        "deeper assessment of each task's evolution over time, e.g. \"new\" "
        "and \"base\" for first and most recent task, in addition to the "
        "overall average \"all\"."
    ),
    OuterMeasure.OPTIMIZATION_STEPS: (
        "The number of optimization steps is crucial to gauge empirical "
        "convergence. The number of optimization steps on revisited data "
        "also distinguishes sequences of continual offline and truly online "
        "scenarios."
    ),
    OuterMeasure.GENERATED_DATA: (
        "Amount of data that is generated, if any. The quality and number "
        "of data instances sampled from a generative model determine the "
        "effectiveness of rehearsal."
    ),
    OuterMeasure.STORED_DATA: (
        "Amount of original data retained in a buffer, if any. Rehearsing "
        "instances becomes a trivial solution the more the buffer "
        "approximates the original dataset size."
    ),
    OuterMeasure.PARAMETERS: (
        "Amount of overall parameters. A trivial solution to continual "
        "learning would be to allocate increasing amounts of separate and "
        "independent parameters over time, motivating a desire for "
        "parameter efficiency."
    ),
    OuterMeasure.MEMORY: (
        "How much memory is used. Provides a combined perspective on data "
        "storage and model parameter efficiency."
    ),
    OuterMeasure.COMPUTE_TIME: (
        "Practically used computation time. Different algorithms and "
        "operations can consume dramatically different compute time, in "
        "additional dependence on hardware, even when implemented in the "
        "same software."
    ),
    OuterMeasure.MAC_OPERATIONS: (
        "Number of multiply-accumulate operations are an alternative to "
        "reporting compute requirements, in a way that is not inherently "
        "tied to specific soft- and hardware."
    ),
    OuterMeasure.COMMUNICATION: (
        "Communication costs start to play a critical role in a distributed "
        "or decentralized federated perspective, where time spent on many "
        "rounds of communication can rapidly exceed that of model "
        "computations."
    ),
    OuterMeasure.FORGETTING: (
        "The amount of forgetting is a way to quantify the difference "
        "between maximum knowledge gained about the task throughout the "
        "learning process in the past and the knowledge that is currently "
        "still held about it."
    ),
    OuterMeasure.FORWARD_TRANSFER: (
        "Forward transfer determines the influence that an observed task "
        "has on a future task, quantifying the ability for \"zero-shot\" "
        "learning."
    ),
    OuterMeasure.BACKWARD_TRANSFER: (
        "Backward transfer captures the improvement or deterioration an "
        "already observed task experiences when learning a new task."
    ),
    OuterMeasure.OPENNESS: (
        "Openness of the world describes the proportion between data points "
        "that can be assumed to originate from the investigated data "
        "distribution and potentially unknown, corrupted or perturbed "
        "instances."
    ),
}


@dataclass(frozen=True)
class TooltipRegistry:
    """Total map from every dimension and measure to its hover text."""

    inner_texts: dict[InnerDimension, str]
    outer_texts: dict[OuterMeasure, str]


TOOLTIPS = TooltipRegistry(inner_texts=dict(_INNER_TEXTS), outer_texts=dict(_OUTER_TEXTS))


def get_tooltip(key: InnerDimension | OuterMeasure | str) -> str:
    """Return the hover text for a dimension or measure key."""
    if isinstance(key, InnerDimension):
        return TOOLTIPS.inner_texts[key]
    if isinstance(key, OuterMeasure):
        return TOOLTIPS.outer_texts[key]
    try:
        return TOOLTIPS.inner_texts[InnerDimension(key)]
    except ValueError:
        return TOOLTIPS.outer_texts[OuterMeasure(key)]
