"""User-defined interest scoring for nodes and edges.

Interest functions map graph elements to scores in [0, 1]; higher means
more interesting. Node scores come from a node-interest spec (VUDIE) and
edge scores from an edge-interest spec (LUDIE). Specs are small declarative
objects validated at construction so no evaluation can leave the unit
interval silently.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError
from .graph import Edge, PropertyGraph

WEEK_SECONDS = 604_800

_WEIGHT_TOL = 1e-9


class InterestWarning(UserWarning):
    """Non-fatal interest evaluation issue (missing attribute, clamped value)."""


# -- edge-level building blocks ----------------------------------------------


def time_weighted_amount(edge: Edge, reference_time: int) -> float:
    """Sum of edge transaction amounts discounted exponentially by age.

    Age is measured in weeks relative to ``reference_time``, which must not
    be earlier than any transaction on the edge.
    """
    total = 0.0
    for tx in edge.transactions:
        if tx.timestamp > reference_time:
            raise ValueError(
                f"transaction at {tx.timestamp} is newer than reference time {reference_time}"
            )
        age_weeks = (reference_time - tx.timestamp) / WEEK_SECONDS
        total += tx.amount * math.exp(-age_weeks)
    return total


def fraud_rate(edge: Edge) -> float:
    """Fraction of the edge's transactions labelled fraudulent."""
    frauds = sum(1 for tx in edge.transactions if tx.is_fraud)
    return frauds / len(edge.transactions)


@dataclass(frozen=True, slots=True)
class InterestContext:
    """Graph-level quantities shared by edge-interest evaluation.

    ``time_weighted_amounts`` and ``fraud_rates`` are per-edge arrays
    precomputed once per graph; ``max_time_weighted_amount`` is their
    normalizing maximum.
    """

    reference_time: int
    max_time_weighted_amount: float
    time_weighted_amounts: np.ndarray
    fraud_rates: np.ndarray


def build_context(graph: PropertyGraph, reference_time: int | None = None) -> InterestContext:
    """Precompute per-edge time-weighted amounts and fraud rates.

    ``reference_time`` defaults to the latest transaction timestamp in the
    graph; an explicit value must not be earlier than that.
    """
    latest = graph.latest_timestamp
    if reference_time is None:
        reference_time = latest
    elif reference_time < latest:
        raise ValueError(
            f"reference time {reference_time} is earlier than the latest "
            f"transaction timestamp {latest}"
        )
    m = graph.edge_count
    if m == 0:
        tw = np.zeros(0)
        fr = np.zeros(0)
    else:
        eids, ts, amounts, fraud = graph.transaction_arrays()
        weights = amounts * np.exp(-(reference_time - ts) / WEEK_SECONDS)
        tw = np.bincount(eids, weights=weights, minlength=m)
        counts = np.bincount(eids, minlength=m)
        fr = np.bincount(eids, weights=fraud.astype(np.float64), minlength=m) / counts
    max_tw = float(tw.max()) if m else 0.0
    return InterestContext(int(reference_time), max_tw, tw, fr)


# -- node interest specs -------------------------------------------------------


class NodeInterestSpec:
    """Base class for node-interest functions; subclasses score one node."""

    kind = "abstract"

    def evaluate(self, graph: PropertyGraph, node_index: int) -> float:
        raise NotImplementedError

    def evaluate_all(self, graph: PropertyGraph) -> np.ndarray:
        """Score every node; subclasses may override with a vectorized path."""
        return np.fromiter(
            (self.evaluate(graph, i) for i in range(graph.node_count)),
            dtype=np.float64, count=graph.node_count,
        )

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class ConstantNodeInterest(NodeInterestSpec):
    """Every node gets the same score."""

    value: float = 1.0
    kind = "constant"

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ConfigError(f"constant node interest {self.value} outside [0, 1]")

    def evaluate(self, graph: PropertyGraph, node_index: int) -> float:
        return self.value

    def evaluate_all(self, graph: PropertyGraph) -> np.ndarray:
        return np.full(graph.node_count, self.value)

    def to_dict(self) -> dict:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True, slots=True)
class TypeTableNodeInterest(NodeInterestSpec):
    """Score nodes by a lookup table over node types."""

    table: Mapping[str, float] = field(default_factory=dict)
    default: float = 0.0
    kind = "type_table"

    def __post_init__(self):
        for node_type, value in self.table.items():
            if not (0.0 <= value <= 1.0):
                raise ConfigError(
                    f"type table value {value} for {node_type!r} outside [0, 1]"
                )
        if not (0.0 <= self.default <= 1.0):
            raise ConfigError(f"type table default {self.default} outside [0, 1]")

    def evaluate(self, graph: PropertyGraph, node_index: int) -> float:
        return self.table.get(graph.nodes[node_index].node_type, self.default)

    def to_dict(self) -> dict:
        return {"kind": "type_table", "table": dict(self.table), "default": self.default}


@dataclass(frozen=True, slots=True)
class AttributeTerm:
    """One weighted attribute contribution of an attribute-weighted spec.

    ``normalizer`` is either the string ``"max"`` (divide by the graph-wide
    maximum of the attribute) or a positive constant divisor.
    """

    key: str
    weight: float
    normalizer: float | str = "max"

    def __post_init__(self):
        if self.weight < 0:
            raise ConfigError(f"attribute weight for {self.key!r} must be >= 0")
        if isinstance(self.normalizer, str):
            if self.normalizer != "max":
                raise ConfigError(
                    f"normalizer for {self.key!r} must be 'max' or a positive number"
                )
        elif not (self.normalizer > 0):
            raise ConfigError(f"normalizer for {self.key!r} must be positive")


@dataclass(frozen=True, slots=True)
class AttributeWeightedNodeInterest(NodeInterestSpec):
    """Convex combination of normalized numeric node attributes.

    A missing attribute contributes 0 and emits an :class:`InterestWarning`;
    a normalized value outside [0, 1] is clamped, also with a warning. The
    pseudo-attribute ``degree`` resolves to the node degree when the node
    does not define it explicitly.
    """

    terms: tuple[AttributeTerm, ...] = ()
    kind = "attribute_weighted"

    def __post_init__(self):
        if not self.terms:
            raise ConfigError("attribute-weighted spec needs at least one term")
        total = sum(t.weight for t in self.terms)
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise ConfigError(f"attribute weights must sum to 1, got {total}")

    def evaluate(self, graph: PropertyGraph, node_index: int) -> float:
        score = 0.0
        for term in self.terms:
            raw = graph.attribute_value(node_index, term.key)
            if raw is None:
                warnings.warn(
                    f"node {graph.id_of(node_index)!r} has no numeric attribute "
                    f"{term.key!r}; contributing 0",
                    InterestWarning, stacklevel=2,
                )
                continue
            divisor = (graph.attribute_max(term.key)
                       if term.normalizer == "max" else float(term.normalizer))
            value = raw / divisor if divisor > 0 else 0.0
            if value < 0.0 or value > 1.0:
                warnings.warn(
                    f"attribute {term.key!r} normalized to {value}; clamping to [0, 1]",
                    InterestWarning, stacklevel=2,
                )
                value = min(max(value, 0.0), 1.0)
            score += term.weight * value
        return score

    def to_dict(self) -> dict:
        return {
            "kind": "attribute_weighted",
            "terms": [
                {"key": t.key, "weight": t.weight, "normalizer": t.normalizer}
                for t in self.terms
            ],
        }


# -- edge interest specs -------------------------------------------------------


class EdgeInterestSpec:
    """Base class for edge-interest functions; subclasses score one edge."""

    kind = "abstract"

    def evaluate(self, graph: PropertyGraph, edge_index: int, context: InterestContext) -> float:
        raise NotImplementedError

    def evaluate_all(self, graph: PropertyGraph, context: InterestContext) -> np.ndarray:
        return np.fromiter(
            (self.evaluate(graph, i, context) for i in range(graph.edge_count)),
            dtype=np.float64, count=graph.edge_count,
        )

    def reference_time_override(self) -> int | None:
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class ConstantEdgeInterest(EdgeInterestSpec):
    """Every edge gets the same score."""

    value: float = 0.5
    kind = "constant"

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ConfigError(f"constant edge interest {self.value} outside [0, 1]")

    def evaluate(self, graph: PropertyGraph, edge_index: int, context: InterestContext) -> float:
        return self.value

    def evaluate_all(self, graph: PropertyGraph, context: InterestContext) -> np.ndarray:
        return np.full(graph.edge_count, self.value)

    def to_dict(self) -> dict:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True, slots=True)
class FraudTimeWeightedEdgeInterest(EdgeInterestSpec):
    """Blend of relative time-weighted amount and per-edge fraud rate.

    Score = tw_amount / (2 * max_tw_amount) + fraud_rate / 2, which stays in
    [0, 1] by construction. When every edge carries zero amounts the amount
    term is defined as 0. ``reference_time`` pins the recency origin for
    reproducible replays; by default the latest transaction in the dataset
    is used.
    """

    reference_time: int | None = None
    kind = "fraud_time_weighted"

    def evaluate(self, graph: PropertyGraph, edge_index: int, context: InterestContext) -> float:
        max_tw = context.max_time_weighted_amount
        amount_term = 0.0
        if max_tw > 0:
            amount_term = float(context.time_weighted_amounts[edge_index]) / (2.0 * max_tw)
        return amount_term + float(context.fraud_rates[edge_index]) / 2.0

    def evaluate_all(self, graph: PropertyGraph, context: InterestContext) -> np.ndarray:
        max_tw = context.max_time_weighted_amount
        if max_tw > 0:
            return context.time_weighted_amounts / (2.0 * max_tw) + context.fraud_rates / 2.0
        return context.fraud_rates / 2.0

    def reference_time_override(self) -> int | None:
        return self.reference_time

    def to_dict(self) -> dict:
        out: dict = {"kind": "fraud_time_weighted"}
        if self.reference_time is not None:
            out["reference_time"] = self.reference_time
        return out


@dataclass(frozen=True, slots=True)
class WeightedSumEdgeInterest(EdgeInterestSpec):
    """Convex combination of other edge-interest specs."""

    terms: tuple[tuple[EdgeInterestSpec, float], ...] = ()
    kind = "weighted_sum"

    def __post_init__(self):
        if not self.terms:
            raise ConfigError("weighted-sum spec needs at least one term")
        total = 0.0
        for spec, weight in self.terms:
            if weight < 0:
                raise ConfigError(f"weighted-sum weight {weight} must be >= 0")
            total += weight
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise ConfigError(f"weighted-sum weights must sum to 1, got {total}")

    def evaluate(self, graph: PropertyGraph, edge_index: int, context: InterestContext) -> float:
        return sum(w * spec.evaluate(graph, edge_index, context) for spec, w in self.terms)

    def evaluate_all(self, graph: PropertyGraph, context: InterestContext) -> np.ndarray:
        total = np.zeros(graph.edge_count)
        for spec, weight in self.terms:
            total += weight * spec.evaluate_all(graph, context)
        return total

    def reference_time_override(self) -> int | None:
        overrides = {
            t for spec, _ in self.terms
            if (t := spec.reference_time_override()) is not None
        }
        if len(overrides) > 1:
            raise ConfigError(
                f"conflicting reference-time overrides in weighted sum: {sorted(overrides)}"
            )
        return overrides.pop() if overrides else None

    def to_dict(self) -> dict:
        return {
            "kind": "weighted_sum",
            "terms": [{"spec": spec.to_dict(), "weight": w} for spec, w in self.terms],
        }


# -- spec (de)serialization ----------------------------------------------------


def node_spec_from_dict(data: Mapping) -> NodeInterestSpec:
    """Build a node-interest spec from its tagged-dict form."""
    kind = _require_kind(data)
    if kind == "constant":
        return ConstantNodeInterest(_number(data, "value", default=1.0))
    if kind == "type_table":
        table = data.get("table")
        if not isinstance(table, Mapping):
            raise ConfigError("type_table spec needs a 'table' mapping")
        return TypeTableNodeInterest(dict(table), _number(data, "default", default=0.0))
    if kind == "attribute_weighted":
        raw_terms = data.get("terms")
        if not isinstance(raw_terms, Sequence) or not raw_terms:
            raise ConfigError("attribute_weighted spec needs a non-empty 'terms' list")
        terms = []
        for item in raw_terms:
            if not isinstance(item, Mapping) or "key" not in item:
                raise ConfigError("each attribute term needs at least a 'key'")
            terms.append(AttributeTerm(
                str(item["key"]),
                _number(item, "weight", default=1.0 / len(raw_terms)),
                item.get("normalizer", "max"),
            ))
        return AttributeWeightedNodeInterest(tuple(terms))
    raise ConfigError(f"unknown node interest kind {kind!r}")


def edge_spec_from_dict(data: Mapping) -> EdgeInterestSpec:
    """Build an edge-interest spec from its tagged-dict form."""
    kind = _require_kind(data)
    if kind == "constant":
        return ConstantEdgeInterest(_number(data, "value", default=0.5))
    if kind == "fraud_time_weighted":
        ref = data.get("reference_time")
        if ref is not None and not isinstance(ref, int):
            raise ConfigError("reference_time must be an integer timestamp")
        return FraudTimeWeightedEdgeInterest(ref)
    if kind == "weighted_sum":
        raw_terms = data.get("terms")
        if not isinstance(raw_terms, Sequence) or not raw_terms:
            raise ConfigError("weighted_sum spec needs a non-empty 'terms' list")
        terms = []
        for item in raw_terms:
            if not isinstance(item, Mapping) or "spec" not in item:
                raise ConfigError("each weighted_sum term needs a nested 'spec'")
            terms.append((edge_spec_from_dict(item["spec"]),
                          _number(item, "weight", default=1.0 / len(raw_terms))))
        return WeightedSumEdgeInterest(tuple(terms))
    raise ConfigError(f"unknown edge interest kind {kind!r}")


def _require_kind(data: Mapping) -> str:
    if not isinstance(data, Mapping) or "kind" not in data:
        raise ConfigError(f"interest spec must be a mapping with a 'kind' tag, got {data!r}")
    return str(data["kind"])


def _number(data: Mapping, key: str, *, default: float) -> float:
    value = data.get(key, default)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    return float(value)


# -- initialization --------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class InterestState:
    """Initial node and edge scores bound to one graph.

    ``reference_time`` is the recency origin actually used (the dataset's
    latest transaction timestamp unless the edge spec overrode it) and
    ``max_time_weighted_amount`` the graph-wide normalizer for amount terms.
    """

    graph: PropertyGraph
    node_scores: np.ndarray
    edge_scores: np.ndarray
    reference_time: int
    max_time_weighted_amount: float


def evaluate_vudie(spec: NodeInterestSpec, graph: PropertyGraph, node_id: str) -> float:
    """Score a single node by id."""
    return spec.evaluate(graph, graph.index_of(node_id))


def evaluate_ludie(spec: EdgeInterestSpec, graph: PropertyGraph, edge_index: int,
                   context: InterestContext) -> float:
    """Score a single edge given the graph-level context."""
    return spec.evaluate(graph, edge_index, context)


def initialize(graph: PropertyGraph, vudie: NodeInterestSpec,
               ludie: EdgeInterestSpec) -> InterestState:
    """Assign an interest score to every node and edge of the graph.

    Evaluation order never matters: specs are pure functions of the graph
    and the shared context.
    """
    context = build_context(graph, ludie.reference_time_override())
    node_scores = np.asarray(vudie.evaluate_all(graph), dtype=np.float64)
    edge_scores = np.asarray(ludie.evaluate_all(graph, context), dtype=np.float64)
    for label, scores in (("node", node_scores), ("edge", edge_scores)):
        if scores.size and (scores.min() < 0.0 or scores.max() > 1.0):
            raise ValueError(f"{label} interest scores escaped [0, 1]")
    return InterestState(
        graph=graph,
        node_scores=node_scores,
        edge_scores=edge_scores,
        reference_time=context.reference_time,
        max_time_weighted_amount=context.max_time_weighted_amount,
    )
