"""Per-seed expansion search over propagated interest scores.

Starting from each seed, simple paths grow outward while the candidate
node's propagated interest, discounted by a distance decay, stays above
the seed's minimum-interest budget. Every admissible path is stored on the
node it ends at, so each node ends up knowing which expansions traverse it.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import ExpansionBudgetError
from .graph import PropertyGraph
from .propagation import PropagatedInterest

DECAYS = ("reciprocal", "exponential")

DEFAULT_BUDGET = 1_000_000


def decay(choice: str, path: Sequence) -> float:
    """Distance penalty of a path: 0 for a bare seed, approaching 1 with length.

    ``reciprocal`` grows as 1 - 1/len, ``exponential`` as 1 - e^(1-len);
    the exponential choice penalizes distance faster.
    """
    if not path:
        raise ValueError("decay is undefined for an empty path")
    return _decay_by_length(choice, len(path))


def _decay_by_length(choice: str, length: int) -> float:
    if choice == "reciprocal":
        return 1.0 - 1.0 / length
    if choice == "exponential":
        return 1.0 - math.exp(1.0 - length)
    raise ValueError(f"unknown decay choice {choice!r} (expected one of {DECAYS})")


@dataclass(frozen=True, slots=True)
class ExpansionParams:
    """Admissibility knobs: threshold fraction, decay choice, optional length cap."""

    threshold: float = 0.7
    decay: str = "exponential"
    max_path_length: int | None = None

    def __post_init__(self):
        if not (0.0 <= self.threshold <= 1.0):
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.decay not in DECAYS:
            raise ValueError(f"unknown decay choice {self.decay!r} (expected one of {DECAYS})")
        if self.max_path_length is not None and self.max_path_length < 1:
            raise ValueError("max_path_length must be a positive integer")


@dataclass(frozen=True, slots=True)
class Expansion:
    """A simple path from a seed plus the minimum interest it must sustain.

    Two expansions are equal iff their paths are equal element-wise; the
    budget is derived from the seed so it carries no extra identity.
    """

    min_interest: float = field(compare=False)
    path: tuple[int, ...]

    def __post_init__(self):
        if not self.path:
            raise ValueError("expansion path must contain at least the seed")


@dataclass(slots=True)
class ExpansionIndex:
    """All stored expansions, grouped by the node each path ends at.

    Unioned over path prefixes this is exactly "expansions traversing each
    node": a path ending at n has each prefix stored on that prefix's own
    endpoint.
    """

    graph: PropertyGraph
    per_node: dict[int, set[Expansion]]
    candidates_pruned: int = 0
    iterations: int = 0

    def total(self) -> int:
        return sum(len(s) for s in self.per_node.values())

    def all_expansions(self) -> Iterator[Expansion]:
        for expansions in self.per_node.values():
            yield from expansions

    def trace_lines(self) -> list[str]:
        """One line per stored path: ``seed_id:node,node,...``, sorted."""
        ids = self.graph.id_of
        lines = [
            f"{ids(g.path[0])}:{','.join(ids(i) for i in g.path)}"
            for g in self.all_expansions()
        ]
        return sorted(lines)


def admissible(expansion: Expansion, candidate: int, scores: PropagatedInterest,
               choice: str) -> bool:
    """Whether a stored path may extend to ``candidate``.

    The candidate must not already be on the path, and its propagated score
    discounted by the decay of the *current* path must clear the seed's
    minimum interest.
    """
    if candidate in expansion.path:
        return False
    factor = 1.0 - _decay_by_length(choice, len(expansion.path))
    return factor * float(scores.scores[candidate]) >= expansion.min_interest


def max_reachable_path_length(choice: str, min_interest: float,
                              max_score: float) -> int | None:
    """Largest path length whose decayed best-case score still clears the budget.

    Returns None when ``min_interest`` is 0 (every decayed positive score
    passes, so only the safety budget bounds the search). Used purely as a
    pruning bound: the admissibility test still decides every extension.
    """
    if min_interest <= 0.0:
        return None

    def clears(length: int) -> bool:
        return (1.0 - _decay_by_length(choice, length)) * max_score >= min_interest

    if max_score <= 0.0 or not clears(1):
        return 0
    if choice == "reciprocal":
        guess = int(max_score / min_interest)
    else:
        guess = int(1.0 + math.log(max_score / min_interest))
    guess = max(guess, 1)
    # the closed forms can be off by one ulp; settle on the exact predicate
    while clears(guess + 1):
        guess += 1
    while guess > 1 and not clears(guess):
        guess -= 1
    return guess


class _SharedBudget:
    """Thread-safe running count of stored expansions across all seeds."""

    __slots__ = ("limit", "used", "lock")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self.lock = threading.Lock()

    def charge(self, graph: PropertyGraph, seed: int) -> None:
        with self.lock:
            self.used += 1
            if self.used > self.limit:
                raise ExpansionBudgetError(graph.id_of(seed), self.limit)


def seeds_expansion(graph: PropertyGraph, scores: PropagatedInterest,
                    seeds: Sequence[str], params: ExpansionParams,
                    budget: int = DEFAULT_BUDGET, threads: int = 1) -> ExpansionIndex:
    """Grow every admissible expansion from each seed and index them by node.

    The search runs frontier by frontier: each iteration extends the paths
    stored in the previous one to admissible neighbors until no new path
    appears. Distinct seeds are searched independently (optionally in
    parallel); the stored set is identical for any worker count.
    """
    if scores.graph is not graph:
        raise ValueError("propagated scores are not bound to this graph")
    seed_indexes: list[int] = []
    for seed in seeds:
        idx = graph.index_of(seed)  # raises UnknownNodeError naming the seed
        if idx not in seed_indexes:
            seed_indexes.append(idx)

    shared = _SharedBudget(budget)
    max_score = float(scores.scores.max()) if graph.node_count else 0.0

    def search(seed: int) -> tuple[dict[int, set[Expansion]], int, int]:
        delta = float(scores.scores[seed]) * params.threshold
        bound = max_reachable_path_length(params.decay, delta, max_score)
        per_node: dict[int, set[Expansion]] = {}
        root = Expansion(delta, (seed,))
        per_node[seed] = {root}
        shared.charge(graph, seed)
        frontier = [root]
        pruned = 0
        iterations = 0
        score_values = scores.scores
        while frontier:
            iterations += 1
            next_frontier: list[Expansion] = []
            for g in frontier:
                length = len(g.path)
                if params.max_path_length is not None and length >= params.max_path_length:
                    continue
                if bound is not None and length > bound:
                    continue
                factor = 1.0 - _decay_by_length(params.decay, length)
                tail = g.path[-1]
                nbrs, _ = graph.neighbors_of_index(tail)
                for m in nbrs:
                    m = int(m)
                    if m in g.path or factor * float(score_values[m]) < delta:
                        pruned += 1
                        continue
                    extended = Expansion(delta, g.path + (m,))
                    stored = per_node.setdefault(m, set())
                    if extended not in stored:
                        stored.add(extended)
                        shared.charge(graph, seed)
                        next_frontier.append(extended)
            frontier = next_frontier
        return per_node, pruned, iterations

    if threads > 1 and len(seed_indexes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search, seed_indexes))
    else:
        results = [search(s) for s in seed_indexes]

    merged: dict[int, set[Expansion]] = {}
    pruned_total = 0
    iterations_max = 0
    for per_node, pruned, iterations in results:
        for node, expansions in per_node.items():
            merged.setdefault(node, set()).update(expansions)
        pruned_total += pruned
        iterations_max = max(iterations_max, iterations)
    return ExpansionIndex(graph, merged, pruned_total, iterations_max)
