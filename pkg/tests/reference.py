"""Independent reference implementations used as test oracles.

Everything here is deliberately written with plain dicts, lists, and
recursion so it shares no code path with the engines under test.
"""

from __future__ import annotations

import math


def naive_propagation(ids, edge_list, node_scores, hops, aggregator="mean_blend"):
    """Dict-based superstep simulator.

    ``edge_list`` is a list of (src_id, dst_id, edge_score). Each superstep
    sends score * edge_score both ways along every edge, then blends each
    node's previous score with the aggregate of its pool.
    """
    scores = dict(node_scores)
    for _ in range(hops):
        pools = {i: [] for i in ids}
        for src, dst, edge_score in edge_list:
            pools[dst].append(scores[src] * edge_score)
            pools[src].append(scores[dst] * edge_score)
        updated = {}
        for node_id in ids:
            pool = pools[node_id]
            previous = scores[node_id]
            if not pool:
                updated[node_id] = previous
            elif aggregator == "mean_blend":
                updated[node_id] = previous / 2.0 + sum(pool) / (2.0 * len(pool))
            elif aggregator == "max_blend":
                updated[node_id] = previous / 2.0 + max(pool) / 2.0
            elif aggregator == "min_blend":
                updated[node_id] = previous / 2.0 + min(pool) / 2.0
            else:
                raise ValueError(aggregator)
        scores = updated
    return scores


def enumerate_expansions(adjacency, node_scores, seeds, threshold, decay_choice,
                         max_path_length=None):
    """Exhaustive enumeration of admissible simple paths from each seed.

    ``adjacency`` maps node id to a collection of neighbor ids. Returns the
    set of stored path tuples; every prefix of a stored path is stored too.
    """
    found: set[tuple[str, ...]] = set()

    def factor(length: int) -> float:
        if decay_choice == "reciprocal":
            theta = 1.0 - 1.0 / length
        elif decay_choice == "exponential":
            theta = 1.0 - math.exp(1.0 - length)
        else:
            raise ValueError(decay_choice)
        return 1.0 - theta

    def extend(path: tuple[str, ...], minimum: float) -> None:
        found.add(path)
        length = len(path)
        if max_path_length is not None and length >= max_path_length:
            return
        decay_factor = factor(length)
        for neighbor in adjacency[path[-1]]:
            if neighbor in path:
                continue
            if decay_factor * node_scores[neighbor] >= minimum:
                extend(path + (neighbor,), minimum)

    for seed in seeds:
        extend((seed,), node_scores[seed] * threshold)
    return found


def adjacency_from_pairs(ids, pairs):
    adjacency = {i: [] for i in ids}
    for a, b in pairs:
        adjacency[a].append(b)
        adjacency[b].append(a)
    return adjacency
