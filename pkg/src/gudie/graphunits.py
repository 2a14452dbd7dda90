"""Assembly of per-seed GraphUnits from the expansion index.

A map phase emits a (seed, path) pair for every stored expansion; a reduce
phase unions the path node lists per seed. The resulting node sets are then
induced against the graph to fill in edges.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import UnknownNodeError
from .expansion import ExpansionIndex
from .graph import PropertyGraph
from .interest import fraud_rate

EDGE_MODES = ("induced", "path_edges")


@dataclass(frozen=True, slots=True)
class GraphUnit:
    """The context subgraph of one seed: a node set plus its edges.

    ``edges`` is None until the unit has been induced against a graph;
    ``path_pairs`` records the consecutive node pairs of the stored paths,
    which the ``path_edges`` mode uses instead of the full induced edge set.
    """

    seed: int
    node_set: frozenset[int]
    edges: tuple[int, ...] | None = None
    path_pairs: frozenset[tuple[int, int]] = frozenset()


def obtain_graphunits(index: ExpansionIndex) -> dict[int, GraphUnit]:
    """Group every stored expansion by its seed and union the path nodes.

    Map: each expansion yields (seed, path). Reduce: per seed, paths are
    folded into one node set. Every seed has at least its own expansion, so
    the mapping is total over the seeds that were expanded.
    """
    emitted: list[tuple[int, tuple[int, ...]]] = []
    for expansions in index.per_node.values():
        for expansion in expansions:
            emitted.append((expansion.path[0], expansion.path))

    nodes_by_seed: dict[int, set[int]] = defaultdict(set)
    pairs_by_seed: dict[int, set[tuple[int, int]]] = defaultdict(set)
    for seed, path in emitted:
        nodes_by_seed[seed].update(path)
        for a, b in zip(path, path[1:]):
            pairs_by_seed[seed].add((a, b) if a < b else (b, a))

    return {
        seed: GraphUnit(seed, frozenset(nodes), None, frozenset(pairs_by_seed[seed]))
        for seed, nodes in nodes_by_seed.items()
    }


def induce(graph: PropertyGraph, unit: GraphUnit, edge_mode: str = "induced") -> GraphUnit:
    """Fill in the unit's edges from the graph.

    ``induced`` keeps every graph edge whose endpoints are both in the node
    set; ``path_edges`` keeps only edges actually walked by stored paths.
    """
    if edge_mode not in EDGE_MODES:
        raise ValueError(f"unknown edge mode {edge_mode!r} (expected one of {EDGE_MODES})")
    n = graph.node_count
    for node in unit.node_set:
        if not (0 <= node < n):
            raise UnknownNodeError(str(node))

    if edge_mode == "induced":
        members = unit.node_set
        edge_ids = set()
        for node in members:
            nbrs, eids = graph.neighbors_of_index(node)
            for m, e in zip(nbrs, eids):
                if int(m) in members:
                    edge_ids.add(int(e))
        edges = tuple(sorted(edge_ids))
    else:
        edges = tuple(sorted(
            e for a, b in unit.path_pairs
            if (e := graph.edge_between(a, b)) is not None
        ))
    return GraphUnit(unit.seed, unit.node_set, edges, unit.path_pairs)


def unit_payload(graph: PropertyGraph, unit: GraphUnit,
                 propagated_scores: np.ndarray,
                 edge_scores: np.ndarray) -> dict:
    """JSON-ready view of one unit: nodes with scores, edges with scores.

    Node rows are sorted by id and edge rows by endpoint pair, so payloads
    are deterministic. Edge rows carry the raw transactions for inspection.
    """
    if unit.edges is None:
        raise ValueError("unit has no edges yet; call induce() first")
    nodes = sorted(unit.node_set, key=graph.id_of)
    node_rows = [
        {
            "id": graph.id_of(i),
            "type": graph.nodes[i].node_type,
            "score": float(propagated_scores[i]),
        }
        for i in nodes
    ]
    edge_rows = []
    for e in unit.edges:
        edge = graph.edges[e]
        src, dst = sorted((graph.id_of(edge.u), graph.id_of(edge.v)))
        edge_rows.append({
            "src": src,
            "dst": dst,
            "score": float(edge_scores[e]),
            "fraud_rate": fraud_rate(edge),
            "transactions": [
                {"timestamp": tx.timestamp, "amount": tx.amount, "is_fraud": tx.is_fraud}
                for tx in edge.transactions
            ],
        })
    edge_rows.sort(key=lambda row: (row["src"], row["dst"]))
    return {"seed": graph.id_of(unit.seed), "nodes": node_rows, "edges": edge_rows}


def units_payload(graph: PropertyGraph, units: Mapping[int, GraphUnit],
                  propagated_scores: np.ndarray, edge_scores: np.ndarray,
                  stats: dict | None = None) -> dict:
    """Full result document: every unit (sorted by seed id) plus run stats."""
    rows = [
        unit_payload(graph, units[seed], propagated_scores, edge_scores)
        for seed in sorted(units, key=graph.id_of)
    ]
    return {"units": rows, "stats": dict(stats or {})}


def to_dot(graph: PropertyGraph, unit: GraphUnit,
           propagated_scores: np.ndarray | None = None) -> str:
    """Render a unit as Graphviz DOT: seed double-circled, fraud edges red."""
    if unit.edges is None:
        raise ValueError("unit has no edges yet; call induce() first")
    lines = ["graph graphunit {", "  node [style=filled, fillcolor=white];"]
    for i in sorted(unit.node_set, key=graph.id_of):
        node = graph.nodes[i]
        label = node.id
        if propagated_scores is not None:
            label += f"\\n{float(propagated_scores[i]):.3f}"
        shape = "doublecircle" if i == unit.seed else "ellipse"
        lines.append(f'  "{node.id}" [label="{label}", shape={shape}];')
    for e in unit.edges:
        edge = graph.edges[e]
        src, dst = graph.id_of(edge.u), graph.id_of(edge.v)
        style = ' [color=red, penwidth=2]' if any(t.is_fraud for t in edge.transactions) else ""
        lines.append(f'  "{src}" -- "{dst}"{style};')
    lines.append("}")
    return "\n".join(lines)
