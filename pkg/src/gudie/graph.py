"""Attributed property-graph data model, validation, and flat-file ingestion.

Nodes carry a type tag and an open attribute map. Edges are undirected,
one per node pair, and aggregate every transaction observed between the
two endpoints. Node ids are strings externally and dense integer indexes
internally; all heavy per-node/per-edge state lives in numpy arrays keyed
by those indexes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import IngestionError, UnknownNodeError

NODE_TYPES = ("customer", "merchant", "device", "ip", "generic")

AttrValue = int | float | str

_NODES_REQUIRED = ("id", "type")
_TX_REQUIRED = ("src", "dst", "timestamp", "amount", "is_fraud")


@dataclass(frozen=True, slots=True)
class Transaction:
    """A single transfer record: when, how much, and whether it was fraudulent."""

    timestamp: int
    amount: float
    is_fraud: bool

    def __post_init__(self):
        if self.timestamp < 0:
            raise ValueError(f"transaction timestamp must be >= 0, got {self.timestamp}")
        if not (self.amount >= 0):
            raise ValueError(f"transaction amount must be >= 0, got {self.amount}")


@dataclass(frozen=True, slots=True)
class Node:
    """A graph entity: a stable id, a type tag, and optional scalar attributes.

    Attribute values are canonicalized with the same rule the CSV reader
    uses (numeric-looking strings become numbers), so a graph always equals
    its own save/load round trip.
    """

    id: str
    node_type: str = "generic"
    attributes: Mapping[str, AttrValue] = field(default_factory=dict)

    def __post_init__(self):
        if self.node_type not in NODE_TYPES:
            raise ValueError(
                f"node {self.id!r}: unknown node type {self.node_type!r} "
                f"(expected one of {', '.join(NODE_TYPES)})"
            )
        if any(isinstance(v, str) for v in self.attributes.values()):
            object.__setattr__(self, "attributes", {
                k: _parse_attribute(v) if isinstance(v, str) else v
                for k, v in self.attributes.items()
            })


@dataclass(frozen=True, slots=True)
class Edge:
    """Undirected edge between two internal node indexes.

    Aggregates every transaction between the pair; ``u < v`` always holds.
    """

    u: int
    v: int
    transactions: tuple[Transaction, ...]

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"self-loop edge on node index {self.u}")
        if self.u > self.v:
            raise ValueError(f"edge endpoints must satisfy u < v, got ({self.u}, {self.v})")
        if not self.transactions:
            raise ValueError(f"edge ({self.u}, {self.v}) has no transactions")


class PropertyGraph:
    """Immutable undirected graph with per-node adjacency in CSR layout.

    Safe for concurrent read access once constructed. Adjacency lists are
    sorted by neighbor index, so traversal order is deterministic.
    """

    def __init__(self, nodes: Sequence[Node], edges: Sequence[Edge]):
        self._nodes = tuple(nodes)
        self._index: dict[str, int] = {}
        for i, node in enumerate(self._nodes):
            if node.id in self._index:
                raise IngestionError(f"duplicate node id {node.id!r}")
            self._index[node.id] = i

        n = len(self._nodes)
        seen_pairs: set[tuple[int, int]] = set()
        for edge in edges:
            if not (0 <= edge.u < n and 0 <= edge.v < n):
                raise IngestionError(
                    f"edge ({edge.u}, {edge.v}) references a node index outside [0, {n})"
                )
            if (edge.u, edge.v) in seen_pairs:
                raise IngestionError(f"duplicate edge for node pair ({edge.u}, {edge.v})")
            seen_pairs.add((edge.u, edge.v))
        # Canonical edge order: sorted by endpoint pair. This makes graph
        # construction insensitive to input record order.
        self._edges = tuple(sorted(edges, key=lambda e: (e.u, e.v)))

        self._build_adjacency()
        self._tx_arrays: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None = None
        self._attr_max: dict[str, float] = {}

    def _build_adjacency(self) -> None:
        n = len(self._nodes)
        m = len(self._edges)
        if m:
            us = np.fromiter((e.u for e in self._edges), dtype=np.int64, count=m)
            vs = np.fromiter((e.v for e in self._edges), dtype=np.int64, count=m)
            eids = np.arange(m, dtype=np.int64)
            owners = np.concatenate([us, vs])
            others = np.concatenate([vs, us])
            edge_ids = np.concatenate([eids, eids])
            order = np.lexsort((others, owners))
            owners, others, edge_ids = owners[order], others[order], edge_ids[order]
        else:
            owners = others = edge_ids = np.empty(0, dtype=np.int64)
        self._degrees = np.bincount(owners, minlength=n).astype(np.int64)
        self._adj_offsets = np.concatenate([[0], np.cumsum(self._degrees)]).astype(np.int64)
        self._adj_neighbors = others
        self._adj_edges = edge_ids
        self._adj_owners = owners
        self._pair_index = {(e.u, e.v): i for i, e in enumerate(self._edges)}

    # -- basic accessors ---------------------------------------------------

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self._nodes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def adjacency_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """CSR adjacency: (offsets, neighbor indexes, edge indexes, owner indexes)."""
        return self._adj_offsets, self._adj_neighbors, self._adj_edges, self._adj_owners

    def has_node(self, node_id: str) -> bool:
        return node_id in self._index

    def index_of(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def id_of(self, index: int) -> str:
        return self._nodes[index].id

    def node(self, node_id: str) -> Node:
        return self._nodes[self.index_of(node_id)]

    def degree(self, index: int) -> int:
        return int(self._degrees[index])

    def neighbors_of_index(self, index: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor indexes and incident edge indexes of a node, ascending."""
        lo, hi = self._adj_offsets[index], self._adj_offsets[index + 1]
        return self._adj_neighbors[lo:hi], self._adj_edges[lo:hi]

    def neighbors(self, node_id: str) -> list[tuple[str, int]]:
        """Adjacency of a node as (neighbor id, edge index) pairs.

        Order is deterministic: ascending internal neighbor index.
        """
        nbrs, eids = self.neighbors_of_index(self.index_of(node_id))
        return [(self._nodes[m].id, int(e)) for m, e in zip(nbrs, eids)]

    def edge_between(self, u: int, v: int) -> int | None:
        """Edge index for an internal node pair, or None if absent."""
        if u > v:
            u, v = v, u
        return self._pair_index.get((u, v))

    def edge_endpoints(self, edge_index: int) -> tuple[str, str]:
        edge = self._edges[edge_index]
        return self._nodes[edge.u].id, self._nodes[edge.v].id

    # -- derived, cached views ----------------------------------------------

    @property
    def latest_timestamp(self) -> int:
        """Most recent transaction timestamp anywhere in the graph (0 if none)."""
        latest = 0
        for edge in self._edges:
            for tx in edge.transactions:
                if tx.timestamp > latest:
                    latest = tx.timestamp
        return latest

    def transaction_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """All transactions flattened: (edge index, timestamp, amount, is_fraud)."""
        if self._tx_arrays is None:
            eids: list[int] = []
            ts: list[int] = []
            amounts: list[float] = []
            fraud: list[bool] = []
            for i, edge in enumerate(self._edges):
                for tx in edge.transactions:
                    eids.append(i)
                    ts.append(tx.timestamp)
                    amounts.append(tx.amount)
                    fraud.append(tx.is_fraud)
            self._tx_arrays = (
                np.asarray(eids, dtype=np.int64),
                np.asarray(ts, dtype=np.int64),
                np.asarray(amounts, dtype=np.float64),
                np.asarray(fraud, dtype=bool),
            )
        return self._tx_arrays

    def attribute_value(self, index: int, key: str) -> float | None:
        """Numeric attribute of a node; ``degree`` falls back to the topology."""
        value = self._nodes[index].attributes.get(key)
        if value is None:
            if key == "degree":
                return float(self._degrees[index])
            return None
        if isinstance(value, (int, float)):
            return float(value)
        return None

    def attribute_max(self, key: str) -> float:
        """Maximum numeric value of an attribute over all nodes (0 if never set)."""
        if key not in self._attr_max:
            best = 0.0
            for i in range(len(self._nodes)):
                v = self.attribute_value(i, key)
                if v is not None and v > best:
                    best = v
            self._attr_max[key] = best
        return self._attr_max[key]

    def summary(self) -> dict:
        """Node/edge/transaction counts, nodes broken down by type."""
        by_type: dict[str, int] = {}
        for node in self._nodes:
            by_type[node.node_type] = by_type.get(node.node_type, 0) + 1
        tx_count = sum(len(e.transactions) for e in self._edges)
        return {
            "nodes": self.node_count,
            "edges": self.edge_count,
            "transactions": tx_count,
            "nodes_by_type": dict(sorted(by_type.items())),
        }

    # -- persistence ---------------------------------------------------------

    def save(self, nodes_path: str | Path, transactions_path: str | Path) -> None:
        save_graph(self, nodes_path, transactions_path)


def build_graph(nodes: Sequence[Node],
                raw_transactions: Iterable[tuple[str, str, Transaction]]) -> PropertyGraph:
    """Assemble a PropertyGraph from node definitions and transaction records.

    Transactions between the same unordered node pair are aggregated onto a
    single edge; per-edge transaction lists are stored in a canonical order
    so the result is independent of input record order.
    """
    index: dict[str, int] = {}
    for node in nodes:
        if node.id in index:
            raise IngestionError(f"duplicate node id {node.id!r}")
        index[node.id] = len(index)

    grouped: dict[tuple[int, int], list[Transaction]] = {}
    for src, dst, tx in raw_transactions:
        if src not in index:
            raise IngestionError(f"transaction references unknown node id {src!r}")
        if dst not in index:
            raise IngestionError(f"transaction references unknown node id {dst!r}")
        u, v = index[src], index[dst]
        if u == v:
            raise IngestionError(f"self-loop transaction on node {src!r}")
        if u > v:
            u, v = v, u
        grouped.setdefault((u, v), []).append(tx)

    edges = [
        Edge(u, v, tuple(sorted(txs, key=lambda t: (t.timestamp, t.amount, t.is_fraud))))
        for (u, v), txs in grouped.items()
    ]
    return PropertyGraph(nodes, edges)


def _parse_attribute(text: str) -> AttrValue:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def _format_attribute(value: AttrValue) -> str:
    return str(value)


def load_graph(nodes_path: str | Path, transactions_path: str | Path) -> PropertyGraph:
    """Load a graph from the standard nodes/transactions CSV pair."""
    nodes = _read_nodes_csv(nodes_path)
    raw = _read_transactions_csv(transactions_path)
    return build_graph(nodes, raw)


def _read_nodes_csv(path: str | Path) -> list[Node]:
    path = Path(path)
    nodes: list[Node] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError("empty nodes file", file=str(path)) from None
        for col in _NODES_REQUIRED:
            if col not in header:
                raise IngestionError(f"missing required column {col!r}", file=str(path), line=1)
        id_col = header.index("id")
        type_col = header.index("type")
        attr_cols = [(i, name) for i, name in enumerate(header) if name not in _NODES_REQUIRED]
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise IngestionError(
                    f"expected {len(header)} fields, got {len(row)}",
                    file=str(path), line=lineno,
                )
            node_type = row[type_col]
            if node_type not in NODE_TYPES:
                raise IngestionError(
                    f"unknown node type {node_type!r}",
                    file=str(path), line=lineno, column="type",
                )
            attributes = {
                name: _parse_attribute(row[i]) for i, name in attr_cols if row[i] != ""
            }
            nodes.append(Node(row[id_col], node_type, attributes))
    return nodes


def _read_transactions_csv(path: str | Path) -> list[tuple[str, str, Transaction]]:
    path = Path(path)
    records: list[tuple[str, str, Transaction]] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError("empty transactions file", file=str(path)) from None
        for col in _TX_REQUIRED:
            if col not in header:
                raise IngestionError(f"missing required column {col!r}", file=str(path), line=1)
        cols = {name: header.index(name) for name in _TX_REQUIRED}
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise IngestionError(
                    f"expected {len(header)} fields, got {len(row)}",
                    file=str(path), line=lineno,
                )

            def cell(name: str) -> str:
                return row[cols[name]]

            try:
                timestamp = int(cell("timestamp"))
            except ValueError:
                raise IngestionError(
                    f"timestamp {cell('timestamp')!r} is not an integer",
                    file=str(path), line=lineno, column="timestamp",
                ) from None
            try:
                amount = float(cell("amount"))
            except ValueError:
                raise IngestionError(
                    f"amount {cell('amount')!r} is not a number",
                    file=str(path), line=lineno, column="amount",
                ) from None
            flag = cell("is_fraud")
            if flag not in ("0", "1"):
                raise IngestionError(
                    f"is_fraud must be 0 or 1, got {flag!r}",
                    file=str(path), line=lineno, column="is_fraud",
                )
            try:
                tx = Transaction(timestamp, amount, flag == "1")
            except ValueError as exc:
                raise IngestionError(str(exc), file=str(path), line=lineno) from None
            records.append((cell("src"), cell("dst"), tx))
    return records


def save_graph(graph: PropertyGraph, nodes_path: str | Path,
               transactions_path: str | Path) -> None:
    """Write a graph back to the standard CSV pair.

    Rows are ordered by internal index and values round-trip bit-exactly
    through ``load_graph``.
    """
    attr_keys = sorted({k for node in graph.nodes for k in node.attributes})
    with Path(nodes_path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "type", *attr_keys])
        for node in graph.nodes:
            row = [node.id, node.node_type]
            for key in attr_keys:
                value = node.attributes.get(key)
                row.append("" if value is None else _format_attribute(value))
            writer.writerow(row)
    with Path(transactions_path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(_TX_REQUIRED))
        for edge in graph.edges:
            src, dst = graph.nodes[edge.u].id, graph.nodes[edge.v].id
            for tx in edge.transactions:
                writer.writerow([src, dst, tx.timestamp, repr(tx.amount), int(tx.is_fraud)])


def neighbors(graph: PropertyGraph, node_id: str) -> list[tuple[str, int]]:
    """Module-level alias for :meth:`PropertyGraph.neighbors`."""
    return graph.neighbors(node_id)
