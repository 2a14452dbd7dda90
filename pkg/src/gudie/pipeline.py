"""End-to-end pipeline: initialize, propagate, expand, assemble units.

Also owns the on-disk layout of a run's artifacts, so batch stages can be
composed manually and the HTTP service can reuse the exact same result
builder.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from .config import RunConfig
from .errors import ConfigError, IngestionError
from .expansion import Expansion, ExpansionIndex, ExpansionParams, seeds_expansion
from .graph import PropertyGraph, load_graph
from .graphunits import GraphUnit, induce, obtain_graphunits, to_dot, units_payload
from .interest import InterestState, initialize
from .propagation import PropagatedInterest, PropagationParams, propagate_interest

NODE_SCORES_FILE = "node_scores.csv"
EDGE_SCORES_FILE = "edge_scores.csv"
PROPAGATED_FILE = "propagated.csv"
EXPANSIONS_FILE = "expansions.txt"
UNITS_FILE = "units.json"
REPORT_FILE = "report.json"
META_FILE = "meta.json"


@dataclass(slots=True)
class RunResult:
    """Everything a finished run produced, in memory."""

    config: RunConfig
    graph: PropertyGraph
    state: InterestState
    propagated: PropagatedInterest
    index: ExpansionIndex
    units: dict[int, GraphUnit]
    payload: dict
    timings: dict[str, float]


def resolve_threads(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


def expansion_params(config: RunConfig) -> ExpansionParams:
    return ExpansionParams(threshold=config.threshold, decay=config.theta)


def run_stats(index: ExpansionIndex) -> dict:
    return {
        "expansions": index.total(),
        "candidates_pruned": index.candidates_pruned,
        "iterations": index.iterations,
    }


def load_configured_graph(config: RunConfig) -> PropertyGraph:
    if not config.nodes_path or not config.transactions_path:
        raise ConfigError("config needs graph.nodes and graph.transactions paths")
    return load_graph(config.nodes_path, config.transactions_path)


def run_pipeline(config: RunConfig, graph: PropertyGraph | None = None) -> RunResult:
    """Execute all four stages on the configured (or supplied) graph."""
    config.validate()
    timings: dict[str, float] = {}

    if graph is None:
        started = time.perf_counter()
        graph = load_configured_graph(config)
        timings["load"] = time.perf_counter() - started

    started = time.perf_counter()
    state = initialize(graph, config.vudie, config.ludie)
    timings["initialize"] = time.perf_counter() - started

    started = time.perf_counter()
    propagated = propagate_interest(
        graph, state, PropagationParams(hops=config.hops, aggregator=config.gamma)
    )
    timings["propagate"] = time.perf_counter() - started

    started = time.perf_counter()
    index = seeds_expansion(
        graph, propagated, list(config.seeds), expansion_params(config),
        budget=config.budget, threads=resolve_threads(config.threads),
    )
    timings["expand"] = time.perf_counter() - started

    started = time.perf_counter()
    units = {
        seed: induce(graph, unit, config.edge_mode)
        for seed, unit in obtain_graphunits(index).items()
    }
    payload = units_payload(graph, units, propagated.scores, state.edge_scores,
                            run_stats(index))
    timings["units"] = time.perf_counter() - started

    return RunResult(config, graph, state, propagated, index, units, payload, timings)


# -- on-disk artifacts -----------------------------------------------------------


def _write_score_csv(path: Path, header: str, rows) -> None:
    with path.open("w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_initial_scores(out_dir: Path, graph: PropertyGraph, state: InterestState) -> None:
    _write_score_csv(
        out_dir / NODE_SCORES_FILE, "node_id,score",
        ((node.id, repr(float(score))) for node, score in zip(graph.nodes, state.node_scores)),
    )
    _write_score_csv(
        out_dir / EDGE_SCORES_FILE, "src,dst,score",
        ((*graph.edge_endpoints(e), repr(float(score)))
         for e, score in enumerate(state.edge_scores)),
    )
    meta = {
        "reference_time": state.reference_time,
        "max_time_weighted_amount": state.max_time_weighted_amount,
    }
    (out_dir / META_FILE).write_text(json.dumps(meta, indent=2) + "\n")


def read_initial_scores(out_dir: Path, graph: PropertyGraph) -> InterestState:
    node_scores = np.zeros(graph.node_count)
    for node_id, value in _read_csv_rows(out_dir / NODE_SCORES_FILE, 2):
        node_scores[graph.index_of(node_id)] = float(value)
    edge_scores = np.zeros(graph.edge_count)
    for src, dst, value in _read_csv_rows(out_dir / EDGE_SCORES_FILE, 3):
        e = graph.edge_between(graph.index_of(src), graph.index_of(dst))
        if e is None:
            raise IngestionError(f"edge scores reference missing edge {src!r}-{dst!r}")
        edge_scores[e] = float(value)
    meta = json.loads((out_dir / META_FILE).read_text())
    return InterestState(graph, node_scores, edge_scores,
                         meta["reference_time"], meta["max_time_weighted_amount"])


def write_propagated(out_dir: Path, graph: PropertyGraph,
                     propagated: PropagatedInterest) -> None:
    _write_score_csv(
        out_dir / PROPAGATED_FILE, "node_id,score",
        ((node.id, repr(float(score)))
         for node, score in zip(graph.nodes, propagated.scores)),
    )


def read_propagated(out_dir: Path, graph: PropertyGraph, hops: int) -> PropagatedInterest:
    scores = np.zeros(graph.node_count)
    for node_id, value in _read_csv_rows(out_dir / PROPAGATED_FILE, 2):
        scores[graph.index_of(node_id)] = float(value)
    return PropagatedInterest(graph, scores, hops)


def write_expansions(out_dir: Path, index: ExpansionIndex) -> None:
    (out_dir / EXPANSIONS_FILE).write_text(
        "".join(line + "\n" for line in index.trace_lines())
    )
    (out_dir / "expand_stats.json").write_text(
        json.dumps(run_stats(index), indent=2) + "\n"
    )


def read_expansions(out_dir: Path, graph: PropertyGraph,
                    propagated: PropagatedInterest, threshold: float) -> ExpansionIndex:
    per_node: dict[int, set] = {}
    text = (out_dir / EXPANSIONS_FILE).read_text()
    for line in text.splitlines():
        if not line.strip():
            continue
        seed_id, _, path_text = line.partition(":")
        path = tuple(graph.index_of(node_id) for node_id in path_text.split(","))
        delta = float(propagated.scores[path[0]]) * threshold
        per_node.setdefault(path[-1], set()).add(Expansion(delta, path))
    stats_path = out_dir / "expand_stats.json"
    stats = json.loads(stats_path.read_text()) if stats_path.exists() else {}
    return ExpansionIndex(graph, per_node,
                          stats.get("candidates_pruned", 0), stats.get("iterations", 0))


def write_units(out_dir: Path, payload: Mapping) -> None:
    (out_dir / UNITS_FILE).write_text(json.dumps(payload, indent=2) + "\n")


def write_report(out_dir: Path, result: RunResult) -> None:
    report = {
        "timings_seconds": {k: round(v, 6) for k, v in result.timings.items()},
        "stats": run_stats(result.index),
        "graph": result.graph.summary(),
    }
    (out_dir / REPORT_FILE).write_text(json.dumps(report, indent=2) + "\n")


def write_dot_files(out_dir: Path, result: RunResult) -> None:
    for seed, unit in result.units.items():
        seed_id = result.graph.id_of(seed)
        path = out_dir / f"unit_{seed_id}.dot"
        path.write_text(to_dot(result.graph, unit, result.propagated.scores) + "\n")


def write_outputs(result: RunResult, out_dir: str | Path, dot: bool = False) -> Path:
    """Persist every artifact of a finished run under one directory."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_initial_scores(out_dir, result.graph, result.state)
    write_propagated(out_dir, result.graph, result.propagated)
    write_expansions(out_dir, result.index)
    write_units(out_dir, result.payload)
    write_report(out_dir, result)
    if dot:
        write_dot_files(out_dir, result)
    return out_dir


def _read_csv_rows(path: Path, width: int):
    text = path.read_text()
    for lineno, line in enumerate(text.splitlines()):
        if lineno == 0 or not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != width:
            raise IngestionError(
                f"expected {width} fields, got {len(parts)}",
                file=str(path), line=lineno + 1,
            )
        yield parts
