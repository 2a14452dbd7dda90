"""Shared test helpers: random graph generation and acceptance reporting."""

from __future__ import annotations

import numpy as np
import pytest

from gudie import Node, PropertyGraph, Transaction, build_graph

_acceptance_results: list[tuple[str, bool]] = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): marks a test as one acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        marker = item.get_closest_marker("acceptance")
        if marker is not None:
            name = marker.kwargs.get("name") or marker.args[0]
            _acceptance_results.append((name, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")


def random_graph_data(rng: np.random.Generator, max_nodes: int = 12,
                      density: float = 1.5):
    """A random sparse graph plus the raw ids/pairs it was built from.

    Returns (graph, ids, pairs) where pairs is a list of (src_id, dst_id)
    with no duplicates or self-loops. The raw form feeds the independent
    oracles so they never depend on the graph object under test.
    """
    n = int(rng.integers(2, max_nodes + 1))
    ids = [f"n{i}" for i in range(n)]
    all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    target = min(len(all_pairs), max(1, int(density * n)))
    m = int(rng.integers(1, target + 1))
    chosen = rng.choice(len(all_pairs), size=m, replace=False)
    pairs = [(ids[all_pairs[c][0]], ids[all_pairs[c][1]]) for c in chosen]

    records = []
    for src, dst in pairs:
        for _ in range(int(rng.integers(1, 4))):
            records.append((src, dst, Transaction(
                int(rng.integers(0, 10_000_000)),
                float(np.round(rng.random() * 1000, 2)),
                bool(rng.random() < 0.3),
            )))
    graph = build_graph([Node(i) for i in ids], records)
    return graph, ids, pairs


def random_graph(rng: np.random.Generator, max_nodes: int = 12,
                 density: float = 1.5) -> PropertyGraph:
    return random_graph_data(rng, max_nodes, density)[0]
