"""Built-in scenario graphs with expected outcomes, plus a benchmark generator.

The five scenarios mirror recurring patterns in transaction networks
(uninteresting direct edges, interesting indirect neighbors, low- and
high-fraud supernodes, interesting areas behind uninteresting edges). Each
comes with the node sets that must, and must not, appear in the seed's
GraphUnit under the default configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

import numpy as np

from .config import RunConfig, serialize_config
from .errors import ConfigError
from .graph import Node, PropertyGraph, Transaction, build_graph

DAY_SECONDS = 86_400
_BASE_TIME = 1_700_000_000

FIXTURE_NAMES = ("example1", "example2", "example3", "example4", "example5")


@dataclass(frozen=True, slots=True)
class ScenarioFixture:
    """A scenario graph plus the membership expectations for its seed's unit."""

    name: str
    description: str
    graph: PropertyGraph
    config: RunConfig
    seed: str
    expect_in: frozenset[str]
    expect_out: frozenset[str]

    def __post_init__(self):
        if self.expect_in & self.expect_out:
            raise ValueError("expect_in and expect_out overlap")
        if self.seed not in self.expect_in:
            raise ValueError("the seed must be part of expect_in")


def _tx(amount: float, *, fraud: bool = False, days_old: float = 0.0) -> Transaction:
    return Transaction(int(_BASE_TIME - days_old * DAY_SECONDS), amount, fraud)


def _entity_group(tag: str) -> list[Node]:
    """A merchant/device/ip triple involved in one transaction."""
    return [
        Node(f"M{tag}", "merchant"),
        Node(f"D{tag}", "device"),
        Node(f"IP{tag}", "ip"),
    ]


def _fixture_config() -> RunConfig:
    return RunConfig(seeds=("C1",))


def _example1() -> ScenarioFixture:
    nodes = [Node("C1", "customer")]
    nodes += _entity_group("1")  # legitimate purchase context
    nodes += _entity_group("2")  # fraudulent payment context
    txs = []
    for entity in ("M1", "D1", "IP1"):
        txs.append(("C1", entity, _tx(10.0)))
    for entity in ("M2", "D2", "IP2"):
        txs.append(("C1", entity, _tx(1000.0, fraud=True)))
    return ScenarioFixture(
        name="example1",
        description="One low-amount legitimate and one high-amount fraudulent "
                    "transaction; only the fraudulent group should surface.",
        graph=build_graph(nodes, txs),
        config=_fixture_config(),
        seed="C1",
        expect_in=frozenset({"C1", "M2", "D2", "IP2"}),
        expect_out=frozenset({"M1", "D1", "IP1"}),
    )


def _example2() -> ScenarioFixture:
    nodes = [
        Node("C1", "customer"),
        Node("M1", "merchant"),
        Node("C2", "customer"),
        Node("D2", "device"),
        Node("IP2", "ip"),
    ]
    txs = [
        ("C1", "M1", _tx(500.0)),
        ("C2", "M1", _tx(1000.0, fraud=True, days_old=3)),
        ("C2", "D2", _tx(1000.0, fraud=True, days_old=3)),
        ("C2", "IP2", _tx(1000.0, fraud=True, days_old=3)),
    ]
    return ScenarioFixture(
        name="example2",
        description="A legitimate purchase on a merchant where another customer "
                    "committed fraud; the unit should reach that customer.",
        graph=build_graph(nodes, txs),
        config=_fixture_config(),
        seed="C1",
        expect_in=frozenset({"C1", "M1", "C2"}),
        expect_out=frozenset(),
    )


def _supernode_example(name: str, description: str, fraud_customers: int,
                       expect_in: Iterable[str], expect_out: Iterable[str]) -> ScenarioFixture:
    other_customers = [f"C{i}" for i in range(2, 11)]
    nodes = [
        Node("C1", "customer"),
        Node("M1", "merchant"),
        Node("D1", "device"),
        Node("IP1", "ip"),
    ] + [Node(c, "customer") for c in other_customers]
    txs = [
        ("C1", "M1", _tx(1000.0)),
        ("C1", "D1", _tx(1000.0)),
        ("C1", "IP1", _tx(1000.0)),
    ]
    for i, customer in enumerate(other_customers):
        txs.append((customer, "M1", _tx(500.0, fraud=i < fraud_customers)))
    return ScenarioFixture(
        name=name,
        description=description,
        graph=build_graph(nodes, txs),
        config=_fixture_config(),
        seed="C1",
        expect_in=frozenset(expect_in),
        expect_out=frozenset(expect_out),
    )


def _example3() -> ScenarioFixture:
    # 10 transactions reach the merchant, exactly 1 fraudulent: 10% fraud rate
    return _supernode_example(
        "example3",
        "A large merchant with a 10% fraud rate; its customer fan stays out "
        "of the unit.",
        fraud_customers=1,
        expect_in={"C1"},
        expect_out={f"C{i}" for i in range(2, 11)},
    )


def _example4() -> ScenarioFixture:
    # identical topology and amounts, but 4 of 10 transactions fraudulent: 40%
    return _supernode_example(
        "example4",
        "The same merchant with a 40% fraud rate; the merchant enters the "
        "unit but its other customers stay out.",
        fraud_customers=4,
        expect_in={"C1", "M1"},
        expect_out={f"C{i}" for i in range(2, 11)},
    )


def _example5() -> ScenarioFixture:
    nodes = [
        Node("C1", "customer"),
        Node("M1", "merchant"),
        Node("M2", "merchant"),
        Node("D1", "device"),
        Node("IP1", "ip"),
        Node("C2", "customer"),
        Node("D2", "device"),
        Node("IP2", "ip"),
    ]
    txs = [
        ("C1", "M1", _tx(20.0)),
        ("C1", "M2", _tx(10.0)),
        ("C1", "D1", _tx(10.0)),
        ("C1", "IP1", _tx(10.0)),
        ("M1", "C2", _tx(1000.0, fraud=True, days_old=1)),
        ("C2", "D2", _tx(1000.0, fraud=True, days_old=1)),
        ("C2", "IP2", _tx(1000.0, fraud=True, days_old=1)),
    ]
    return ScenarioFixture(
        name="example5",
        description="Only low-interest direct edges, but one merchant leads to "
                    "a fraudulent customer; the unit should reach it.",
        graph=build_graph(nodes, txs),
        config=_fixture_config(),
        seed="C1",
        expect_in=frozenset({"C1", "M1", "C2"}),
        expect_out=frozenset(),
    )


_BUILDERS = {1: _example1, 2: _example2, 3: _example3, 4: _example4, 5: _example5}


def make_example(index: int) -> ScenarioFixture:
    """Build one of the five scenario fixtures (1 through 5)."""
    if index not in _BUILDERS:
        raise ConfigError(f"unknown example index {index}; expected 1..5")
    return _BUILDERS[index]()


def fixture_by_name(name: str) -> ScenarioFixture:
    """Look up a fixture by its external name, e.g. ``example2``."""
    if name not in FIXTURE_NAMES:
        raise ConfigError(
            f"unknown fixture {name!r}; expected one of {', '.join(FIXTURE_NAMES)}"
        )
    return make_example(FIXTURE_NAMES.index(name) + 1)


def fixture_manifest(fixture: ScenarioFixture) -> dict:
    """Counts and expectations of a fixture, for export alongside its CSVs."""
    return {
        "name": fixture.name,
        "description": fixture.description,
        "seed": fixture.seed,
        "expect_in": sorted(fixture.expect_in),
        "expect_out": sorted(fixture.expect_out),
        "node_count": fixture.graph.node_count,
        "edge_count": fixture.graph.edge_count,
    }


def export_fixture(fixture: ScenarioFixture, directory: str | Path) -> dict[str, Path]:
    """Write a fixture as the standard CSV pair plus manifest and config."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "nodes": directory / "nodes.csv",
        "transactions": directory / "transactions.csv",
        "manifest": directory / "manifest.json",
        "config": directory / "config.yaml",
    }
    fixture.graph.save(paths["nodes"], paths["transactions"])
    paths["manifest"].write_text(json.dumps(fixture_manifest(fixture), indent=2) + "\n")
    config = replace(fixture.config,
                     nodes_path=str(paths["nodes"]),
                     transactions_path=str(paths["transactions"]))
    paths["config"].write_text(serialize_config(config))
    return paths


# -- synthetic benchmark graphs --------------------------------------------------


def make_powerlaw(n_nodes: int, rng_seed: int, exponent: float = 2.5,
                  fraud_ratio: float = 0.05, max_retries: int = 20) -> PropertyGraph:
    """Random graph with a power-law degree sequence and synthetic transactions.

    Degrees are drawn from a Pareto tail with the given exponent, checked for
    graphicality (redrawn up to ``max_retries`` times), then wired by random
    stub matching; self-loops are dropped and repeated pairs aggregate into
    multi-transaction edges. Deterministic for a fixed ``rng_seed``.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    if exponent <= 1.0:
        raise ValueError("power-law exponent must be > 1")
    if not (0.0 <= fraud_ratio <= 1.0):
        raise ValueError("fraud_ratio must be in [0, 1]")
    rng = np.random.default_rng(rng_seed)

    degrees = None
    for _ in range(max_retries):
        u = rng.random(n_nodes)
        draw = np.ceil(u ** (-1.0 / (exponent - 1.0))).astype(np.int64)
        draw = np.minimum(draw, n_nodes - 1)
        if draw.sum() % 2 == 1:
            draw[int(np.argmin(draw))] += 1
        if _is_graphical(draw):
            degrees = draw
            break
    if degrees is None:
        raise ValueError(
            f"could not draw a graphical degree sequence in {max_retries} attempts"
        )

    stubs = np.repeat(np.arange(n_nodes, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    a, b = stubs[0::2], stubs[1::2]
    keep = a != b
    a, b = a[keep], b[keep]

    count = a.size
    timestamps = _BASE_TIME - rng.integers(0, 28 * DAY_SECONDS, size=count)
    amounts = np.round(rng.lognormal(4.0, 1.0, size=count), 2)
    fraud = rng.random(count) < fraud_ratio

    nodes = [Node(f"N{i}", "generic") for i in range(n_nodes)]
    records = [
        (f"N{int(a[i])}", f"N{int(b[i])}",
         Transaction(int(timestamps[i]), float(amounts[i]), bool(fraud[i])))
        for i in range(count)
    ]
    return build_graph(nodes, records)


def _is_graphical(degrees: np.ndarray) -> bool:
    """Erdos-Gallai test: can this degree sequence be realized by a simple graph?"""
    d = np.sort(degrees)[::-1].astype(np.int64)
    n = d.size
    if d.sum() % 2 == 1 or (n and d[0] >= n):
        return False
    prefix = np.cumsum(d)
    total = int(prefix[-1])
    for k in range(1, n + 1):
        # sum over i > k of min(d_i, k); d is non-increasing so the tail
        # splits at the first entry below k
        tail = d[k:]
        split = int(np.searchsorted(-tail, -k, side="right"))
        tail_sum = split * k + (total - int(prefix[k + split - 1]))
        if int(prefix[k - 1]) > k * (k - 1) + tail_sum:
            return False
    return True
