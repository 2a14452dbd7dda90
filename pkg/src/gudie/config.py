"""Run configuration: defaults, validation, and YAML round-tripping.

A run is fully described by one structured document. Defaults are written
out explicitly by ``init-config`` so runs are self-documenting.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import yaml

from .errors import ConfigError
from .expansion import DECAYS
from .graphunits import EDGE_MODES
from .interest import (
    ConstantNodeInterest,
    EdgeInterestSpec,
    FraudTimeWeightedEdgeInterest,
    NodeInterestSpec,
    edge_spec_from_dict,
    node_spec_from_dict,
)
from .propagation import AGGREGATORS

DEFAULT_BUDGET = 1_000_000


@dataclass(slots=True)
class RunConfig:
    """Everything a pipeline run needs: data, interest specs, and knobs."""

    nodes_path: str | None = None
    transactions_path: str | None = None
    vudie: NodeInterestSpec = field(default_factory=lambda: ConstantNodeInterest(1.0))
    ludie: EdgeInterestSpec = field(default_factory=FraudTimeWeightedEdgeInterest)
    hops: int = 5
    threshold: float = 0.7
    gamma: str = "mean_blend"
    theta: str = "exponential"
    seeds: tuple[str, ...] = ()
    edge_mode: str = "induced"
    budget: int = DEFAULT_BUDGET
    threads: int = 0
    out_dir: str = "gudie-out"

    def validate(self) -> None:
        if not isinstance(self.hops, int) or isinstance(self.hops, bool) or self.hops < 0:
            raise ConfigError(f"h must be a non-negative integer, got {self.hops!r}")
        if (not isinstance(self.threshold, (int, float)) or isinstance(self.threshold, bool)
                or not (0.0 <= self.threshold <= 1.0)):
            raise ConfigError(f"k must be in [0, 1], got {self.threshold!r}")
        if self.gamma not in AGGREGATORS:
            raise ConfigError(f"gamma must be one of {AGGREGATORS}, got {self.gamma!r}")
        if self.theta not in DECAYS:
            raise ConfigError(f"theta must be one of {DECAYS}, got {self.theta!r}")
        if self.edge_mode not in EDGE_MODES:
            raise ConfigError(f"edge_mode must be one of {EDGE_MODES}, got {self.edge_mode!r}")
        if not isinstance(self.budget, int) or self.budget < 1:
            raise ConfigError(f"budget must be a positive integer, got {self.budget!r}")
        if not isinstance(self.threads, int) or self.threads < 0:
            raise ConfigError(f"threads must be a non-negative integer, got {self.threads!r}")


_KNOWN_KEYS = {"graph", "vudie", "ludie", "h", "k", "gamma", "theta", "seeds",
               "edge_mode", "budget", "threads", "out"}


def config_to_dict(config: RunConfig) -> dict:
    return {
        "graph": {
            "nodes": config.nodes_path,
            "transactions": config.transactions_path,
        },
        "vudie": config.vudie.to_dict(),
        "ludie": config.ludie.to_dict(),
        "h": config.hops,
        "k": config.threshold,
        "gamma": config.gamma,
        "theta": config.theta,
        "seeds": list(config.seeds),
        "edge_mode": config.edge_mode,
        "budget": config.budget,
        "threads": config.threads,
        "out": config.out_dir,
    }


def config_from_dict(data: Mapping) -> RunConfig:
    if not isinstance(data, Mapping):
        raise ConfigError(f"config document must be a mapping, got {type(data).__name__}")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    defaults = RunConfig()

    graph_section = data.get("graph") or {}
    if not isinstance(graph_section, Mapping):
        raise ConfigError("'graph' must be a mapping with nodes/transactions paths")

    seeds = data.get("seeds", [])
    if seeds is None:
        seeds = []
    if not isinstance(seeds, (list, tuple)) or not all(isinstance(s, str) for s in seeds):
        raise ConfigError("'seeds' must be a list of node ids")

    config = RunConfig(
        nodes_path=graph_section.get("nodes"),
        transactions_path=graph_section.get("transactions"),
        vudie=(node_spec_from_dict(data["vudie"]) if "vudie" in data else defaults.vudie),
        ludie=(edge_spec_from_dict(data["ludie"]) if "ludie" in data else defaults.ludie),
        hops=data.get("h", defaults.hops),
        threshold=data.get("k", defaults.threshold),
        gamma=data.get("gamma", defaults.gamma),
        theta=data.get("theta", defaults.theta),
        seeds=tuple(seeds),
        edge_mode=data.get("edge_mode", defaults.edge_mode),
        budget=data.get("budget", defaults.budget),
        threads=data.get("threads", defaults.threads),
        out_dir=data.get("out", defaults.out_dir),
    )
    if isinstance(config.threshold, int) and not isinstance(config.threshold, bool):
        config.threshold = float(config.threshold)
    config.validate()
    return config


def serialize_config(config: RunConfig) -> str:
    return yaml.safe_dump(config_to_dict(config), sort_keys=False)


def parse_config(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from None
    if data is None:
        data = {}
    return config_from_dict(data)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    return parse_config(path.read_text())


def apply_overrides(config: RunConfig, **overrides) -> RunConfig:
    """Copy of the config with any non-None override applied, re-validated."""
    changes = {key: value for key, value in overrides.items() if value is not None}
    updated = replace(config, **changes)
    updated.validate()
    return updated
