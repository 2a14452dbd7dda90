"""Batch command-line interface.

Subcommands cover the full pipeline (``run``), its individual stages
(``score``, ``propagate``, ``expand``, ``units``) composed through a shared
output directory, the built-in example scenarios, a synthetic benchmark,
and the HTTP service. Exit codes: 0 success, 2 configuration error,
3 data error, 4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time
from pathlib import Path

import numpy as np

from . import fixtures as fixtures_mod
from .config import (RunConfig, apply_overrides, load_config, serialize_config)
from .errors import (ConfigError, ExpansionBudgetError, GudieError,
                     IngestionError, UnknownNodeError)
from .expansion import seeds_expansion
from .graphunits import induce, obtain_graphunits, units_payload
from .interest import initialize
from .pipeline import (expansion_params, load_configured_graph, read_expansions,
                       read_initial_scores, read_propagated, resolve_threads,
                       run_pipeline, run_stats, write_expansions,
                       write_initial_scores, write_outputs, write_propagated,
                       write_units)
from .propagation import PropagationParams, propagate_interest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RESOURCE = 4


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="run config file (YAML)")
    parser.add_argument("--nodes", help="nodes CSV path (overrides config)")
    parser.add_argument("--transactions", help="transactions CSV path (overrides config)")
    parser.add_argument("--h", type=int, dest="hops", help="propagation hops")
    parser.add_argument("--k", type=float, dest="threshold", help="interest threshold in [0, 1]")
    parser.add_argument("--gamma", choices=("mean_blend", "max_blend", "min_blend"),
                        help="message aggregation choice")
    parser.add_argument("--theta", choices=("reciprocal", "exponential"),
                        help="distance decay choice")
    parser.add_argument("--seeds", help="comma-separated seed node ids")
    parser.add_argument("--edge-mode", choices=("induced", "path_edges"), dest="edge_mode")
    parser.add_argument("--threads", type=int, help="worker count (0 = machine cores)")
    parser.add_argument("--budget", type=int, help="expansion safety budget")
    parser.add_argument("--out", help="output directory")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    seeds = tuple(s.strip() for s in args.seeds.split(",") if s.strip()) if args.seeds else None
    return apply_overrides(
        config,
        nodes_path=args.nodes,
        transactions_path=args.transactions,
        hops=args.hops,
        threshold=args.threshold,
        gamma=args.gamma,
        theta=args.theta,
        seeds=seeds,
        edge_mode=args.edge_mode,
        threads=args.threads,
        budget=args.budget,
        out_dir=args.out,
    )


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_init_config(args: argparse.Namespace) -> int:
    path = Path(args.path)
    if path.exists() and not args.force:
        raise ConfigError(f"{path} already exists (use --force to overwrite)")
    path.write_text(serialize_config(RunConfig()))
    print(f"wrote default config to {path}")
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    graph = load_configured_graph(config)
    state = initialize(graph, config.vudie, config.ludie)
    write_initial_scores(_out_dir(config), graph, state)
    print(f"scored {graph.node_count} nodes and {graph.edge_count} edges "
          f"-> {config.out_dir}")
    return EXIT_OK


def cmd_propagate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    graph = load_configured_graph(config)
    state = read_initial_scores(_out_dir(config), graph)
    propagated = propagate_interest(
        graph, state, PropagationParams(hops=config.hops, aggregator=config.gamma))
    write_propagated(_out_dir(config), graph, propagated)
    print(f"propagated interest for {config.hops} hops -> {config.out_dir}")
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    graph = load_configured_graph(config)
    propagated = read_propagated(_out_dir(config), graph, config.hops)
    index = seeds_expansion(graph, propagated, list(config.seeds),
                            expansion_params(config), budget=config.budget,
                            threads=resolve_threads(config.threads))
    write_expansions(_out_dir(config), index)
    print(f"stored {index.total()} expansions from {len(config.seeds)} seed(s) "
          f"-> {config.out_dir}")
    return EXIT_OK


def cmd_units(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    graph = load_configured_graph(config)
    out = _out_dir(config)
    state = read_initial_scores(out, graph)
    propagated = read_propagated(out, graph, config.hops)
    index = read_expansions(out, graph, propagated, config.threshold)
    units = {seed: induce(graph, unit, config.edge_mode)
             for seed, unit in obtain_graphunits(index).items()}
    payload = units_payload(graph, units, propagated.scores, state.edge_scores,
                            run_stats(index))
    write_units(out, payload)
    print(f"assembled {len(units)} graph unit(s) -> {config.out_dir}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    result = run_pipeline(config)
    write_outputs(result, config.out_dir, dot=args.dot)
    stats = run_stats(result.index)
    print(f"run complete: {len(result.units)} unit(s), "
          f"{stats['expansions']} expansions, "
          f"{stats['candidates_pruned']} pruned -> {config.out_dir}")
    return EXIT_OK


def cmd_examples_list(args: argparse.Namespace) -> int:
    for name in fixtures_mod.FIXTURE_NAMES:
        fixture = fixtures_mod.fixture_by_name(name)
        summary = fixture.graph.summary()
        print(f"{name}: {fixture.description} "
              f"({summary['nodes']} nodes, {summary['edges']} edges)")
    return EXIT_OK


def cmd_examples_export(args: argparse.Namespace) -> int:
    fixture = fixtures_mod.make_example(args.index)
    paths = fixtures_mod.export_fixture(fixture, args.directory)
    print(f"exported {fixture.name} to {args.directory} "
          f"({', '.join(p.name for p in paths.values())})")
    return EXIT_OK


def cmd_examples_run(args: argparse.Namespace) -> int:
    fixture = fixtures_mod.make_example(args.index)
    config = fixture.config
    if args.out:
        config = apply_overrides(config, out_dir=args.out)
    result = run_pipeline(config, graph=fixture.graph)
    if args.out:
        write_outputs(result, config.out_dir, dot=args.dot)
    unit = result.payload["units"][0]
    members = {row["id"] for row in unit["nodes"]}
    missing = sorted(fixture.expect_in - members)
    unexpected = sorted(fixture.expect_out & members)
    print(f"{fixture.name}: unit for seed {fixture.seed} has {len(members)} node(s): "
          f"{', '.join(sorted(members))}")
    if missing:
        print(f"  MISSING expected nodes: {', '.join(missing)}")
    if unexpected:
        print(f"  UNEXPECTED nodes: {', '.join(unexpected)}")
    if missing or unexpected:
        return 1
    print("  expectations satisfied")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    graph = fixtures_mod.make_powerlaw(args.size, args.rng_seed,
                                       fraud_ratio=args.fraud_ratio)
    generated = time.perf_counter() - started

    state = initialize(graph, RunConfig().vudie, RunConfig().ludie)
    prop_started = time.perf_counter()
    propagated = propagate_interest(graph, state, PropagationParams(hops=args.hops))
    prop_seconds = time.perf_counter() - prop_started

    # seeds with above-median propagated interest keep expansions shallow,
    # which is how analysts use seeds (alerted, already-interesting entities)
    rng = np.random.default_rng(args.rng_seed)
    median = float(np.median(propagated.scores))
    candidates = [i for i in rng.permutation(graph.node_count)
                  if propagated.scores[i] >= median]
    seeds = [graph.id_of(int(i)) for i in candidates[:args.seed_count]]

    expand_started = time.perf_counter()
    index = seeds_expansion(graph, propagated, seeds,
                            expansion_params(RunConfig()),
                            threads=resolve_threads(args.threads or 0))
    expand_seconds = time.perf_counter() - expand_started

    units_started = time.perf_counter()
    units = {seed: induce(graph, unit) for seed, unit in obtain_graphunits(index).items()}
    units_seconds = time.perf_counter() - units_started

    peak_rss_mib = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    report = {
        "nodes": graph.node_count,
        "edges": graph.edge_count,
        "seconds": {
            "generate": round(generated, 3),
            "propagate": round(prop_seconds, 3),
            "expand": round(expand_seconds, 3),
            "units": round(units_seconds, 3),
        },
        "expansions": index.total(),
        "unit_sizes": sorted(len(u.node_set) for u in units.values()),
        "peak_rss_mib": round(peak_rss_mib, 1),
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gudie",
        description="Extract the most interesting subgraph around each seed "
                    "node of an attributed transaction network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init-config", help="write a config file with all defaults")
    p.add_argument("path", nargs="?", default="gudie.yaml")
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=cmd_init_config)

    for name, handler, help_text in (
        ("score", cmd_score, "compute initial node and edge interest"),
        ("propagate", cmd_propagate, "propagate interest for h hops"),
        ("expand", cmd_expand, "grow admissible expansions from the seeds"),
        ("units", cmd_units, "assemble per-seed graph units"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_override_flags(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("run", help="run the full pipeline")
    _add_override_flags(p)
    p.add_argument("--dot", action="store_true", help="also write DOT renderings")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("examples", help="built-in example scenarios")
    examples_sub = p.add_subparsers(dest="examples_command", required=True)
    pe = examples_sub.add_parser("list", help="describe the example scenarios")
    pe.set_defaults(handler=cmd_examples_list)
    pe = examples_sub.add_parser("export", help="write an example as CSV files")
    pe.add_argument("index", type=int, choices=range(1, 6))
    pe.add_argument("directory")
    pe.set_defaults(handler=cmd_examples_export)
    pe = examples_sub.add_parser("run", help="run the pipeline on an example")
    pe.add_argument("index", type=int, choices=range(1, 6))
    pe.add_argument("--out")
    pe.add_argument("--dot", action="store_true")
    pe.set_defaults(handler=cmd_examples_run)

    p = sub.add_parser("bench", help="time the pipeline on a synthetic power-law graph")
    p.add_argument("--size", type=int, default=100_000, help="node count")
    p.add_argument("--rng-seed", type=int, default=7)
    p.add_argument("--fraud-ratio", type=float, default=0.05)
    p.add_argument("--hops", type=int, default=5)
    p.add_argument("--seed-count", type=int, default=10)
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"{args.command}: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IngestionError, UnknownNodeError) as exc:
        print(f"{args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"{args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ExpansionBudgetError as exc:
        print(f"{args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except GudieError as exc:
        print(f"{args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
