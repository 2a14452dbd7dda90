"""Scale behavior on synthetic power-law graphs.

Run with: python3 demos/06_benchmark.py
"""

import time

import numpy as np

from gudie import (ConstantNodeInterest, ExpansionParams,
                   FraudTimeWeightedEdgeInterest, PropagationParams,
                   initialize, make_powerlaw, obtain_graphunits,
                   propagate_interest, seeds_expansion)

for size in (1_000, 10_000, 100_000):
    t0 = time.perf_counter()
    graph = make_powerlaw(size, rng_seed=7)
    t_gen = time.perf_counter() - t0

    t0 = time.perf_counter()
    state = initialize(graph, ConstantNodeInterest(1.0),
                       FraudTimeWeightedEdgeInterest())
    propagated = propagate_interest(graph, state, PropagationParams(hops=5))
    t_prop = time.perf_counter() - t0

    # ten above-median seeds, like alerted entities would be
    rng = np.random.default_rng(7)
    median = float(np.median(propagated.scores))
    seeds = [graph.id_of(int(i)) for i in rng.permutation(graph.node_count)
             if propagated.scores[i] >= median][:10]

    t0 = time.perf_counter()
    index = seeds_expansion(graph, propagated, seeds, ExpansionParams())
    units = obtain_graphunits(index)
    t_exp = time.perf_counter() - t0

    degrees = graph.degrees
    print(f"n={size:>7,}  edges={graph.edge_count:>7,}  max-degree={int(degrees.max()):>5,}  "
          f"generate={t_gen:6.2f}s  score+propagate={t_prop:6.3f}s  "
          f"expand+assemble={t_exp:6.3f}s  units={len(units)}")
