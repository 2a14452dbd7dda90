"""Seed expansion: growing admissible paths under a decayed threshold.

Run with: python3 demos/04_seed_expansion.py
"""

import numpy as np

from gudie import (ExpansionParams, Node, PropagatedInterest, Transaction,
                   build_graph, decay, max_reachable_path_length, seeds_expansion)

# Interest decays with path length; two penalty curves are available.
print("path length   reciprocal-factor   exponential-factor")
for length in range(1, 6):
    rec = 1.0 - decay("reciprocal", ["x"] * length)
    exp = 1.0 - decay("exponential", ["x"] * length)
    print(f"{length:>11d}   {rec:17.4f}   {exp:18.4f}")

# A seed with a hot branch and a cold branch.
ids = ["seed", "warm", "hot", "cold", "cool"]
graph = build_graph(
    [Node(i) for i in ids],
    [("seed", "warm", Transaction(0, 1.0, False)),
     ("warm", "hot", Transaction(0, 1.0, False)),
     ("seed", "cold", Transaction(0, 1.0, False)),
     ("cold", "cool", Transaction(0, 1.0, False))])
scores = PropagatedInterest(
    graph, np.array([0.5, 0.6, 0.9, 0.2, 0.9]), hops=5)

# delta = seed score x k. A candidate at path length L must satisfy
# factor(L) * its score >= delta, and paths never revisit a node.
params = ExpansionParams(threshold=0.7, decay="exponential")
index = seeds_expansion(graph, scores, ["seed"], params)
print("\nstored expansions (seed:path):")
for line in index.trace_lines():
    print("  " + line)
# "cold" (0.2) fails the first-hop test outright, so "cool" is unreachable
# even though its own score is high: expansion walks admissible paths only.

# Lowering k keeps every previous path and can only add more.
for k in (1.0, 0.7, 0.4, 0.0):
    index = seeds_expansion(graph, scores, ["seed"], ExpansionParams(threshold=k))
    delta = scores.scores[graph.index_of("seed")] * k
    bound = max_reachable_path_length("exponential", delta, float(scores.scores.max()))
    print(f"k={k:3.1f}  delta={delta:5.3f}  stored={index.total():2d}  "
          f"path-length bound={bound}")
