"""Interest propagation: how scores travel along edges, superstep by superstep.

Run with: python3 demos/03_propagation.py
"""

import numpy as np

from gudie import (InterestState, Node, PropagationParams, Transaction,
                   build_graph, propagate_interest)

# A path graph with all the initial interest at one end.
ids = ["A", "B", "C", "D"]
graph = build_graph([Node(i) for i in ids],
                    [(a, b, Transaction(0, 1.0, False)) for a, b in zip(ids, ids[1:])])

node_scores = np.array([1.0, 0.0, 0.0, 0.0])
edge_scores = np.ones(graph.edge_count)  # perfect conductors
state = InterestState(graph, node_scores, edge_scores, 0, 0.0)

print("hop  " + "  ".join(f"{i:>6s}" for i in ids))
for hops in range(5):
    out = propagate_interest(graph, state, PropagationParams(hops=hops))
    print(f"{hops:>3d}  " + "  ".join(f"{s:6.4f}" for s in out.scores))

# Each superstep every node sends (its score x edge score) along each edge,
# then blends its previous score 50/50 with the mean of what it received.
# Interest creeps outward one hop per superstep and dilutes with distance.

# Low-interest edges attenuate the flow:
weak = InterestState(graph, node_scores, np.full(graph.edge_count, 0.2), 0, 0.0)
out = propagate_interest(graph, weak, PropagationParams(hops=4))
print("\nwith edge scores 0.2:", np.round(out.scores, 4))

# The max blend tracks the strongest incoming message instead of the mean.
out = propagate_interest(graph, state, PropagationParams(hops=4, aggregator="max_blend"))
print("with max_blend:      ", np.round(out.scores, 4))

# Supernodes gain nothing from sheer fan size: with identical neighbors the
# mean of the pool does not depend on how many there are.
hub_ids = ["hub"] + [f"leaf{i}" for i in range(8)]
hub_graph = build_graph(
    [Node(i) for i in hub_ids],
    [("hub", f"leaf{i}", Transaction(0, 1.0, False)) for i in range(8)])
hub_state = InterestState(hub_graph, np.array([0.5] + [0.8] * 8),
                          np.full(8, 0.6), 0, 0.0)
out = propagate_interest(hub_graph, hub_state, PropagationParams(hops=1))
print(f"\nhub with 8 identical leaves -> {out.scores[0]:.4f} "
      "(same value it would get from a single such leaf)")
