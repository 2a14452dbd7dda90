"""User-defined interest: scoring nodes and edges into [0, 1].

Run with: python3 demos/02_interest_scores.py
"""

from gudie import (AttributeTerm, AttributeWeightedNodeInterest,
                   ConstantNodeInterest, FraudTimeWeightedEdgeInterest, Node,
                   Transaction, TypeTableNodeInterest, build_graph, fraud_rate,
                   initialize, time_weighted_amount)

WEEK = 604_800
NOW = 1_700_000_000

nodes = [
    Node("C1", "customer"),
    Node("C2", "customer"),
    Node("M1", "merchant"),
]
records = [
    # a fresh high-amount fraudulent payment ...
    ("C1", "M1", Transaction(NOW, 900.0, True)),
    # ... and an older, small, legitimate purchase
    ("C2", "M1", Transaction(NOW - 2 * WEEK, 40.0, False)),
]
graph = build_graph(nodes, records)

# Per-edge building blocks: recency-discounted amounts and fraud share.
for e, edge in enumerate(graph.edges):
    src, dst = graph.edge_endpoints(e)
    print(f"{src}-{dst}: tw_amount={time_weighted_amount(edge, NOW):8.2f}  "
          f"fraud_rate={fraud_rate(edge):.2f}")

# The default edge interest blends relative amount and fraud share; the
# default node interest is constant 1.0.
state = initialize(graph, ConstantNodeInterest(1.0), FraudTimeWeightedEdgeInterest())
print("\nedge scores:", [round(float(s), 4) for s in state.edge_scores])
print("normalizer (max tw amount):", round(state.max_time_weighted_amount, 2))

# Node interest can instead favor types ...
by_type = TypeTableNodeInterest({"merchant": 0.9, "customer": 0.4}, default=0.1)
state_types = initialize(graph, by_type, FraudTimeWeightedEdgeInterest())
print("\ntype-table node scores:",
      {n.id: float(s) for n, s in zip(graph.nodes, state_types.node_scores)})

# ... or blend normalized numeric attributes (degree is built in).
by_degree = AttributeWeightedNodeInterest((AttributeTerm("degree", 1.0, "max"),))
state_degree = initialize(graph, by_degree, FraudTimeWeightedEdgeInterest())
print("degree-weighted node scores:",
      {n.id: float(s) for n, s in zip(graph.nodes, state_degree.node_scores)})
