"""Building and inspecting attributed transaction graphs.

Run with: python3 demos/01_property_graph.py
"""

import tempfile
from pathlib import Path

from gudie import Node, Transaction, build_graph, load_graph, save_graph

# A tiny payment network: two customers, one shared merchant, one device.
nodes = [
    Node("alice", "customer", {"age": 34}),
    Node("bob", "customer", {"age": 51}),
    Node("shop", "merchant"),
    Node("phone-1", "device"),
]

# Transactions between the same pair aggregate onto a single undirected edge.
records = [
    ("alice", "shop", Transaction(timestamp=1_700_000_000, amount=25.0, is_fraud=False)),
    ("alice", "shop", Transaction(timestamp=1_700_050_000, amount=12.5, is_fraud=False)),
    ("bob", "shop", Transaction(timestamp=1_700_020_000, amount=300.0, is_fraud=True)),
    ("alice", "phone-1", Transaction(timestamp=1_700_000_000, amount=25.0, is_fraud=False)),
]

graph = build_graph(nodes, records)
print("summary:", graph.summary())

# Adjacency is deterministic: neighbors come back in ascending internal order.
for node in graph.nodes:
    links = ", ".join(f"{m} (edge {e})" for m, e in graph.neighbors(node.id))
    print(f"  {node.id:8s} degree={graph.degree(graph.index_of(node.id))}  -> {links}")

# The alice-shop edge carries both transactions.
edge_index = graph.edge_between(graph.index_of("alice"), graph.index_of("shop"))
edge = graph.edges[edge_index]
print(f"alice-shop transactions: {[tx.amount for tx in edge.transactions]}")

# Graphs round-trip exactly through the CSV pair.
with tempfile.TemporaryDirectory() as tmp:
    nodes_path, tx_path = Path(tmp) / "nodes.csv", Path(tmp) / "transactions.csv"
    save_graph(graph, nodes_path, tx_path)
    print("\nnodes.csv:")
    print(nodes_path.read_text())
    reloaded = load_graph(nodes_path, tx_path)
    assert reloaded.nodes == graph.nodes and reloaded.edges == graph.edges
    print("reload identical: True")
