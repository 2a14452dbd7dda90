"""Seed-based extraction of interesting subgraphs from attributed networks.

The pipeline has four stages: score every node and edge with user-defined
interest functions, propagate those scores for a fixed number of hops,
grow admissible expansions from each seed, and assemble one GraphUnit per
seed from the stored expansion paths.
"""

from .config import RunConfig, load_config, parse_config, serialize_config
from .errors import (ConfigError, ExpansionBudgetError, GudieError,
                     IngestionError, UnknownNodeError)
from .expansion import (Expansion, ExpansionIndex, ExpansionParams, admissible,
                        decay, max_reachable_path_length, seeds_expansion)
from .fixtures import (ScenarioFixture, export_fixture, fixture_by_name,
                       fixture_manifest, make_example, make_powerlaw)
from .graph import (Edge, Node, PropertyGraph, Transaction, build_graph,
                    load_graph, neighbors, save_graph)
from .graphunits import (GraphUnit, induce, obtain_graphunits, to_dot,
                         unit_payload, units_payload)
from .interest import (AttributeTerm, AttributeWeightedNodeInterest,
                       ConstantEdgeInterest, ConstantNodeInterest,
                       EdgeInterestSpec, FraudTimeWeightedEdgeInterest,
                       InterestContext, InterestState, InterestWarning,
                       NodeInterestSpec, TypeTableNodeInterest,
                       WeightedSumEdgeInterest, build_context, edge_spec_from_dict,
                       evaluate_ludie, evaluate_vudie, fraud_rate, initialize,
                       node_spec_from_dict, time_weighted_amount)
from .pipeline import RunResult, run_pipeline, write_outputs
from .propagation import (PropagatedInterest, PropagationParams, blend_max,
                          blend_mean, blend_min, message_value,
                          propagate_interest)

__version__ = "0.1.0"

__all__ = [
    "AttributeTerm",
    "AttributeWeightedNodeInterest",
    "ConfigError",
    "ConstantEdgeInterest",
    "ConstantNodeInterest",
    "Edge",
    "EdgeInterestSpec",
    "Expansion",
    "ExpansionBudgetError",
    "ExpansionIndex",
    "ExpansionParams",
    "FraudTimeWeightedEdgeInterest",
    "GraphUnit",
    "GudieError",
    "IngestionError",
    "InterestContext",
    "InterestState",
    "InterestWarning",
    "Node",
    "NodeInterestSpec",
    "PropagatedInterest",
    "PropagationParams",
    "PropertyGraph",
    "RunConfig",
    "RunResult",
    "ScenarioFixture",
    "Transaction",
    "TypeTableNodeInterest",
    "UnknownNodeError",
    "WeightedSumEdgeInterest",
    "admissible",
    "blend_max",
    "blend_mean",
    "blend_min",
    "build_context",
    "build_graph",
    "decay",
    "edge_spec_from_dict",
    "evaluate_ludie",
    "evaluate_vudie",
    "export_fixture",
    "fixture_by_name",
    "fixture_manifest",
    "fraud_rate",
    "induce",
    "initialize",
    "load_config",
    "load_graph",
    "make_example",
    "make_powerlaw",
    "max_reachable_path_length",
    "message_value",
    "neighbors",
    "node_spec_from_dict",
    "obtain_graphunits",
    "parse_config",
    "propagate_interest",
    "run_pipeline",
    "save_graph",
    "seeds_expansion",
    "serialize_config",
    "time_weighted_amount",
    "to_dot",
    "unit_payload",
    "units_payload",
    "write_outputs",
]
