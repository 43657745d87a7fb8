"""Optimal reconstructing distributed storage on unidirectional rings."""

from ._backend import BACKEND
from .edmatrix import ed_matrix, euclid_chain, is_weakly_mds
from .flow import build_flow_graph, flow_mincut
from .galois import DataVector, FieldElement, FieldMatrix, FieldOrder
from .planner import plan_greedy, plan_reconstruction, plan_repair
from .ringsim import Event, simulate
from .scheme import (
    RingParams,
    Scheme,
    build_ed_scheme,
    build_mds_scheme,
    node_symbols,
    reconstruct_bound,
    repair_bound,
    validate_ordss,
)

__all__ = [
    "BACKEND",
    "DataVector",
    "Event",
    "FieldElement",
    "FieldMatrix",
    "FieldOrder",
    "RingParams",
    "Scheme",
    "build_ed_scheme",
    "build_flow_graph",
    "build_mds_scheme",
    "ed_matrix",
    "euclid_chain",
    "flow_mincut",
    "is_weakly_mds",
    "node_symbols",
    "plan_greedy",
    "plan_reconstruction",
    "plan_repair",
    "reconstruct_bound",
    "repair_bound",
    "simulate",
    "validate_ordss",
]
