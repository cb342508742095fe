"""Continuation of partial edge weights to Φ-pseudosemimetrics.

The triangle function Φ is pluggable: additive, max (ultrametric),
multiplicative, power and homeomorphism-conjugated families are built in.
"""

from .checker import ViolationCertificate, Verdict, certificate, certificates, check, check_report
from .graph import WeightedGraph, components, edge_key, parse_edge_list, parse_graph, parse_json, serialize
from .numeric import EXACT, FLOAT, UNREACHABLE, NumericMode, Radical, make_weight
from .solver import DistanceMatrix, all_pairs, build_continuation, path_weight, single_source
from .triangle import (
    ADDITIVE,
    MAX,
    MULTIPLICATIVE,
    TriangleFamily,
    parse_family,
    phi_homeomorphism,
    power,
    validate_family,
)

__version__ = "0.1.0"
