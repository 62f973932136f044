"""Degree-monotone paths: exact mp(G), extremal constructions, and bound audits."""

from .graph import (
    CapacityError,
    Graph,
    Graph6Error,
    complement,
    graph6_decode,
    graph6_encode,
    read_graph6_lines,
)
from .solver import (
    MpResult,
    PathRecord,
    characterize_mp2,
    check_corollary_bounds,
    chromatic_number,
    clique_number,
    independence_number,
    mp_exact,
)
from .constructions import ConstructionCert, construct, validate_maxplanar, validate_mop
from .extremal import ExtremalRecord, f_number, g_number, gap_bound, turan_number
from .nordhaus_gaddum import NgRecord, ng_sum

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConstructionCert",
    "ExtremalRecord",
    "Graph",
    "Graph6Error",
    "MpResult",
    "NgRecord",
    "PathRecord",
    "characterize_mp2",
    "check_corollary_bounds",
    "chromatic_number",
    "clique_number",
    "complement",
    "construct",
    "f_number",
    "g_number",
    "gap_bound",
    "graph6_decode",
    "graph6_encode",
    "independence_number",
    "mp_exact",
    "ng_sum",
    "read_graph6_lines",
    "turan_number",
    "validate_maxplanar",
    "validate_mop",
]
