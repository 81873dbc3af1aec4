"""Enumerate the DAGs of a Markov equivalence class with linear delay."""

from .baselines import (
    CoveredEdge,
    VisitedSet,
    chickering_enum,
    covered_edges,
    iter_chickering,
    iter_meek,
    iter_shd3,
    markov_equivalent,
    meek_enum,
    shd3_enum,
)
from .chordal import consistent_extension_cpdag, is_amo, is_chordal, mcs
from .errors import GraphError, GraphFormatError, NotChordal, NotExtendable, TooLarge
from .graph import (
    PDG,
    EdgeKind,
    PartiallyDirectedGraph,
    iter_graphs,
    parse_graph,
    read_graph,
    shd,
    skeleton,
    to_text,
    v_structures,
)
from .instances import GenConfig, cpdag_to_pdag, dag_to_cpdag, random_chordal, random_dag
from .mcs_enum import (
    enumerate_amos,
    enumerate_bucket,
    enumerate_cpdag,
    enumerate_pdag,
    iter_amos,
    iter_cpdag,
    iter_pdag,
)
from .meek import apply_meek_rules, buckets, consistent_extension_mpdag, maximal_orientation
from .oracle import ValidationReport, brute_force_extensions, mec_size, validate_enumeration

__version__ = "0.1.0"
