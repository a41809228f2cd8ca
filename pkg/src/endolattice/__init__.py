"""Lattice structures for finite self-maps.

Given a self-map f on a finite set, this package decides whether some
lattice structure turns f into a lattice endomorphism (one preserving both
joins and meets), constructs such a lattice when possible, certifies every
construction by direct law checking, and cross-validates the whole pipeline
against brute-force enumeration of all small partial orders.
"""

from .funcgraph import (
    ComponentAnalysis,
    FunctionTable,
    as_table,
    basin,
    components,
    distance,
    fixed_points,
    has_proper_cycle,
    is_prohibited,
    period_of,
    split,
)
from .order import (
    LatticeCertificate,
    PartialOrder,
    certify,
    check_partial_order,
    hasse_covers,
    is_distributive,
    is_endomorphism,
    is_modular,
    is_monotone,
    lattice_tables,
    linear_sequence,
    transitive_closure,
)
from .extension import (
    FIXED_POINT_MAX,
    FIXED_POINT_MIN,
    PLAIN,
    ConstructionTrace,
    MonotoneExtensionError,
    SiblingPolicy,
    TraceBlock,
    acyclic_linear_extension,
    branch_lex_order,
    component_order,
    f_compatible_closure,
    hub_blocks,
    szpilrajn_monotone,
)
from .lattice import (
    Decision,
    HubAttempt,
    LatticeResult,
    NoLatticeError,
    VerificationError,
    WithBaseReport,
    construct,
    construct_paper_literal,
    construct_with_base,
    cycle_extreme_violations,
    decide,
    is_isomorphic_to_mn,
    prohibited_violations,
)
from .oracle import (
    ConstructSweepReport,
    SweepReport,
    construct_sweep,
    count_posets_backtracking,
    distributive_exists,
    enumerate_posets,
    oracle_decide,
    oracle_decide_with_base,
    oracle_witnesses,
    sweep_compare,
)

__version__ = "0.1.0"

__all__ = [
    "ComponentAnalysis",
    "ConstructSweepReport",
    "ConstructionTrace",
    "Decision",
    "FIXED_POINT_MAX",
    "FIXED_POINT_MIN",
    "FunctionTable",
    "HubAttempt",
    "LatticeCertificate",
    "LatticeResult",
    "MonotoneExtensionError",
    "NoLatticeError",
    "PLAIN",
    "PartialOrder",
    "SiblingPolicy",
    "SweepReport",
    "TraceBlock",
    "VerificationError",
    "WithBaseReport",
    "acyclic_linear_extension",
    "as_table",
    "basin",
    "branch_lex_order",
    "certify",
    "check_partial_order",
    "component_order",
    "components",
    "construct",
    "construct_paper_literal",
    "construct_sweep",
    "construct_with_base",
    "count_posets_backtracking",
    "cycle_extreme_violations",
    "decide",
    "distance",
    "distributive_exists",
    "enumerate_posets",
    "f_compatible_closure",
    "fixed_points",
    "has_proper_cycle",
    "hasse_covers",
    "hub_blocks",
    "is_distributive",
    "is_endomorphism",
    "is_isomorphic_to_mn",
    "is_modular",
    "is_monotone",
    "is_prohibited",
    "lattice_tables",
    "linear_sequence",
    "oracle_decide",
    "oracle_decide_with_base",
    "oracle_witnesses",
    "period_of",
    "prohibited_violations",
    "split",
    "sweep_compare",
    "szpilrajn_monotone",
    "transitive_closure",
]
