"""Exact tree burning, admissible sequences, and extremal constructions."""

from .tree import (
    Tree,
    TreeError,
    canonical_key,
    diameter,
    isomorphic,
    make_path,
    make_spider,
    make_star,
    parse_tree,
    subdivide_edge,
)
from .topology import (
    Decomposition,
    LengthAssignment,
    Topology,
    TopologyError,
    contract,
    decompose,
    expand,
    make_chain_topology,
    make_star_topology,
    make_tshape_topology,
    parse_topology,
)
from .burning import (
    BurningSchedule,
    LnEstimate,
    NeighborhoodCover,
    PathForest,
    burning_number,
    enumerate_optimal_schedules,
    is_m_burnable,
    is_maximally_m_burnable,
    ln_estimate,
    path_forest_burnable,
    verify_schedule,
)
from .admissible import (
    AdmissibleSequence,
    Block,
    InducedSpec,
    canonicalize,
    enumerate_admissible,
    enumerate_canonical,
    format_compact,
    induce_tree,
    induced_order,
    is_canonical,
    parse_compact,
    reduce_once,
    signature,
    stage1_additions,
    stage2_additions,
    validate,
    witness_schedule,
)
from .extremal import (
    CandidateSet,
    ExtremalResult,
    FourBranchCase,
    find_extremal,
    four_branch_lookup,
    order_difference,
    prune,
    verify_tables,
)
from .spider import (
    SpiderProfile,
    balanced_extremal_spider,
    extremal_order,
    min_diameter,
    min_diameter_witness,
    verify_min_diameter,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
