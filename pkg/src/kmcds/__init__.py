"""k-connected m-dominating sets on node-weighted unit disk graphs."""

from .connectivity import (
    CutCertificate,
    CutKind,
    find_covering_path,
    find_min_violated_demand_cut,
    is_k_connected,
    min_cores,
    shortcut_graph,
)
from .dominating import (
    FractionalSolution,
    LayeredMis,
    MulticoverInstance,
    connector,
    greedy_disk_multicover,
    is_m_dominating,
    layered_mis,
    mds_for_kcds_reduction,
    prune_minimal,
    round_mds,
    solve_lp_mds,
)
from .flows import MinCutResult, min_vertex_cut
from .graph import (
    BlockCutTree,
    Graph,
    block_cut_tree,
    build_unit_disk,
    from_edges,
    gamma,
    verify_kissing,
)
from .instances import UnitDiskInstance, random_instance, read_instance, write_instance
from .oracle import OracleResult, enumerate_demand_cuts, exact_min_kmcds, exact_multicover
from .primal_dual import (
    DualState,
    augment_primal_dual,
    cover_uncrossable,
    decompose_independent,
    max_core,
    solve_weighted_kmcds,
)
from .simple_augment import (
    AugmentationTrace,
    augment_simple,
    solve_unweighted_kmcds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
