"""Galvin orientations of line graphs and list-edge-colouring."""

from .blocks import Block, BlockDecomposition, BlockKind, classify_blocks
from .constructions import (
    Witness,
    construct_bip_plus_edge,
    construct_bipartite,
    construct_clique,
    construct_no_long_odd,
    f_clique,
    petersen,
)
from .graph import (
    EdgeColouring,
    LineIncidence,
    MultiGraph,
    Side,
    VertexPartition,
    bipartite_edge_colouring,
    bipartition,
    build_graph,
    chromatic_index,
    complete_graph,
    cycle_graph,
    has_long_odd_cycle,
    is_proper_colouring,
    line_incidences,
    max_degree,
)
from .listcolour import list_edge_colour, verify_list_colouring
from .orientation import (
    Digraph,
    GalvinOrientation,
    PropernessReport,
    check_clique_kernels,
    check_odd_cycles,
    check_outdegree,
    find_kernel,
    galvin_orient,
    is_kernel_perfect_bruteforce,
    line_cliques,
    verify_proper,
)
from .search import SearchOutcome, Status, min_k, refute_delta_witness, search_proper

__all__ = [
    "Block",
    "BlockDecomposition",
    "BlockKind",
    "Digraph",
    "EdgeColouring",
    "GalvinOrientation",
    "LineIncidence",
    "MultiGraph",
    "PropernessReport",
    "SearchOutcome",
    "Side",
    "Status",
    "VertexPartition",
    "Witness",
    "bipartite_edge_colouring",
    "bipartition",
    "build_graph",
    "check_clique_kernels",
    "check_odd_cycles",
    "check_outdegree",
    "chromatic_index",
    "classify_blocks",
    "complete_graph",
    "construct_bip_plus_edge",
    "construct_bipartite",
    "construct_clique",
    "construct_no_long_odd",
    "cycle_graph",
    "f_clique",
    "find_kernel",
    "galvin_orient",
    "has_long_odd_cycle",
    "is_kernel_perfect_bruteforce",
    "is_proper_colouring",
    "line_cliques",
    "line_incidences",
    "list_edge_colour",
    "max_degree",
    "min_k",
    "petersen",
    "refute_delta_witness",
    "search_proper",
    "verify_list_colouring",
    "verify_proper",
]
