"""Exact counts of domino trains and eulerian paths in undirected multigraphs.

The algebraic engines expand a symmetrized Jordan product over symmetric
matrices; an independent trail DP cross-checks them.
"""

from .domino import (
    CountTable,
    Piece,
    PieceList,
    Step,
    TrainSequence,
    count_placement_orders,
    count_trains,
    enumerate_trains,
    is_train,
)
from .errors import (
    CapExceededError,
    DominoError,
    EmptyProductError,
    InputParseError,
    InvariantViolation,
)
from .euler import EulCountResult, VerificationReport, eul_counts, verify_engines
from .graph import (
    Feasibility,
    Multigraph,
    adjacency_matrix,
    dominoes_from_graph,
    eulerian_feasibility,
    graph_from_dominoes,
)
from .oracle import count_trails_dp, enumerate_eulerian_paths, trail_count_table
from .symalg import (
    BasisElement,
    SymMatrix,
    bullet,
    bullet_basis,
    left_nested_product,
    subset_products,
    symmetrize_dp,
    symmetrize_naive,
)

__version__ = "0.1.0"
