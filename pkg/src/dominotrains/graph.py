"""Undirected multigraphs and their correspondence with domino sets.

Each edge becomes one piece and each vertex one number, so eulerian paths of a
graph are exactly the trains of its pieces.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

from .domino import PieceList, as_piece_list
from .symalg import BasisElement, SymMatrix, as_basis, check_label


@dataclass(frozen=True)
class Multigraph:
    """Vertices plus an ordered edge list; parallel edges and loops are allowed.

    Edges are told apart by their position in ``edges``.
    """

    vertices: frozenset[int]
    edges: tuple[BasisElement, ...]

    def __post_init__(self):
        verts = frozenset(check_label(v) for v in self.vertices)
        edges = tuple(as_basis(e) for e in self.edges)
        for e in edges:
            if e.lo not in verts or e.hi not in verts:
                raise ValueError(f"edge {e!r} has an endpoint outside the vertex set")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable[int] = ()) -> Multigraph:
        edges = tuple(as_basis(e) for e in edges)
        verts = set(vertices)
        for e in edges:
            verts.update(e)
        return cls(frozenset(verts), edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> dict[int, int]:
        """Vertex degrees; a loop adds 2 to its vertex."""
        deg = dict.fromkeys(self.vertices, 0)
        for e in self.edges:
            deg[e.lo] += 1
            deg[e.hi] += 1
        return deg

    def edge_support_connected(self) -> bool:
        """True when all vertices that touch an edge lie in one component."""
        if not self.edges:
            return True
        parent: dict[int, int] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.lo)] = find(e.hi)
        return len({find(x) for x in list(parent)}) == 1


def graph_from_dominoes(pieces) -> Multigraph:
    pieces = as_piece_list(pieces)
    return Multigraph.from_edges(pieces.faces)


def dominoes_from_graph(g: Multigraph) -> PieceList:
    """One piece per edge, in edge order. Isolated vertices are dropped."""
    return PieceList.from_pairs(g.edges)


def adjacency_matrix(g: Multigraph) -> SymMatrix:
    """Sum of ``e(i, j)`` over the edges; a loop contributes 1 on the diagonal."""
    return SymMatrix(Counter(g.edges))


@dataclass(frozen=True)
class Feasibility:
    kind: str  # "circuit", "open_path" or "none"
    endpoints: tuple[int, int] | None = None

    def __bool__(self):
        return self.kind != "none"


def eulerian_feasibility(g: Multigraph) -> Feasibility:
    """Degree-parity test on the edge-bearing part of ``g``.

    An edgeless graph reports ``none``: there is nothing to traverse.
    """
    if not g.edges or not g.edge_support_connected():
        return Feasibility("none")
    odd = sorted(v for v, d in g.degrees().items() if d % 2)
    if not odd:
        return Feasibility("circuit")
    if len(odd) == 2:
        return Feasibility("open_path", (odd[0], odd[1]))
    return Feasibility("none")
