import pytest

from _oracles import EXAMPLE_2, FIVE_VERTEX, TRIANGLE
from dominotrains.domino import PieceList
from dominotrains.graph import (
    Feasibility,
    Multigraph,
    adjacency_matrix,
    dominoes_from_graph,
    eulerian_feasibility,
    graph_from_dominoes,
)
from dominotrains.symalg import BasisElement, SymMatrix


def test_graph_from_example_2():
    g = graph_from_dominoes(EXAMPLE_2)
    assert g.vertices == {1, 2, 3, 4}
    assert g.m == 6
    assert g.edges.count(BasisElement(2, 3)) == 2


def test_graph_from_nothing():
    g = graph_from_dominoes([])
    assert g.vertices == frozenset() and g.edges == ()


def test_graph_with_loop():
    g = graph_from_dominoes([(1, 1)])
    assert g.vertices == {1} and g.edges == (BasisElement(1, 1),)
    assert g.degrees() == {1: 2}


def test_round_trip(corpus):
    for pairs in corpus:
        pieces = PieceList.from_pairs(pairs)
        assert dominoes_from_graph(graph_from_dominoes(pieces)) == pieces
        g = Multigraph.from_edges(pairs)
        assert graph_from_dominoes(dominoes_from_graph(g)) == g


def test_dominoes_from_triangle():
    g = Multigraph.from_edges(TRIANGLE)
    assert dominoes_from_graph(g) == PieceList.from_pairs([(1, 2), (1, 3), (2, 3)])


def test_isolated_vertex_dropped():
    g = Multigraph.from_edges(TRIANGLE, vertices=[7])
    assert 7 in g.vertices
    assert 7 not in dominoes_from_graph(g).labels()


def test_rejects_foreign_endpoint():
    with pytest.raises(ValueError):
        Multigraph(frozenset({1}), (BasisElement(1, 2),))


class TestAdjacency:
    def test_example_2(self):
        a = adjacency_matrix(graph_from_dominoes(EXAMPLE_2))
        assert a == SymMatrix({(1, 2): 1, (1, 3): 1, (2, 3): 2, (2, 4): 1, (3, 4): 1})

    def test_empty(self):
        assert adjacency_matrix(Multigraph.from_edges([])) == SymMatrix()

    def test_loop_counts_once(self):
        assert adjacency_matrix(Multigraph.from_edges([(1, 1)])) == SymMatrix.basis(1, 1)

    def test_sum_of_faces(self, corpus):
        for pairs in corpus:
            total = SymMatrix()
            for p in pairs:
                total = total + SymMatrix.basis(*p)
            assert adjacency_matrix(graph_from_dominoes(pairs)) == total


class TestFeasibility:
    def test_triangle(self):
        assert eulerian_feasibility(Multigraph.from_edges(TRIANGLE)) == Feasibility("circuit")

    def test_five_vertex(self):
        g = Multigraph.from_edges(FIVE_VERTEX)
        assert {v for v, d in g.degrees().items() if d % 2} == {4, 5}
        assert eulerian_feasibility(g) == Feasibility("open_path", (4, 5))

    def test_star(self):
        g = Multigraph.from_edges([(0, 1), (0, 2), (0, 3)])
        assert eulerian_feasibility(g).kind == "none"

    def test_disconnected(self):
        g = Multigraph.from_edges([(1, 2), (3, 4)])
        assert not eulerian_feasibility(g)

    def test_isolated_vertices_ignored(self):
        g = Multigraph.from_edges(TRIANGLE, vertices=[9])
        assert eulerian_feasibility(g).kind == "circuit"

    def test_loops_add_two(self):
        g = Multigraph.from_edges([(1, 2), (2, 2)])
        assert eulerian_feasibility(g) == Feasibility("open_path", (1, 2))

    def test_edgeless(self):
        assert eulerian_feasibility(Multigraph.from_edges([], vertices=[1])).kind == "none"
