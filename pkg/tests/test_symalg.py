import doctest
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import EXAMPLE_1, EXAMPLE_2, FIVE_VERTEX, dense_bullet
from dominotrains import symalg
from dominotrains.errors import CapExceededError, EmptyProductError
from dominotrains.symalg import (
    BasisElement,
    SymMatrix,
    bullet,
    bullet_basis,
    left_nested_product,
    subset_products,
    symmetrize_dp,
    symmetrize_naive,
)


def e(i, j):
    return SymMatrix.basis(i, j)


labels = st.integers(min_value=1, max_value=5)
pairs = st.tuples(labels, labels)
sym_matrices = st.dictionaries(pairs, st.integers(-5, 5), max_size=5).map(SymMatrix)


def test_doctests():
    assert doctest.testmod(symalg).failed == 0


class TestBasisElement:
    def test_canonical(self):
        assert BasisElement(3, 1) == BasisElement(1, 3)
        assert BasisElement(3, 1).lo == 1
        assert hash(BasisElement(3, 1)) == hash(BasisElement(1, 3))

    def test_diagonal(self):
        assert BasisElement(2, 2).is_diagonal
        assert not BasisElement(1, 2).is_diagonal

    @pytest.mark.parametrize("bad", [-1, 1.5, "a", True])
    def test_rejects_bad_labels(self, bad):
        with pytest.raises(ValueError):
            BasisElement(bad, 1)


class TestSymMatrix:
    def test_drops_zeros(self):
        m = SymMatrix({(1, 2): 0, (2, 1): 3, (1, 1): 2})
        assert len(m) == 2
        assert m[(1, 2)] == 3
        assert SymMatrix({(1, 2): 1, (2, 1): -1}) == SymMatrix.zero()

    def test_linear_ops(self):
        a = e(1, 2) + e(2, 3)
        assert 2 * a == a + a
        assert a - a == SymMatrix()
        assert (a * 3)[(2, 3)] == 3

    def test_to_dense(self):
        assert (2 * e(1, 2) + e(2, 2)).to_dense([1, 2]) == [[0, 2], [2, 1]]


class TestBulletBasis:
    def test_shared_first_index(self):
        assert bullet_basis((1, 2), (1, 3)) == e(2, 3)

    def test_same_offdiagonal(self):
        assert bullet_basis((1, 2), (1, 2)) == 2 * e(1, 1) + 2 * e(2, 2)

    def test_same_diagonal(self):
        assert bullet_basis((1, 1), (1, 1)) == 2 * e(1, 1)

    def test_disjoint(self):
        assert bullet_basis((1, 2), (3, 4)) == SymMatrix()

    def test_mixed_diagonal(self):
        # dense oracle: e11(e12+e21) + (e12+e21)e11
        assert dense_bullet({(1, 1): 1}, {(1, 2): 1}) == {(1, 2): 1}
        assert bullet_basis((1, 1), (1, 2)) == e(1, 2)

    def test_coefficients_are_small(self):
        for a, b in itertools.product(itertools.combinations_with_replacement(range(1, 6), 2), repeat=2):
            assert set(bullet_basis(a, b).values()) <= {1, 2}

    def test_commutative_over_five_labels(self):
        basis = list(itertools.combinations_with_replacement(range(1, 6), 2))
        for a, b in itertools.product(basis, repeat=2):
            assert bullet_basis(a, b) == bullet_basis(b, a)

    def test_non_associative(self):
        left = bullet(bullet(e(1, 2), e(1, 2)), e(2, 3))
        right = bullet(e(1, 2), bullet(e(1, 2), e(2, 3)))
        assert left == 2 * e(2, 3)
        assert right == e(2, 3)


class TestBullet:
    def test_zero(self):
        assert bullet(SymMatrix(), e(1, 2) + e(3, 3)) == SymMatrix()

    def test_bilinear_example(self):
        assert bullet(e(1, 2) + e(2, 3), e(1, 2)) == 2 * e(1, 1) + 2 * e(2, 2) + e(1, 3)

    @given(sym_matrices, sym_matrices)
    def test_commutative(self, a, b):
        assert bullet(a, b) == bullet(b, a)

    @given(sym_matrices, sym_matrices)
    def test_matches_dense(self, a, b):
        expected = dense_bullet(
            {(k.lo, k.hi): c for k, c in a.items()},
            {(k.lo, k.hi): c for k, c in b.items()},
            labels=[1, 2, 3, 4, 5],
        )
        assert bullet(a, b) == SymMatrix(expected)

    @given(sym_matrices, sym_matrices, sym_matrices, st.integers(-3, 3))
    def test_bilinear(self, a, b, c, k):
        assert bullet(a + k * b, c) == bullet(a, c) + k * bullet(b, c)


class TestLeftNested:
    def test_single(self):
        assert left_nested_product([(1, 2)]) == e(1, 2)

    def test_three_factors(self):
        assert left_nested_product([(1, 2), (2, 3), (1, 3)]) == 2 * e(1, 1) + 2 * e(3, 3)

    def test_disjoint(self):
        assert left_nested_product([(1, 2), (3, 4)]) == SymMatrix()

    def test_empty(self):
        with pytest.raises(EmptyProductError, match="empty product"):
            left_nested_product([])


def brute_symmetrize(faces):
    total = SymMatrix()
    for perm in itertools.permutations(faces):
        total = total + left_nested_product(perm)
    return total


class TestSymmetrize:
    @pytest.mark.parametrize("engine", [symmetrize_naive, symmetrize_dp])
    def test_single_piece(self, engine):
        assert engine([(1, 2)]) == e(1, 2)

    @pytest.mark.parametrize("engine", [symmetrize_naive, symmetrize_dp])
    def test_two_pieces(self, engine):
        assert engine([(1, 2), (2, 3)]) == 2 * e(1, 3)

    @pytest.mark.parametrize("engine", [symmetrize_naive, symmetrize_dp])
    def test_example_1(self, engine):
        assert engine(EXAMPLE_1) == 2**5 * (4 * e(1, 1) + 4 * e(2, 2) + 4 * e(3, 3))

    @pytest.mark.parametrize("engine", [symmetrize_naive, symmetrize_dp])
    def test_example_2(self, engine):
        expected = 2**5 * (12 * e(1, 1) + 24 * e(2, 2) + 24 * e(3, 3) + 12 * e(4, 4))
        assert engine(EXAMPLE_2) == expected

    def test_five_vertex_graph(self):
        assert symmetrize_dp(FIVE_VERTEX) == 2**7 * 44 * e(4, 5)

    @pytest.mark.parametrize("engine", [symmetrize_naive, symmetrize_dp])
    def test_empty(self, engine):
        with pytest.raises(EmptyProductError, match="empty product"):
            engine([])

    def test_naive_cap(self):
        with pytest.raises(CapExceededError, match="naive engine cap exceeded, use dp engine"):
            symmetrize_naive([(1, 2)] * 10)
        assert symmetrize_naive([(1, 2)] * 3, cap=3)

    def test_dp_cap_reports_memory(self):
        with pytest.raises(CapExceededError, match="dp engine cap exceeded.*estimated peak memory"):
            symmetrize_dp([(1, 2)] * 23)
        with pytest.raises(CapExceededError):
            symmetrize_dp([(1, 2)] * 5, cap=4)

    def test_naive_is_the_permutation_sum(self):
        faces = [(1, 2), (2, 2), (2, 3), (1, 3), (3, 3)]
        assert symmetrize_naive(faces) == brute_symmetrize(faces)

    def test_sparse_labels(self):
        # remapped internally; "double-nine" must not inflate anything
        faces = [(0, 9), (9, 9), (9, 1000)]
        got = symmetrize_dp(faces)
        assert got.labels() == [0, 1000]
        assert got == symmetrize_naive(faces)

    def test_engines_agree_on_sample(self, corpus):
        assert len(corpus) >= 200
        for faces in corpus:
            assert symmetrize_naive(faces) == symmetrize_dp(faces), faces

    def test_divisibility(self, corpus):
        for faces in corpus:
            scale = 2 ** (len(faces) - 1)
            assert all(c % scale == 0 and c > 0 for c in symmetrize_dp(faces).values())

    @given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=6), st.randoms())
    @settings(max_examples=60, deadline=None)
    def test_permutation_invariant(self, faces, rnd):
        shuffled = list(faces)
        rnd.shuffle(shuffled)
        assert symmetrize_dp(shuffled) == symmetrize_dp(faces)

    def test_threads_do_not_change_result(self):
        rng = random.Random(3)
        faces = [(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(11)]
        assert symmetrize_dp(faces, workers=4) == symmetrize_dp(faces)

    def test_stats(self):
        stats = {}
        symmetrize_dp(EXAMPLE_2, stats=stats)
        assert stats["peak_states"] > 0


class TestSubsetProducts:
    def test_layers(self):
        layers = list(subset_products([(1, 2), (2, 3), (3, 4)]))
        assert len(layers) == 3
        assert layers[0] == {1: e(1, 2), 2: e(2, 3), 4: e(3, 4)}
        # {12, 34} cannot be chained, so it is absent
        assert 0b101 not in layers[1]
        assert layers[2] == {0b111: 4 * e(1, 4)}

    def test_last_layer_is_symmetrization(self):
        *_, last = subset_products(EXAMPLE_2)
        assert last[(1 << 6) - 1] == symmetrize_dp(EXAMPLE_2)
