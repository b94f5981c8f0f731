import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from commonedges.counting import (
    InfeasibleError,
    brute_force_pair_counts,
    cayley_forest_count,
    complete_graph_trees,
    count_spanning_trees,
    count_trees_containing,
    edge_pair_probability,
    edge_probabilities,
    edge_probability,
    enumerate_spanning_trees,
    iter_forests,
    lcy_forest_count,
    moon_pair_count,
    moon_row,
    prufer_decode,
)
from commonedges.graph import (
    Forest,
    Graph,
    GraphError,
    Partition,
    make_complete,
    make_cycle,
    make_multipartite,
    make_path,
    make_petersen,
)
from commonedges.linalg import adjugate_scaled_inverse, bareiss_det, rational_inverse
from commonedges.verify import random_forest

from conftest import naive_spanning_trees
from test_graph import graphs


# --- linear algebra ------------------------------------------------------

@settings(max_examples=150)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(rows):
    assert bareiss_det(rows) == sympy.Matrix(rows).det()


@settings(max_examples=100)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_rational_inverse_matches_sympy(rows):
    m = sympy.Matrix(rows)
    if m.det() == 0:
        with pytest.raises(ZeroDivisionError):
            adjugate_scaled_inverse(rows)
    else:
        assert sympy.Matrix(rational_inverse(rows)) == m.inv()


def test_bareiss_needs_row_swap():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([]) == 1


# --- matrix-tree ------------------------------------------------------------

def test_petersen_oracle_value():
    # Frozen from the subset-filter enumeration in conftest.
    assert len(naive_spanning_trees(make_petersen())) == 2000


@pytest.mark.parametrize("g, expected", [
    (make_complete(4), 16),
    (make_cycle(4), 4),
    (make_petersen(), 2000),
    (make_complete(1), 1),
    (Graph(3, ((0, 1),)), 0),
    (Graph.from_edges(2, [(0, 1)] * 3, merge_parallel=True), 3),
])
def test_count_spanning_trees(g, expected):
    assert count_spanning_trees(g) == expected


@pytest.mark.parametrize("n", range(2, 9))
def test_cayley_formula(n):
    assert count_spanning_trees(make_complete(n)) == n ** (n - 2)


def test_count_trees_containing_examples():
    k4 = make_complete(4)
    assert count_trees_containing(k4, Forest(k4, ((0, 1),))) == 8
    assert count_trees_containing(k4, Forest(k4, ((0, 1), (2, 3)))) == 4
    g = make_petersen()
    tree = next(iter(naive_spanning_trees(g)))
    assert count_trees_containing(g, Forest(g, tuple(tree))) == 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_count_trees_containing_matches_enumeration(g, rnd):
    order = list(g.edges)
    rnd.shuffle(order)
    chosen = []
    for e in order[: rnd.randint(0, len(order))]:
        try:
            Forest(g, tuple(chosen + [e]))
        except GraphError:
            continue
        chosen.append(e)
    f = Forest(g, tuple(chosen))
    brute = sum(1 for t in naive_spanning_trees(g) if set(chosen) <= t)
    assert count_trees_containing(g, f) == brute


# --- closed-form forest counts -------------------------------------------

@pytest.mark.parametrize("n, sizes, expected", [
    (4, [2, 1, 1], 8),
    (5, [2, 2, 1], 20),
    (7, [7], 1),
    (1, [1], 1),
])
def test_cayley_forest_count(n, sizes, expected):
    assert cayley_forest_count(n, sizes) == expected


def test_cayley_forest_count_rejects_bad_sizes():
    with pytest.raises(ValueError):
        cayley_forest_count(5, [2, 2])
    with pytest.raises(ValueError):
        cayley_forest_count(3, [3, 0])


@pytest.mark.parametrize("n", range(1, 6))
def test_cayley_forest_count_matches_determinant(n):
    g = make_complete(n)
    for edges in iter_forests(g):
        f = Forest(g, edges)
        assert cayley_forest_count(n, f.sizes) == count_trees_containing(g, f)


# --- Moon's formula ---------------------------------------------------------

def test_moon_small_rows_from_brute_force():
    # Frozen values from brute force over all tree pairs of K_3 and K_4.
    assert brute_force_pair_counts(make_complete(3)) == [0, 6, 3]
    assert brute_force_pair_counts(make_complete(4)) == [12, 120, 108, 16]
    assert moon_pair_count(3, 2) == 3
    assert moon_pair_count(3, 1) == 6
    assert moon_row(4) == [12, 120, 108, 16]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_moon_matches_brute_force(n):
    assert moon_row(n) == brute_force_pair_counts(make_complete(n))


@pytest.mark.parametrize("n", [2, 6, 11, 25, 40])
def test_moon_row_sums(n):
    assert sum(moon_row(n)) == n ** (2 * (n - 2))


def test_moon_last_entry_counts_identical_pairs():
    for n in range(2, 15):
        assert moon_pair_count(n, n - 1) == n ** (n - 2)


@pytest.mark.parametrize("n, m", [(1, 0), (4, 4), (4, -1)])
def test_moon_rejects_out_of_range(n, m):
    with pytest.raises(ValueError):
        moon_pair_count(n, m)


# --- multipartite forest counts -------------------------------------------

def test_prufer_matches_networkx():
    for d in range(2, 6):
        for seq in itertools.product(range(d), repeat=d - 2):
            expected = sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(list(seq)).edges)
            assert prufer_decode(seq, d) == expected


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_complete_graph_tree_count(d):
    trees = [tuple(t) for t in complete_graph_trees(d)]
    assert len(set(trees)) == len(trees) == d ** max(d - 2, 0)


def test_lcy_examples():
    p = Partition((2, 2))
    g = make_multipartite(p)
    assert lcy_forest_count(p, Forest(g, ((0, 2),))) == 3
    assert lcy_forest_count(p, Forest(g, ())) == 4


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_lcy_singleton_parts_is_complete_graph(d):
    p = Partition((1,) * d)
    g = make_multipartite(p)
    kd = make_complete(d)
    count = lcy_forest_count(p, Forest(g, ((0, 1),)))
    assert count == count_trees_containing(kd, Forest(kd, ((0, 1),)))
    assert count == 2 * Fraction(d) ** (d - 3)


@pytest.mark.parametrize("sizes", [(2, 2), (2, 3), (1, 4), (2, 2, 2), (1, 2, 2)])
def test_lcy_matches_determinant_on_all_forests(sizes):
    p = Partition(sizes)
    g = make_multipartite(p)
    for edges in iter_forests(g):
        f = Forest(g, edges)
        assert lcy_forest_count(p, f) == count_trees_containing(g, f)


@pytest.mark.parametrize("sizes", [(3, 3, 2), (2, 2, 2, 1)])
def test_lcy_matches_determinant_on_random_forests(sizes):
    rng = random.Random(11)
    p = Partition(sizes)
    g = make_multipartite(p)
    for _ in range(120):
        f = random_forest(g, rng)
        assert lcy_forest_count(p, f) == count_trees_containing(g, f)


def test_lcy_rejects_foreign_host():
    p = Partition((2, 2))
    g = make_complete(4)
    with pytest.raises(GraphError):
        lcy_forest_count(p, Forest(g, ((0, 1),)))


# --- edge probabilities ---------------------------------------------------

@pytest.mark.parametrize("n", [3, 5, 8])
def test_edge_probability_complete(n):
    g = make_complete(n)
    for e in g.edges:
        assert edge_probability(g, e) == Fraction(2, n)


def test_edge_probability_tree_and_cycle():
    assert all(edge_probability(make_path(5), e) == 1 for e in make_path(5).edges)
    assert edge_probability(make_cycle(4), (0, 1)) == Fraction(3, 4)


@pytest.mark.parametrize("n", [4, 6, 9])
def test_edge_pair_probability_complete(n):
    g = make_complete(n)
    assert edge_pair_probability(g, (0, 1), (1, 2)) == Fraction(3, n * n)
    assert edge_pair_probability(g, (0, 1), (2, 3)) == Fraction(4, n * n)
    assert edge_pair_probability(g, (0, 1), (2, 3)) == edge_probability(g, (0, 1)) ** 2


def test_edge_pair_probability_four_cycle_opposite():
    assert edge_pair_probability(make_cycle(4), (0, 1), (2, 3)) == Fraction(2, 4)


def test_edge_probability_errors():
    with pytest.raises(GraphError):
        edge_probability(Graph(3, ((0, 1),)), (0, 1))
    with pytest.raises(ValueError):
        edge_pair_probability(make_complete(4), (0, 1), (1, 0))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_edge_probabilities_sum_and_agree(g):
    if g.n < 2 or count_spanning_trees(g) == 0:
        return
    probs = edge_probabilities(g)
    assert sum(probs.values()) == g.n - 1
    for e in g.edges[:4]:
        assert probs[e] == edge_probability(g, e)


def test_edge_probabilities_multigraph():
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2), (0, 2)], merge_parallel=True)
    probs = edge_probabilities(g)
    assert sum(probs.values()) == 2
    assert probs[0, 1] == edge_probability(g, (0, 1))


# --- enumeration oracle ---------------------------------------------------

@pytest.mark.parametrize("g, count", [(make_complete(3), 3), (make_complete(4), 16),
                                      (Graph(4, ((0, 1), (2, 3))), 0)])
def test_enumerate_spanning_trees(g, count):
    assert len(enumerate_spanning_trees(g)) == count


def test_enumeration_order_is_by_bitmask():
    g = make_complete(4)
    keys = [sum(1 << g.edge_index[e] for e in t) for t in enumerate_spanning_trees(g)]
    assert keys == sorted(keys)


def test_enumeration_cap():
    with pytest.raises(InfeasibleError):
        enumerate_spanning_trees(make_complete(8))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_enumeration_length_equals_determinant(g):
    assert len(enumerate_spanning_trees(g)) == count_spanning_trees(g)


def test_iter_forests_counts_and_cap():
    # Labelled forests on n vertices: 1, 2, 7, 38, 291, 2932.
    assert [sum(1 for _ in iter_forests(make_complete(n))) for n in range(1, 7)] == \
        [1, 2, 7, 38, 291, 2932]
    with pytest.raises(InfeasibleError):
        list(iter_forests(make_complete(6), cap=100))
