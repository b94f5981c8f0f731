import math

import numpy as np
import pytest
from scipy import stats

from commonedges.counting import edge_probability, enumerate_spanning_trees
from commonedges.graph import (
    Graph,
    GraphError,
    bridges,
    make_complete,
    make_cycle,
    make_double_clique,
    make_multipartite,
    make_path,
)
from commonedges.rng import check_seed, make_rng, mix, splitmix64
from commonedges.sampler import (
    SpanningTree,
    aldous_broder_sample,
    common_edges,
    wilson_sample,
    wilson_sample_python,
)


def test_splitmix64_reference_vector():
    # First outputs of SplitMix64 seeded with 0 (reference C implementation).
    assert mix(0, 0) == 0xE220A8397B1DCDAF
    assert mix(0, 1) == 0x6E789E6AA1B965F4
    assert mix(0, 2) == 0x06C45D188009454F


def test_mix_is_splitmix_stream():
    assert mix(12345, 3) == splitmix64(12345 + 4 * 0x9E3779B97F4A7C15)


def test_seed_range():
    assert check_seed(2 ** 64 - 1) == 2 ** 64 - 1
    with pytest.raises(ValueError):
        check_seed(-1)
    with pytest.raises(ValueError):
        check_seed(2 ** 64)


def test_same_seed_same_stream():
    assert make_rng(99).random(5).tolist() == make_rng(99).random(5).tolist()


@pytest.mark.parametrize("sampler", [wilson_sample, aldous_broder_sample, wilson_sample_python])
def test_tree_host_returns_itself(sampler):
    g = make_path(7)
    for seed in range(5):
        assert sampler(g, seed).edges == frozenset(g.edges)


@pytest.mark.parametrize("sampler", [wilson_sample, aldous_broder_sample])
def test_disconnected_graph_rejected(sampler):
    with pytest.raises(GraphError):
        sampler(Graph(4, ((0, 1), (2, 3))), 0)


@pytest.mark.parametrize("sampler", [wilson_sample, aldous_broder_sample])
def test_single_vertex(sampler):
    assert sampler(make_complete(1), 0).edges == frozenset()


@pytest.mark.parametrize("g", [make_complete(7), make_multipartite((3, 4)), make_cycle(9),
                               Graph.from_edges(3, [(0, 1), (0, 1), (1, 2), (0, 2)],
                                                merge_parallel=True)])
def test_compiled_wilson_matches_interpreted_twin(g):
    for seed in range(40):
        assert wilson_sample(g, seed) == wilson_sample_python(g, seed)


def test_samples_are_deterministic_in_seed():
    g = make_complete(12)
    assert wilson_sample(g, 5) == wilson_sample(g, 5)
    assert aldous_broder_sample(g, 5) == aldous_broder_sample(g, 5)
    assert len({wilson_sample(g, s).sorted_edges() for s in range(20)}) > 1


def test_spanning_tree_invariants_checked():
    g = make_complete(4)
    with pytest.raises(GraphError):
        SpanningTree(g, frozenset({(0, 1), (1, 2)}))
    with pytest.raises(GraphError):
        SpanningTree(g, frozenset({(0, 1), (1, 2), (0, 2)}))


def test_common_edges_examples():
    g = make_complete(4)
    t = wilson_sample(g, 0)
    assert common_edges(t, t) == 3
    # 0-1-2-3 and 2-0-3-1 split the six edges of K_4.
    first = SpanningTree(g, frozenset({(0, 1), (1, 2), (2, 3)}))
    second = SpanningTree(g, frozenset({(0, 2), (0, 3), (1, 3)}))
    assert common_edges(first, second) == 0


def test_common_edges_on_tree_host_is_n_minus_1():
    g = make_path(8)
    assert common_edges(wilson_sample(g, 1), wilson_sample(g, 2)) == 7


def test_common_edges_requires_same_host():
    with pytest.raises(GraphError):
        common_edges(wilson_sample(make_complete(4), 0), wilson_sample(make_cycle(4), 0))


def test_bridges_in_every_sample():
    g = make_double_clique(10, 1)
    for seed in range(200):
        assert set(bridges(g)) <= wilson_sample(g, seed).edges


def _tree_frequencies(sampler, g, draws, seed):
    index = {frozenset(t): i for i, t in enumerate(enumerate_spanning_trees(g))}
    freq = np.zeros(len(index), dtype=int)
    for i in range(draws):
        freq[index[sampler(g, make_rng(mix(seed, i))).edges]] += 1
    return freq


@pytest.mark.parametrize("sampler", [wilson_sample, aldous_broder_sample])
def test_uniform_on_k4(sampler):
    freq = _tree_frequencies(sampler, make_complete(4), 16000, seed=3)
    assert stats.chisquare(freq).pvalue > 1e-3


def test_aldous_broder_edge_frequencies_on_k23():
    g = make_multipartite((2, 3))
    draws = 20000
    hits = {e: 0 for e in g.edges}
    for i in range(draws):
        for e in aldous_broder_sample(g, make_rng(mix(8, i))).edges:
            hits[e] += 1
    for e, h in hits.items():
        p = float(edge_probability(g, e))
        se = math.sqrt(p * (1 - p) / draws)
        assert abs(h / draws - p) < 4 * se


def test_multigraph_walk_weights_parallel_edges():
    # Triangle with edge {0,1} doubled: 5 spanning trees, {0,1} in 4 of them.
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2), (0, 2)], merge_parallel=True)
    draws = 20000
    hits = sum((0, 1) in wilson_sample(g, make_rng(mix(4, i))).edges for i in range(draws))
    p = float(edge_probability(g, (0, 1)))
    assert p == pytest.approx(4 / 5)
    assert abs(hits / draws - p) < 4 * math.sqrt(p * (1 - p) / draws)
