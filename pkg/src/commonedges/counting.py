"""Exact spanning-tree counting.

Matrix-tree determinants, the forest-extension counts for complete and
complete multipartite graphs, Moon's pair-count formula, and a subset-filter
enumerator that serves as an independent oracle for all of them.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Sequence

from .graph import (
    Edge,
    Forest,
    Graph,
    GraphError,
    Partition,
    UnionFind,
    canonical_edge,
    contract_forest,
    make_complete,
)
from .linalg import adjugate_scaled_inverse, bareiss_det

log = logging.getLogger(__name__)

ENUMERATION_EDGE_CAP = 24


class InfeasibleError(RuntimeError):
    """The requested exact computation exceeds a configured size cap."""


def _as_integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to non-integer {x}")
    if x < 0:
        raise ArithmeticError(f"{what} evaluated to negative {x}")
    return x.numerator


def laplacian(g: Graph) -> list[list[int]]:
    lap = [[0] * g.n for _ in range(g.n)]
    for (u, v), k in zip(g.edges, g.mult):
        lap[u][u] += k
        lap[v][v] += k
        lap[u][v] -= k
        lap[v][u] -= k
    return lap


def count_spanning_trees(g: Graph) -> int:
    """Number of spanning trees, parallel edges counted separately.

    >>> count_spanning_trees(make_complete(4))
    16
    """
    if g.n == 1:
        return 1
    if not g.is_connected:
        return 0
    lap = laplacian(g)
    return bareiss_det([row[1:] for row in lap[1:]])


def count_trees_containing(g: Graph, f: Forest) -> int:
    """Spanning trees of ``g`` whose edge set contains ``f``.

    For a multigraph each forest edge stands for one designated copy of
    its vertex pair.
    """
    return count_spanning_trees(contract_forest(g, f))


def cayley_forest_count(n: int, sizes: Sequence[int]) -> int:
    """Trees on ``n`` labelled vertices containing a fixed forest whose
    components have the given sizes: ``(n_1 ... n_k) n^(k-2)``."""
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes) or sum(sizes) != n:
        raise ValueError(f"component sizes {sizes} do not partition n={n}")
    value = prod(sizes) * Fraction(n) ** (len(sizes) - 2)
    return _as_integer(value, "forest count")


# --- Moon's formula ---------------------------------------------------------

@lru_cache(maxsize=None)
def _moon_inner(n: int, s: int) -> Fraction:
    """The ``j``-summand of Moon's formula without its sign and binomial;
    it depends on ``m`` and ``j`` only through ``s = m + j``."""
    tail = sum(Fraction(comb(n - k, s - k) * n ** k, factorial(k)) for k in range(s + 1))
    falling = Fraction(factorial(n - 1), factorial(n - s - 1))
    return Fraction(n) ** (2 * (n - s - 2)) * falling * tail


def moon_pair_count(n: int, m: int) -> int:
    """Ordered pairs of labelled trees on ``n`` vertices sharing exactly ``m`` edges.

    The alternating double sum is evaluated in exact rationals because the
    power of ``n`` has a negative exponent once ``m + j > n - 2``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 <= m <= n - 1:
        raise ValueError(f"m must lie in 0..{n - 1}, got {m}")
    total = sum((-1) ** j * comb(m + j, m) * _moon_inner(n, m + j) for j in range(n - m))
    try:
        return _as_integer(total, f"Moon's formula at n={n}, m={m}")
    except ArithmeticError:
        if n > 6:
            raise
        brute = brute_force_pair_counts(make_complete(n))[m]
        log.error("Moon's formula gave %s at n=%d, m=%d; brute force says %d", total, n, m, brute)
        return brute


def moon_row(n: int) -> list[int]:
    return [moon_pair_count(n, m) for m in range(n)]


# --- multipartite forest counts ----------------------------------------------

def prufer_decode(seq: Sequence[int], d: int) -> list[Edge]:
    """Edges of the labelled tree on ``0..d-1`` with the given Prüfer code."""
    if len(seq) != max(d - 2, 0):
        raise ValueError(f"Prüfer code for d={d} must have length {max(d - 2, 0)}")
    if d == 1:
        return []
    degree = [1] * d
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(d) if degree[v] == 1)
        edges.append(canonical_edge(leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(d) if degree[w] == 1)
    edges.append((u, v))
    return sorted(edges)


def complete_graph_trees(d: int) -> Iterator[list[Edge]]:
    """All ``d^(d-2)`` spanning trees of K_d via their Prüfer codes."""
    for seq in itertools.product(range(d), repeat=max(d - 2, 0)):
        yield prufer_decode(seq, d)


def lcy_forest_count(p: Partition, f: Forest) -> int:
    """Spanning trees of K_{n_1..n_d} containing the spanning forest ``f``.

    Evaluates the Li-Chen-Yan closed form exactly: per-component weights
    ``alpha_j = sum_i (n - n_i) n_ij``, pair couplings
    ``a_pq = sum_j n_pj n_qj / alpha_j``, and a weighted sum over the
    spanning trees of K_d.
    """
    host = f.host
    if host.partition is not None and host.partition != p:
        raise GraphError("forest host carries a different partition")
    if host.n != p.n:
        raise GraphError("forest host does not match the partition size")
    part_of = p.part_of
    for u, v in f.edges:
        if part_of[u] == part_of[v]:
            raise GraphError(f"edge {(u, v)} lies inside one part")
    n, d = p.n, p.d
    gap = [n - s for s in p.sizes]
    counts = f.part_counts(p)
    k = len(f.components)
    alpha = [sum(gap[i] * counts[i][j] for i in range(d)) for j in range(k)]

    # Only components with two or more vertices can meet two parts.
    big = [j for j in range(k) if len(f.components[j]) > 1]
    coupling = {}
    for a, b in itertools.combinations(range(d), 2):
        coupling[a, b] = sum(Fraction(counts[a][j] * counts[b][j], alpha[j]) for j in big)

    tree_sum = Fraction(0)
    for tree in complete_graph_trees(d):
        term = Fraction(1)
        for a, b in tree:
            term *= gap[a] * gap[b] * (1 - (d - 1) * coupling[a, b])
        tree_sum += term
    scale = Fraction(prod(alpha), (d - 1) ** (d - 2) * prod(x * x for x in gap))
    return _as_integer(scale * tree_sum, "multipartite forest count")


# --- edge probabilities -------------------------------------------------------

def _require_connected(g: Graph) -> int:
    t = count_spanning_trees(g)
    if t == 0:
        raise GraphError("graph is disconnected; it has no spanning tree")
    return t


def edge_probability(g: Graph, e: Sequence[int]) -> Fraction:
    """Probability that a uniform spanning tree uses the vertex pair ``e``."""
    e = canonical_edge(*e)
    if e not in g.edge_index:
        raise GraphError(f"{e} is not an edge")
    t = _require_connected(g)
    return Fraction(g.multiplicity[e] * count_trees_containing(g, Forest(g, (e,))), t)


def edge_pair_probability(g: Graph, e1: Sequence[int], e2: Sequence[int]) -> Fraction:
    """Probability that a uniform spanning tree uses both vertex pairs."""
    e1, e2 = canonical_edge(*e1), canonical_edge(*e2)
    if e1 == e2:
        raise ValueError("identical edges; use edge_probability")
    for e in (e1, e2):
        if e not in g.edge_index:
            raise GraphError(f"{e} is not an edge")
    t = _require_connected(g)
    weight = g.multiplicity[e1] * g.multiplicity[e2]
    return Fraction(weight * count_trees_containing(g, Forest(g, (e1, e2))), t)


def edge_probabilities(g: Graph) -> dict[Edge, Fraction]:
    """All edge inclusion probabilities from one exact Laplacian inverse.

    Uses ``P(e in T) = mult(e) * R_eff(u, v)``; much cheaper than one
    contraction determinant per edge on large graphs.
    """
    if g.n == 1:
        return {}
    if not g.is_connected:
        raise GraphError("graph is disconnected; it has no spanning tree")
    lap = laplacian(g)
    d, b = adjugate_scaled_inverse([row[1:] for row in lap[1:]])

    def entry(i: int, j: int) -> int:
        return 0 if i == 0 or j == 0 else b[i - 1][j - 1]

    out = {}
    for (u, v), k in zip(g.edges, g.mult):
        resistance = entry(u, u) + entry(v, v) - 2 * entry(u, v)
        out[u, v] = Fraction(k * resistance, d)
    return out


# --- enumeration oracles --------------------------------------------------

def enumerate_spanning_trees(g: Graph, cap: int = ENUMERATION_EDGE_CAP) -> list[tuple[Edge, ...]]:
    """Every spanning tree of a simple graph, by filtering ``(n-1)``-subsets.

    Results are ordered by the bitmask of their edge indices.
    """
    if not g.is_simple:
        raise GraphError("enumeration oracle expects a simple graph")
    if g.m > cap:
        raise InfeasibleError(f"{g.m} edges exceeds the enumeration cap of {cap}")
    if g.n == 1:
        return [()]
    found = []
    for idx in itertools.combinations(range(g.m), g.n - 1):
        uf = UnionFind(g.n)
        if all(uf.union(*g.edges[i]) for i in idx):
            found.append((sum(1 << i for i in idx), tuple(g.edges[i] for i in idx)))
    found.sort()
    return [t for _, t in found]


def brute_force_pair_counts(g: Graph, cap: int = ENUMERATION_EDGE_CAP) -> list[int]:
    """``counts[m]`` = ordered pairs of spanning trees sharing exactly ``m`` edges."""
    trees = [frozenset(t) for t in enumerate_spanning_trees(g, cap)]
    counts = [0] * g.n
    for a in trees:
        for b in trees:
            counts[len(a & b)] += 1
    return counts


def iter_forests(g: Graph, cap: int | None = None) -> Iterator[tuple[Edge, ...]]:
    """Every acyclic edge subset of ``g`` (including the empty one).

    Depth-first over edge indices; raises :class:`InfeasibleError` once
    more than ``cap`` forests have been produced.
    """
    edges = g.edges
    n = g.n
    produced = 0

    def extend(start: int, chosen: list[Edge], labels: list[int]):
        nonlocal produced
        produced += 1
        if cap is not None and produced > cap:
            raise InfeasibleError(f"more than {cap} forests")
        yield tuple(chosen)
        for i in range(start, len(edges)):
            u, v = edges[i]
            a, b = labels[u], labels[v]
            if a == b:
                continue
            merged = [a if x == b else x for x in labels]
            chosen.append(edges[i])
            yield from extend(i + 1, chosen, merged)
            chosen.pop()

    yield from extend(0, [], list(range(n)))
