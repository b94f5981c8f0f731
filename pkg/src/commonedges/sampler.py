"""Uniform spanning tree samplers.

Wilson's loop-erased random walk is the production sampler; it runs as a
numba kernel over a CSR adjacency in which a neighbour appears once per
parallel edge, so walks step proportionally to multiplicity. Aldous-Broder
is kept in plain Python as an independent cross-check.

Both samplers draw exactly one ``rng.random()`` per walk step and pick
neighbour ``floor(u * deg)`` of the sorted neighbour list. Wilson's walks
start from vertices ``1..n-1`` in order and root the tree at vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Edge, Graph, GraphError, UnionFind, canonical_edge
from .rng import make_rng


@dataclass(frozen=True)
class SpanningTree:
    host: Graph
    edges: frozenset[Edge]

    def __post_init__(self):
        n = self.host.n
        if len(self.edges) != n - 1:
            raise GraphError(f"spanning tree of n={n} needs {n - 1} edges, got {len(self.edges)}")
        uf = UnionFind(n)
        index = self.host.edge_index
        for e in self.edges:
            if e not in index:
                raise GraphError(f"{e} is not an edge of the host")
            if not uf.union(*e):
                raise GraphError(f"{e} closes a cycle")

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))


@njit(cache=True, nogil=True)
def wilson_parents(indptr, indices, n, rng, parent):
    """Fill ``parent`` with a uniform spanning in-tree rooted at 0.

    The graph must be connected; otherwise a walk never terminates.
    """
    in_tree = np.zeros(n, dtype=np.bool_)
    in_tree[0] = True
    parent[0] = -1
    for i in range(1, n):
        u = i
        while not in_tree[u]:
            deg = indptr[u + 1] - indptr[u]
            k = int(rng.random() * deg)
            if k >= deg:
                k = deg - 1
            parent[u] = indices[indptr[u] + k]
            u = parent[u]
        u = i
        while not in_tree[u]:
            in_tree[u] = True
            u = parent[u]


@njit(cache=True, nogil=True)
def shared_edge_count(first, other, n):
    """Edges ``{v, first[v]}`` that also belong to the tree encoded by ``other``."""
    count = 0
    for v in range(1, n):
        w = first[v]
        if other[v] == w or other[w] == v:
            count += 1
    return count


@njit(cache=True, nogil=True)
def pair_common_edges(indptr, indices, n, rng_a, rng_b, pa, pb):
    wilson_parents(indptr, indices, n, rng_a, pa)
    wilson_parents(indptr, indices, n, rng_b, pb)
    return shared_edge_count(pa, pb, n)


def parents_to_edges(parent) -> frozenset[Edge]:
    return frozenset(canonical_edge(v, int(parent[v])) for v in range(1, len(parent)))


def _require_connected(g: Graph) -> None:
    if not g.is_connected:
        raise GraphError("graph is disconnected; it has no spanning tree")


def wilson_sample(g: Graph, seed: int | np.random.Generator) -> SpanningTree:
    """Uniform spanning tree of ``g`` by Wilson's algorithm.

    ``seed`` is a 64-bit seed or an already constructed Generator.
    """
    _require_connected(g)
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    if g.n == 1:
        return SpanningTree(g, frozenset())
    indptr, indices = g.csr
    parent = np.empty(g.n, dtype=np.int64)
    wilson_parents(indptr, indices, g.n, rng, parent)
    return SpanningTree(g, parents_to_edges(parent))


def wilson_sample_python(g: Graph, seed: int | np.random.Generator) -> SpanningTree:
    """Interpreted twin of :func:`wilson_sample`; same draws, same tree."""
    _require_connected(g)
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    adj = g.adjacency
    in_tree = [False] * g.n
    in_tree[0] = True
    parent = [-1] * g.n
    for i in range(1, g.n):
        u = i
        while not in_tree[u]:
            nbrs = adj[u]
            parent[u] = nbrs[min(int(rng.random() * len(nbrs)), len(nbrs) - 1)]
            u = parent[u]
        u = i
        while not in_tree[u]:
            in_tree[u] = True
            u = parent[u]
    return SpanningTree(g, parents_to_edges(parent))


def aldous_broder_sample(g: Graph, seed: int | np.random.Generator) -> SpanningTree:
    """Uniform spanning tree from the first-entrance edges of a random walk
    started at vertex 0 and run until every vertex has been visited."""
    _require_connected(g)
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    adj = g.adjacency
    visited = [False] * g.n
    visited[0] = True
    remaining = g.n - 1
    edges = set()
    u = 0
    while remaining:
        nbrs = adj[u]
        w = nbrs[min(int(rng.random() * len(nbrs)), len(nbrs) - 1)]
        if not visited[w]:
            visited[w] = True
            remaining -= 1
            edges.add(canonical_edge(u, w))
        u = w
    return SpanningTree(g, frozenset(edges))


def common_edges(t1: SpanningTree, *others: SpanningTree) -> int:
    """Number of edges present in every given tree."""
    if not others:
        raise TypeError("common_edges needs at least two trees")
    shared = set(t1.edges)
    for t in others:
        if t.host is not t1.host and t.host != t1.host:
            raise GraphError("trees span different host graphs")
        shared &= t.edges
    return len(shared)
