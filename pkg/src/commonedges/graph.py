"""Graph, partition and forest types plus structural predicates.

Vertices are the integers ``0..n-1``; edges are stored canonically as
``(min, max)`` tuples in sorted order, with a parallel tuple of
multiplicities (all 1 for simple graphs; contraction can create larger
values).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph, partition or forest."""


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


@dataclass(frozen=True)
class Partition:
    """Part sizes ``n_1..n_d`` of a complete multipartite graph.

    Part ``i`` owns the contiguous vertex block starting at ``offsets[i]``.
    """

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise GraphError(f"a partition needs d >= 2 parts, got {len(sizes)}")
        if any(s < 1 for s in sizes):
            raise GraphError(f"part sizes must be positive: {sizes}")

    @property
    def d(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.sizes[:-1]))

    @cached_property
    def part_of(self) -> tuple[int, ...]:
        """Part index of every vertex."""
        return tuple(i for i, s in enumerate(self.sizes) for _ in range(s))


@dataclass(frozen=True)
class Graph:
    """Undirected labelled (multi)graph on ``0..n-1``.

    Use :meth:`from_edges` rather than the raw constructor unless the edge
    tuple is already canonical and sorted.
    """

    n: int
    edges: tuple[Edge, ...]
    mult: tuple[int, ...] = ()
    partition: Partition | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        if not self.mult:
            object.__setattr__(self, "mult", (1,) * len(self.edges))
        if len(self.mult) != len(self.edges):
            raise GraphError("multiplicity tuple does not match edge tuple")
        prev = None
        for (u, v), k in zip(self.edges, self.mult):
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not 0 <= u < v < self.n:
                raise GraphError(f"edge {(u, v)} not canonical or out of range for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise GraphError("edges must be sorted and free of duplicates")
            if k < 1:
                raise GraphError(f"edge {(u, v)} has non-positive multiplicity {k}")
            prev = (u, v)
        if self.partition is not None and self.partition.n != self.n:
            raise GraphError("partition sizes do not sum to the vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], *,
                   merge_parallel: bool = False,
                   partition: Partition | None = None, name: str = "") -> "Graph":
        """Build a graph from arbitrary ``(u, v)`` pairs.

        Repeated pairs raise unless ``merge_parallel`` is set, in which case
        they add up into the edge multiplicity.
        """
        counts: dict[Edge, int] = {}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = canonical_edge(u, v)
            if e in counts and not merge_parallel:
                raise GraphError(f"duplicate edge {e}")
            counts[e] = counts.get(e, 0) + 1
        keys = sorted(counts)
        return cls(n, tuple(keys), tuple(counts[e] for e in keys), partition, name)

    @property
    def m(self) -> int:
        """Number of distinct vertex pairs carrying an edge."""
        return len(self.edges)

    @cached_property
    def multiplicity(self) -> dict[Edge, int]:
        return dict(zip(self.edges, self.mult))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def is_simple(self) -> bool:
        return all(k == 1 for k in self.mult)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_index

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbour lists; a neighbour is repeated once per parallel edge."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (u, v), k in zip(self.edges, self.mult):
            adj[u].extend([v] * k)
            adj[v].extend([u] * k)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` arrays of :attr:`adjacency` for compiled kernels."""
        adj = self.adjacency
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in adj])
        indices = np.fromiter((w for a in adj for w in a), dtype=np.int64,
                              count=int(indptr[-1]))
        return indptr, indices

    @cached_property
    def is_connected(self) -> bool:
        return is_connected(self)

    def describe(self) -> str:
        if self.name:
            return self.name
        if self.partition is not None:
            return "K_{" + ",".join(map(str, self.partition.sizes)) + "}"
        return f"graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Forest:
    """Acyclic edge subset of a host graph.

    ``components`` lists the vertex blocks of ``(V, edges)`` including
    singletons, ordered by smallest vertex.
    """

    host: Graph
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(sorted({canonical_edge(*e) for e in self.edges}))
        if len(edges) != len(self.edges):
            raise GraphError("forest contains a repeated edge")
        object.__setattr__(self, "edges", edges)
        index = self.host.edge_index
        uf = UnionFind(self.host.n)
        for e in edges:
            if e not in index:
                raise GraphError(f"forest edge {e} is not an edge of the host")
            if not uf.union(*e):
                raise GraphError(f"forest edge {e} closes a cycle")
        object.__setattr__(self, "_uf", uf)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Component index of every vertex (components numbered by smallest vertex)."""
        uf = self._uf
        root_label: dict[int, int] = {}
        out = []
        for v in range(self.host.n):
            r = uf.find(v)
            if r not in root_label:
                root_label[r] = len(root_label)
            out.append(root_label[r])
        return tuple(out)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        blocks: list[list[int]] = [[] for _ in range(max(self.labels) + 1)]
        for v, c in enumerate(self.labels):
            blocks[c].append(v)
        return tuple(tuple(b) for b in blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.components]

    def part_counts(self, partition: Partition) -> list[list[int]]:
        """Matrix ``counts[i][j]`` = vertices of component ``j`` lying in part ``i``."""
        if partition.n != self.host.n:
            raise GraphError("partition does not cover the host vertices")
        counts = [[0] * len(self.components) for _ in range(partition.d)]
        part_of = partition.part_of
        for v, c in enumerate(self.labels):
            counts[part_of[v]][c] += 1
        return counts


def is_acyclic(n: int, edges: Iterable[Edge]) -> bool:
    uf = UnionFind(n)
    return all(uf.union(u, v) for u, v in edges)


# --- constructors -----------------------------------------------------------

def make_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"K_n needs n >= 1, got {n}")
    return Graph(n, tuple(itertools.combinations(range(n), 2)), name=f"K_{n}")


def make_multipartite(p: Partition | Sequence[int]) -> Graph:
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    part_of = p.part_of
    edges = tuple((u, v) for u, v in itertools.combinations(range(p.n), 2)
                  if part_of[u] != part_of[v])
    return Graph(p.n, edges, partition=p)


def make_path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"P_{n}")


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a simple cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C_{n}")


def make_double_clique(n: int, k: int) -> Graph:
    """Two copies of K_{n/2} joined by ``k`` disjoint edges ``(i, n/2 + i)``."""
    if n % 2 or n < 2:
        raise GraphError(f"double clique needs an even n >= 2, got {n}")
    h = n // 2
    if not 1 <= k <= h:
        raise GraphError(f"need 1 <= k <= n/2 joining edges, got k={k}")
    edges = list(itertools.combinations(range(h), 2))
    edges += [(u + h, v + h) for u, v in itertools.combinations(range(h), 2)]
    edges += [(i, h + i) for i in range(k)]
    return Graph.from_edges(n, edges, name=f"2K_{h}+{k}")


def make_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, name="Petersen")


def sample_gnp(n: int, p: float, rng) -> Graph:
    """Erdős–Rényi G(n, p); pairs are visited in lexicographic order, one
    ``rng.random()`` draw each."""
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, tuple(edges))


# --- structure ------------------------------------------------------------

def components(g: Graph) -> int:
    uf = UnionFind(g.n)
    for u, v in g.edges:
        uf.union(u, v)
    return uf.count


def is_connected(g: Graph) -> bool:
    return components(g) == 1


def bridges(g: Graph) -> list[Edge]:
    """Edges whose removal disconnects their component.

    Iterative low-link DFS; an edge of multiplicity > 1 is never a bridge.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * g.n
    low = [0] * g.n
    out: list[Edge] = []
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[tuple[int, int, Iterator[tuple[int, int]]]] = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, i in it:
                if i == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, i, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent] and g.mult[via] == 1:
                        out.append(g.edges[via])
    return sorted(out)


def contract_forest(g: Graph, f: Forest) -> Graph:
    """Collapse every component of ``f`` to one vertex.

    Edges inside a component disappear; edges between components keep
    their multiplicities, summed over parallel classes. Spanning trees of
    the result correspond to spanning trees of ``g`` that contain ``f``.
    """
    if f.host is not g and f.host != g:
        raise GraphError("forest belongs to a different host graph")
    if not f.edges:
        return g
    labels = f.labels
    counts: dict[Edge, int] = {}
    for (u, v), k in zip(g.edges, g.mult):
        a, b = labels[u], labels[v]
        if a != b:
            e = canonical_edge(a, b)
            counts[e] = counts.get(e, 0) + k
    keys = sorted(counts)
    return Graph(len(f.components), tuple(keys), tuple(counts[e] for e in keys))


# --- edge-list text format ----------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment.

    A pair listed twice becomes a parallel edge.
    """
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if len(tok) != 2 or tok[0] != "n":
                raise GraphError(f"line {lineno}: expected header 'n <count>'")
            n = int(tok[1])
            continue
        if len(tok) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        u, v = int(tok[0]), int(tok[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range for n={n}")
        pairs.append((u, v))
    if n is None:
        raise GraphError("missing 'n <count>' header")
    return Graph.from_edges(n, pairs, merge_parallel=True)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    for (u, v), k in zip(g.edges, g.mult):
        lines.extend([f"{u} {v}"] * k)
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
