"""Seeded simulation of common-edge counts.

Trial ``i`` of a two-tree experiment draws its trees from the derived seeds
``mix(seed, 2i)`` and ``mix(seed, 2i + 1)``; with ``k`` trees the seeds are
``mix(seed, k*i + j)``. Random graphs for trial ``i`` come from
``mix(seed ^ GRAPH_STREAM, i)``. Trials are split into contiguous blocks
for the worker pool and their tallies summed, so results never depend on
the number of workers.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np
from numba import njit

from . import graph as graphs
from .distribution import Pmf
from .graph import Graph, GraphError, bridges
from .rng import GRAPH_STREAM, check_seed, make_rng, mix
from .sampler import pair_common_edges, wilson_parents


@dataclass
class SampleReport:
    graph: str
    trials: int
    seed: int
    counts: dict[int, int]
    extra: dict[str, Any] = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def empirical(self) -> Pmf:
        return Pmf.from_counts(self.counts, label=self.graph)

    @property
    def mean(self) -> float:
        return math.fsum(m * c for m, c in self.counts.items()) / self.trials

    @property
    def variance(self) -> float:
        mu = self.mean
        return math.fsum(c * (m - mu) ** 2 for m, c in self.counts.items()) / self.trials

    def standard_error(self) -> float:
        return math.sqrt(self.variance / self.trials)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["counts"] = {str(m): c for m, c in sorted(self.counts.items())}
        out["empirical"] = self.empirical.to_dict()
        out["mean"] = self.mean
        out["variance"] = self.variance
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SampleReport":
        return cls(graph=data["graph"], trials=data["trials"], seed=data["seed"],
                   counts={int(m): c for m, c in data["counts"].items()},
                   extra=data.get("extra", {}), elapsed=data.get("elapsed", 0.0))


def _tally(values: np.ndarray) -> dict[int, int]:
    return {int(m): int(c) for m, c in enumerate(np.bincount(values)) if c}


def _run_blocks(trials: int, workers: int, block: Callable[[int, int], np.ndarray]) -> np.ndarray:
    """Evaluate ``block(lo, hi)`` over contiguous trial ranges and concatenate."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    workers = max(1, int(workers))
    if workers == 1:
        return block(0, trials)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    with ThreadPoolExecutor(workers) as pool:
        parts = list(pool.map(block, bounds[:-1], bounds[1:]))
    return np.concatenate(parts)


@njit(cache=True, nogil=True)
def _in_tree(parent, u, v):
    return parent[u] == v or parent[v] == u


def simulate_common_edges(g: Graph, trials: int, seed: int, workers: int = 1) -> SampleReport:
    """Common-edge counts of ``trials`` independent pairs of uniform spanning trees.

    Every bridge of ``g`` is tracked; ``extra["bridge_common_fraction"]``
    reports how often each one was shared.
    """
    seed = check_seed(seed)
    if not g.is_connected:
        raise GraphError("graph is disconnected; it has no spanning tree")
    start = time.perf_counter()
    n = g.n
    indptr, indices = g.csr
    tracked = bridges(g)

    def block(lo: int, hi: int) -> np.ndarray:
        out = np.zeros((hi - lo, 1 + len(tracked)), dtype=np.int64)
        if n == 1:
            return out
        pa = np.empty(n, dtype=np.int64)
        pb = np.empty(n, dtype=np.int64)
        for i in range(lo, hi):
            row = out[i - lo]
            row[0] = pair_common_edges(indptr, indices, n,
                                       make_rng(mix(seed, 2 * i)), make_rng(mix(seed, 2 * i + 1)),
                                       pa, pb)
            for j, (u, v) in enumerate(tracked, 1):
                row[j] = _in_tree(pa, u, v) and _in_tree(pb, u, v)
        return out

    results = _run_blocks(trials, workers, block)
    extra = {"bridge_common_fraction": {f"{u}-{v}": float(results[:, j].mean())
                                        for j, (u, v) in enumerate(tracked, 1)}}
    return SampleReport(g.describe(), trials, seed, _tally(results[:, 0]), extra,
                        time.perf_counter() - start)


@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if not 0 < self.p <= 1:
            raise ValueError(f"edge probability must lie in (0, 1], got {self.p}")


@njit(cache=True, nogil=True)
def _gnp_trial(n, p, rng_graph, rng_a, rng_b, pa, pb):
    """One G(n, p) draw and two Wilson trees on it; -1 when disconnected.

    Pairs are drawn in lexicographic order, so the CSR rows come out sorted
    exactly as for a :class:`Graph` with the same edges.
    """
    us = np.empty(n * (n - 1) // 2, dtype=np.int64)
    vs = np.empty_like(us)
    m = 0
    degree = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            if rng_graph.random() < p:
                us[m] = u
                vs[m] = v
                m += 1
                degree[u] += 1
                degree[v] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    for u in range(n):
        indptr[u + 1] = indptr[u] + degree[u]
    fill = indptr[:-1].copy()
    indices = np.empty(2 * m, dtype=np.int64)
    for e in range(m):
        u, v = us[e], vs[e]
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    # breadth-first connectivity check
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    seen[0] = True
    queue[0] = 0
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            w = indices[k]
            if not seen[w]:
                seen[w] = True
                queue[tail] = w
                tail += 1
    if tail < n:
        return -1
    return pair_common_edges(indptr, indices, n, rng_a, rng_b, pa, pb)


def simulate_gnp(spec: GnpSpec, trials: int, seed: int, workers: int = 1) -> SampleReport:
    """Common edges of two uniform spanning trees of a fresh G(n, p) per trial.

    A disconnected draw counts as zero common edges; the fraction of such
    draws is reported in ``extra["disconnected_fraction"]``.
    """
    seed = check_seed(seed)
    start = time.perf_counter()
    n, p = spec.n, float(spec.p)
    graph_seed = seed ^ GRAPH_STREAM

    def block(lo: int, hi: int) -> np.ndarray:
        out = np.empty(hi - lo, dtype=np.int64)
        pa = np.empty(n, dtype=np.int64)
        pb = np.empty(n, dtype=np.int64)
        for i in range(lo, hi):
            out[i - lo] = _gnp_trial(n, p, make_rng(mix(graph_seed, i)),
                                     make_rng(mix(seed, 2 * i)), make_rng(mix(seed, 2 * i + 1)),
                                     pa, pb)
        return out

    results = _run_blocks(trials, workers, block)
    disconnected = int((results < 0).sum())
    results[results < 0] = 0
    extra = {"n": n, "p": p, "disconnected_fraction": disconnected / trials}
    return SampleReport(f"G({n},{p:g})", trials, seed, _tally(results), extra,
                        time.perf_counter() - start)


@njit(cache=True, nogil=True)
def _k_tree_intersection(parents, n):
    count = 0
    k = parents.shape[0]
    for v in range(1, n):
        w = parents[0, v]
        shared = True
        for j in range(1, k):
            if not (parents[j, v] == w or parents[j, w] == v):
                shared = False
                break
        if shared:
            count += 1
    return count


def simulate_k_trees(n: int, k: int, trials: int, seed: int, workers: int = 1,
                     g: Graph | None = None) -> SampleReport:
    """Size of the common intersection of ``k`` uniform spanning trees.

    The host defaults to K_n. ``extra`` records the frequency of a nonempty
    intersection and, among those trials, the fraction with exactly one edge.
    """
    seed = check_seed(seed)
    if k < 2:
        raise ValueError(f"need k >= 2 trees, got {k}")
    g = graphs.make_complete(n) if g is None else g
    if not g.is_connected:
        raise GraphError("graph is disconnected; it has no spanning tree")
    start = time.perf_counter()
    n = g.n
    indptr, indices = g.csr

    def block(lo: int, hi: int) -> np.ndarray:
        out = np.zeros(hi - lo, dtype=np.int64)
        if n == 1:
            return out
        parents = np.empty((k, n), dtype=np.int64)
        for i in range(lo, hi):
            for j in range(k):
                wilson_parents(indptr, indices, n, make_rng(mix(seed, k * i + j)), parents[j])
            out[i - lo] = _k_tree_intersection(parents, n)
        return out

    results = _run_blocks(trials, workers, block)
    counts = _tally(results)
    nonempty = trials - counts.get(0, 0)
    extra = {
        "k": k,
        "nonempty_frequency": nonempty / trials,
        "single_edge_fraction": counts.get(1, 0) / nonempty if nonempty else float("nan"),
    }
    return SampleReport(f"{g.describe()} x{k}", trials, seed, counts, extra,
                        time.perf_counter() - start)


# --- scenario presets ---------------------------------------------------------

@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    description: str
    family: str
    params: tuple

    def graph(self, rng_seed: int = 0) -> Graph:
        return build_graph(self.family, self.params, rng_seed)

    def run(self, trials: int, seed: int, workers: int = 1) -> SampleReport:
        if self.family == "gnp":
            return simulate_gnp(GnpSpec(*self.params), trials, seed, workers)
        return simulate_common_edges(self.graph(), trials, seed, workers)


def build_graph(family: str, params: tuple, rng_seed: int = 0) -> Graph:
    """Graph of a builtin family; ``gnp`` uses ``rng_seed`` for its single draw."""
    builders = {
        "complete": graphs.make_complete,
        "path": graphs.make_path,
        "cycle": graphs.make_cycle,
        "double-clique": graphs.make_double_clique,
        "multipartite": lambda *sizes: graphs.make_multipartite(sizes),
        "gnp": lambda n, p: graphs.sample_gnp(n, p, make_rng(mix(rng_seed ^ GRAPH_STREAM, 0))),
    }
    if family not in builders:
        raise ValueError(f"unknown graph family {family!r}")
    return builders[family](*params)


def scenario_presets() -> list[ScenarioPreset]:
    return [
        ScenarioPreset("tree", "path on 10 vertices: X = 9 always", "path", (10,)),
        ScenarioPreset("bipartite-thin", "K_{2,16}: near-binomial regime", "multipartite", (2, 16)),
        ScenarioPreset("double-clique", "two K_10 joined by one bridge", "double-clique", (20, 1)),
        ScenarioPreset("double-clique-3", "two K_10 joined by three edges", "double-clique", (20, 3)),
        ScenarioPreset("complete", "K_100: Poisson(2) regime", "complete", (100,)),
        ScenarioPreset("multipartite", "K_{34,33,33}: Poisson(3) regime", "multipartite", (34, 33, 33)),
        ScenarioPreset("gnp", "G(100, 0.5): Poisson(4) regime", "gnp", (100, 0.5)),
        ScenarioPreset("gnp-sparse", "G(200, 0.05): sparse regime, no limit asserted", "gnp", (200, 0.05)),
    ]


def get_preset(name: str) -> ScenarioPreset:
    for preset in scenario_presets():
        if preset.name == name:
            return preset
    raise KeyError(f"unknown preset {name!r}")
