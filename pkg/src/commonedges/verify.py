"""Oracle-agreement checks behind ``commonedges verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from scipy import stats

from .counting import (
    brute_force_pair_counts,
    cayley_forest_count,
    count_trees_containing,
    enumerate_spanning_trees,
    iter_forests,
    lcy_forest_count,
    moon_row,
)
from .distribution import (
    chen_stein_sum,
    exact_mean_complete,
    exact_pmf_complete,
    exact_variance_complete,
    poisson_pmf,
    tv_distance,
)
from .graph import Forest, Graph, Partition, UnionFind, make_complete, make_multipartite
from .rng import make_rng, mix
from .sampler import wilson_sample


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def random_forest(g: Graph, rng: random.Random) -> Forest:
    """Forest grown from a shuffled edge order, stopping at a random size."""
    order = list(g.edges)
    rng.shuffle(order)
    target = rng.randint(0, g.n - 1)
    uf = UnionFind(g.n)
    chosen = []
    for e in order:
        if len(chosen) == target:
            break
        if uf.union(*e):
            chosen.append(e)
    return Forest(g, tuple(chosen))


def check_forest_count(n: int = 6) -> CheckResult:
    checked = 0
    for k in range(1, n + 1):
        g = make_complete(k)
        for edges in iter_forests(g):
            f = Forest(g, edges)
            if cayley_forest_count(k, f.sizes) != count_trees_containing(g, f):
                return CheckResult("forest-count", False, {"n": k, "forest": list(edges)})
            checked += 1
    return CheckResult("forest-count", True, {"max_n": n, "forests": checked})


def check_lcy(random_forests: int = 500, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    checked = 0
    cases = [((2, 2), None), ((2, 3), None), ((2, 2, 2), None),
             ((3, 3, 2), random_forests), ((4, 3, 3), random_forests)]
    for sizes, samples in cases:
        p = Partition(sizes)
        g = make_multipartite(p)
        forests = (Forest(g, e) for e in iter_forests(g)) if samples is None else \
            (random_forest(g, rng) for _ in range(samples))
        for f in forests:
            if lcy_forest_count(p, f) != count_trees_containing(g, f):
                return CheckResult("lcy", False, {"sizes": sizes, "forest": list(f.edges)})
            checked += 1
    return CheckResult("lcy", True, {"forests": checked})


def check_moon(n: int = 5) -> CheckResult:
    detail = {}
    for k in range(2, n + 1):
        row = moon_row(k)
        brute = brute_force_pair_counts(make_complete(k))
        ok = row == brute and sum(row) == k ** (2 * (k - 2))
        detail[str(k)] = row
        if not ok:
            return CheckResult("moon", False, {"n": k, "moon": row, "brute": brute})
    return CheckResult("moon", True, detail)


def check_moments(n: int = 30) -> CheckResult:
    for k in range(2, n + 1):
        p = exact_pmf_complete(k)
        if p.mean != exact_mean_complete(k) or p.variance != exact_variance_complete(k):
            return CheckResult("moments", False, {"n": k})
    return CheckResult("moments", True, {"max_n": n})


def check_chen_stein(n: int = 100) -> CheckResult:
    exact = exact_pmf_complete(n).to_float()
    tv_limit = tv_distance(exact, poisson_pmf(2))
    tv_shifted = tv_distance(exact, poisson_pmf(2 - Fraction(2, n)))
    passed = tv_limit <= 52 / n and tv_shifted <= 50 / n and chen_stein_sum(n) <= Fraction(50, n)
    return CheckResult("chen-stein", passed, {"n": n, "tv_poi2": tv_limit, "bound_52_over_n": 52 / n,
                                              "tv_poi_shifted": tv_shifted, "bound_50_over_n": 50 / n})


def check_sampler(draws: int = 20000, seed: int = 0) -> CheckResult:
    """Chi-square uniformity of Wilson draws over the 16 trees of K_4."""
    g = make_complete(4)
    trees = enumerate_spanning_trees(g)
    index = {frozenset(t): i for i, t in enumerate(trees)}
    freq = [0] * len(trees)
    for i in range(draws):
        freq[index[wilson_sample(g, make_rng(mix(seed, i))).edges]] += 1
    pvalue = float(stats.chisquare(freq).pvalue)
    return CheckResult("sampler", pvalue > 1e-3, {"draws": draws, "pvalue": pvalue})


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "forest-count": check_forest_count,
    "lcy": check_lcy,
    "moon": check_moon,
    "moments": check_moments,
    "chen-stein": check_chen_stein,
    "sampler": check_sampler,
}


def run_checks(names: list[str] | None = None, n: int | None = None) -> list[CheckResult]:
    """Run the named checks (all by default); ``n`` overrides each check's size."""
    results = []
    for name in names or list(CHECKS):
        check = CHECKS[name]
        if n is not None and name in ("forest-count", "moon", "moments", "chen-stein"):
            results.append(check(n))
        else:
            results.append(check())
    return results
