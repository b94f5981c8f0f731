import itertools
from collections import Counter
from fractions import Fraction

import pytest

from commonedges.graph import Graph, UnionFind

_ACCEPTANCE_LINES = []


def record_acceptance(number, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def naive_spanning_trees(g: Graph):
    """Spanning trees by brute force, written independently of the package oracle."""
    trees = []
    for subset in itertools.combinations(g.edges, g.n - 1):
        uf = UnionFind(g.n)
        if all(uf.union(u, v) for u, v in subset):
            trees.append(frozenset(subset))
    return trees


def brute_force_law(g: Graph):
    """Exact common-edge law from all ordered pairs of spanning trees."""
    trees = naive_spanning_trees(g)
    tally = Counter(len(a & b) for a in trees for b in trees)
    total = len(trees) ** 2
    return {m: Fraction(c, total) for m, c in sorted(tally.items())}


@pytest.fixture
def brute_law():
    return brute_force_law
