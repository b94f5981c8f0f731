"""Laws of the common-edge count and their reference distributions.

Exact pmfs hold :class:`fractions.Fraction` masses; Poisson and Monte Carlo
pmfs hold floats. A truncated reference keeps its missing mass in ``tail``
so distance computations can report an honest upper bound.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Mapping, Sequence

from scipy import stats

from .counting import (
    InfeasibleError,
    count_spanning_trees,
    count_trees_containing,
    iter_forests,
    moon_pair_count,
)
from .graph import Forest, Graph, GraphError

FOREST_CAP = 2_000_000
POISSON_TAIL = 1e-12
FLOAT_SUM_TOL = 1e-12

Number = Fraction | float


@dataclass(frozen=True)
class Pmf:
    """Finite probability mass function on the nonnegative integers."""

    masses: Mapping[int, Number]
    exact: bool
    tail: float = 0.0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        masses = {int(m): p for m, p in sorted(self.masses.items()) if p != 0}
        if any(m < 0 for m in masses):
            raise ValueError("pmf support must be nonnegative")
        if any(p < 0 for p in masses.values()):
            raise ValueError("pmf masses must be nonnegative")
        if self.exact:
            masses = {m: Fraction(p) for m, p in masses.items()}
            if self.tail or sum(masses.values()) != 1:
                raise ValueError(f"exact masses sum to {sum(masses.values())}, not 1")
        else:
            masses = {m: float(p) for m, p in masses.items()}
            total = math.fsum(masses.values()) + self.tail
            if abs(total - 1) > FLOAT_SUM_TOL:
                raise ValueError(f"masses plus tail sum to {total!r}")
        object.__setattr__(self, "masses", masses)

    @property
    def support(self) -> list[int]:
        return list(self.masses)

    def __getitem__(self, m: int) -> Number:
        return self.masses.get(m, Fraction(0) if self.exact else 0.0)

    def moment(self, r: int) -> Number:
        return pmf_moment(self, r)

    @property
    def mean(self) -> Number:
        return pmf_moment(self, 1)

    @property
    def variance(self) -> Number:
        mu = self.mean
        return pmf_moment(self, 2) - mu * mu

    def to_float(self) -> "Pmf":
        return Pmf({m: float(p) for m, p in self.masses.items()}, exact=False,
                   tail=self.tail, label=self.label)

    def to_dict(self) -> dict:
        support = self.support
        if self.exact:
            mass = [f"{p.numerator}/{p.denominator}" for p in self.masses.values()]
        else:
            mass = list(self.masses.values())
        out = {"support": support, "mass": mass, "exact": self.exact}
        if self.tail:
            out["tail"] = self.tail
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "Pmf":
        exact = bool(data["exact"])
        conv = Fraction if exact else float
        masses = {int(m): conv(p) for m, p in zip(data["support"], data["mass"])}
        return cls(masses, exact=exact, tail=float(data.get("tail", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> "Pmf":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "mass"])
        for m, p in self.masses.items():
            writer.writerow([m, f"{p.numerator}/{p.denominator}" if self.exact else repr(p)])
        return buf.getvalue()

    @classmethod
    def from_counts(cls, counts: Sequence[int] | Mapping[int, int], label: str = "") -> "Pmf":
        items = counts.items() if isinstance(counts, Mapping) else enumerate(counts)
        items = [(int(m), int(c)) for m, c in items if c]
        total = sum(c for _, c in items)
        return cls({m: c / total for m, c in items}, exact=False, label=label)


def point_mass(m: int) -> Pmf:
    return Pmf({m: Fraction(1)}, exact=True)


def pmf_moment(p: Pmf, r: int) -> Number:
    """Raw moment ``sum m^r p(m)``; exact for exact pmfs."""
    if r < 0:
        raise ValueError("moment order must be nonnegative")
    if p.exact:
        return sum((Fraction(m) ** r * q for m, q in p.masses.items()), Fraction(0))
    return math.fsum(m ** r * q for m, q in p.masses.items())


def tv_distance(p: Pmf, q: Pmf) -> Number:
    """Total variation distance; an upper bound when either side has a tail."""
    support = set(p.masses) | set(q.masses)
    if p.exact and q.exact:
        return sum((abs(p[m] - q[m]) for m in support), Fraction(0)) / 2
    diff = math.fsum(abs(float(p[m]) - float(q[m])) for m in support)
    return 0.5 * (diff + p.tail + q.tail)


# --- reference laws ------------------------------------------------------

def poisson_pmf(lam: float, cap: int | None = None) -> Pmf:
    """Poisson(lam) on ``0..cap``; the remainder is carried as ``tail``.

    Without ``cap`` the smallest cap with tail below ``1e-12`` is used.
    """
    if lam <= 0:
        raise ValueError(f"Poisson mean must be positive, got {lam}")
    lam = float(lam)
    if cap is None:
        cap = int(stats.poisson.isf(POISSON_TAIL, lam))
        while stats.poisson.sf(cap, lam) >= POISSON_TAIL:
            cap += 1
        while cap > 0 and stats.poisson.sf(cap - 1, lam) < POISSON_TAIL:
            cap -= 1
    masses = {m: float(stats.poisson.pmf(m, lam)) for m in range(cap + 1)}
    tail = float(stats.poisson.sf(cap, lam))
    return Pmf(masses, exact=False, tail=tail, label=f"Poi({lam:g})")


def binomial_pmf(n: int, p: Fraction | float) -> Pmf:
    """Binomial(n, p), exact when ``p`` is a Fraction."""
    if isinstance(p, Fraction):
        return Pmf({m: comb(n, m) * p ** m * (1 - p) ** (n - m) for m in range(n + 1)},
                   exact=True, label=f"Bin({n},{p})")
    return Pmf({m: float(stats.binom.pmf(m, n, p)) for m in range(n + 1)},
               exact=False, label=f"Bin({n},{p:g})")


# --- exact laws -------------------------------------------------------------

def _law_from_binomial_moments(binomial_moments: Sequence[Fraction]) -> dict[int, Fraction]:
    """Inclusion-exclusion: ``P(X = m) = sum_s (-1)^(s-m) C(s, m) B_s``."""
    top = len(binomial_moments)
    return {m: sum((-1) ** (s - m) * comb(s, m) * binomial_moments[s] for s in range(m, top))
            for m in range(top)}


def exact_pmf_complete(n: int) -> Pmf:
    """Law of the common-edge count of two uniform labelled trees on ``n`` vertices."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    total = n ** (2 * (n - 2))
    return Pmf({m: Fraction(moon_pair_count(n, m), total) for m in range(n)},
               exact=True, label=f"K_{n}")


def exact_pmf_general(g: Graph, cap: int = FOREST_CAP) -> Pmf:
    """Exact common-edge law for any connected graph.

    Sums squared forest-containment probabilities by forest size (binomial
    moments) and inverts by inclusion-exclusion. Containment counts are
    memoised on the component partition, which is all a contraction sees.
    """
    t = count_spanning_trees(g)
    if t == 0:
        raise GraphError("graph is disconnected; it has no spanning tree")
    weight = [0] * g.n
    counts: dict[tuple[int, ...], int] = {}
    for edges in iter_forests(g, cap):
        f = Forest(g, edges)
        key = f.labels
        c = counts.get(key)
        if c is None:
            c = counts[key] = count_trees_containing(g, f)
        # A vertex pair is in the tree if any of its parallel copies is.
        w = prod(g.multiplicity[e] for e in edges) * c
        weight[len(edges)] += w * w
    law = _law_from_binomial_moments([Fraction(w, t * t) for w in weight])
    return Pmf(law, exact=True, label=g.describe())


def _integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - part, part):
            yield (part,) + rest


@lru_cache(maxsize=None)
def _forests_by_shape(n: int) -> tuple[tuple[int, int, int], ...]:
    """``(edges, forests, prod of sizes)`` for each component-size multiset of
    spanning forests of K_n."""
    if n > 60:
        raise InfeasibleError(f"partition enumeration for n={n} is too large")
    out = []
    for shape in _integer_partitions(n):
        forests = factorial(n)
        for size in shape:
            forests //= factorial(size)
        for mult in Counter(shape).values():
            forests //= factorial(mult)
        # Cayley: a block of size s has s^(s-2) trees; the product is integral overall.
        trees = prod(Fraction(size) ** (size - 2) for size in shape)
        forests = forests * trees
        assert forests.denominator == 1
        out.append((n - len(shape), forests.numerator, prod(shape)))
    return tuple(out)


def exact_pmf_complete_k(n: int, k: int) -> Pmf:
    """Law of the number of edges shared by ``k`` independent uniform trees
    on ``n`` labelled vertices.

    Groups forests of K_n by component sizes and uses the closed-form count
    of trees containing a forest; independent of Moon's formula at ``k = 2``.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    total = Fraction(n) ** (n - 2)
    moments = [Fraction(0)] * n
    for s, forests, size_product in _forests_by_shape(n):
        containing = size_product * Fraction(n) ** (n - s - 2)
        moments[s] += forests * (containing / total) ** k
    return Pmf(_law_from_binomial_moments(moments), exact=True, label=f"K_{n}^({k})")


# --- closed forms -------------------------------------------------------

def exact_mean_complete(n: int) -> Fraction:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return Fraction(2 * (n - 1), n)


def exact_variance_complete(n: int) -> Fraction:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return Fraction((n - 1) * (n - 2) * (2 * n - 3), n ** 3)


def limiting_mean_multipartite(c: Sequence[float | Fraction]) -> float | Fraction:
    """Poisson mean of the common-edge count for K_{n_1..n_d} with ``n_i / n -> c_i``."""
    c = list(c)
    if len(c) < 2:
        raise ValueError("need at least two parts")
    if any(x <= 0 for x in c):
        raise ValueError(f"part fractions must be positive: {c}")
    exact = all(isinstance(x, (int, Fraction)) for x in c)
    if exact and sum(c) != 1 or not exact and abs(math.fsum(map(float, c)) - 1) > 1e-9:
        raise ValueError(f"part fractions must sum to 1: {c}")
    total = Fraction(0) if exact else 0.0
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            a, b = c[i], c[j]
            total += a * b * (2 - a - b) ** 2 / ((1 - a) ** 2 * (1 - b) ** 2)
    return total


@lru_cache(maxsize=None)
def stirling2(r: int, s: int) -> int:
    """Stirling number of the second kind, ``S(r, s)``."""
    if r < 0 or s < 0:
        raise ValueError("Stirling arguments must be nonnegative")
    if r == s:
        return 1
    if s == 0 or s > r:
        return 0
    return s * stirling2(r - 1, s) + stirling2(r - 1, s - 1)


def bell_moment(lam: int | Fraction | float, r: int) -> int | Fraction | float:
    """r-th raw moment of Poisson(lam), ``sum_s S(r, s) lam^s``."""
    return sum(stirling2(r, s) * lam ** s for s in range(r + 1))


def dobinski_moment(lam: float, r: int, tol: float = 1e-15) -> float:
    """r-th Poisson moment as the truncated series ``e^-lam sum lam^k k^r / k!``."""
    total = 0.0
    term_k = math.exp(-lam)  # e^-lam lam^k / k!
    k = 0
    while True:
        contrib = term_k * k ** r
        total += contrib
        k += 1
        term_k *= lam / k
        if k > lam + r + 1 and term_k * k ** r < tol:
            return total


def chen_stein_sum(n: int) -> Fraction:
    """Local-dependence bound on TV(X_n, Poi(2 - 2/n)) before simplification."""
    pairs = comb(n, 2)
    return 2 * (pairs * 2 * (n - 1) * Fraction(16, n ** 4)
                + pairs * (2 * n - 3) * Fraction(9, n ** 4))


def chen_stein_bound(n: int) -> tuple[float, float]:
    """``(50/n, 52/n)``: TV bounds against Poi(2 - 2/n) and Poi(2)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 50 / n, 52 / n


def k_tree_bounds(n: int, k: int) -> tuple[float, float]:
    """Bonferroni lower and union upper bounds on the probability that ``k``
    uniform spanning trees of K_n share an edge."""
    if k < 3:
        raise ValueError(f"bounds are stated for k >= 3 trees, got k={k}")
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    upper = comb(n, 2) * Fraction(2, n) ** k
    adjacent = Fraction(n * (n - 1) * (n - 2), 2) * Fraction(3, n * n) ** k
    disjoint = Fraction(n * (n - 1) * (n - 2) * (n - 3), 8) * Fraction(4, n * n) ** k
    return float(upper - adjacent - disjoint), float(upper)


def summary_line(p: Pmf) -> str:
    """One-line mean / variance / TV-to-fitted-Poisson summary."""
    mean, var = float(p.mean), float(p.variance)
    fit = tv_distance(p.to_float(), poisson_pmf(mean)) if mean > 0 else float("nan")
    return f"mean={mean:.12g} variance={var:.12g} tv_poisson_fit={fit:.6g}"
