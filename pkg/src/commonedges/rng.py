"""Seed handling.

A run seed ``s`` (unsigned 64-bit) is expanded into per-draw seeds with
``mix(s, i)``: the ``i``-th output (0-based) of a SplitMix64 generator whose
state starts at ``s``. Each derived seed initialises numpy's PCG64 through
``numpy.random.SeedSequence``; samplers consume only ``Generator.random()``
doubles, so any tool with numpy can replay draw ``i`` exactly.
"""

from __future__ import annotations

import os

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
# XORed into the run seed to get an independent stream for random graphs.
GRAPH_STREAM = 0xD1B54A32D192ED03
SEED_ENV = "COMMONEDGES_SEED"


def splitmix64(x: int) -> int:
    """SplitMix64 output function (Steele, Lea & Flood 2014)."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(seed: int, i: int) -> int:
    return splitmix64((seed + (i + 1) * GOLDEN_GAMMA) & MASK64)


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def default_seed() -> int:
    return check_seed(os.environ.get(SEED_ENV, "0"))
