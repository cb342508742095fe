"""Instance generators for the exhaustive and randomized test suites."""

from __future__ import annotations

import os
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from .graph import WeightedGraph
from .numeric import FLOAT, NumericMode
from .triangle import TriangleFamily

DEFAULT_SEED = 20240917
LABELS = "abcdefghijklmnopqrstuvwxyz"


def suite_seed(default: int = DEFAULT_SEED) -> int:
    """Seed for randomized suites; ``METRIC_CONT_SEED`` overrides it."""
    env = os.environ.get("METRIC_CONT_SEED")
    return int(env) if env not in (None, "") else default


@lru_cache(maxsize=None)
def connected_structures(max_n: int = 5) -> tuple:
    """Connected graphs with 2..max_n vertices, one per isomorphism class.

    Each entry is ``(vertices, edges, edge_permutations)`` where the
    permutations are the automorphism group acting on edge positions.
    """
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < 2 or n > max_n or not nx.is_connected(h):
            continue
        verts = tuple(LABELS[i] for i in range(n))
        int_edges = sorted(tuple(sorted(e)) for e in h.edges())
        pos = {e: i for i, e in enumerate(int_edges)}
        perms = {
            tuple(pos[tuple(sorted((iso[a], iso[b])))] for a, b in int_edges)
            for iso in GraphMatcher(h, h).isomorphisms_iter()
        }
        edges = [(LABELS[a], LABELS[b]) for a, b in int_edges]
        out.append((verts, tuple(edges), tuple(sorted(perms))))
    return tuple(out)


def orbit_representatives(m: int, perms, k: int) -> np.ndarray:
    """Index vectors in ``range(k)**m`` that are lexicographically minimal in their orbit."""
    grid = np.indices((k,) * m).reshape(m, -1).T if m else np.zeros((1, 0), dtype=int)
    place = k ** np.arange(m - 1, -1, -1)
    code = grid @ place
    keep = np.ones(len(grid), dtype=bool)
    for perm in perms:
        keep &= code <= grid[:, list(perm)] @ place
    return grid[keep]


def exhaustive_suite(max_n: int = 5, weights=(1, 2, 3), mode: NumericMode = FLOAT) -> Iterator[WeightedGraph]:
    """Every connected graph on up to ``max_n`` vertices with every weighting
    drawn from ``weights``, one representative per isomorphism class of the
    weighted graph."""
    values = [mode.coerce(w) for w in weights]
    for verts, edges, perms in connected_structures(max_n):
        for idx in orbit_representatives(len(edges), perms, len(values)):
            triples = [(u, v, values[i]) for (u, v), i in zip(edges, idx)]
            yield WeightedGraph.from_edges(triples, verts, mode)


def random_weight(rng: random.Random, mode: NumericMode, floor=0):
    """Weight in (floor, 10]; exact mode draws multiples of 1/12."""
    if mode.exact:
        span = Fraction(10 - floor)
        return floor + span * Fraction(rng.randint(1, 120), 120)
    return floor + (10 - floor) * (1.0 - rng.random())


def random_graph(
    rng: random.Random,
    mode: NumericMode = FLOAT,
    n_range=(3, 8),
    density=(0.25, 0.6),
    floor=0,
) -> WeightedGraph:
    n = rng.randint(*n_range)
    p = rng.uniform(*density)
    verts = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((verts[i], verts[j], random_weight(rng, mode, floor)))
    return WeightedGraph.from_edges(edges, verts, mode)


def random_suite(
    count: int = 1000,
    seed: int | None = None,
    mode: NumericMode = FLOAT,
    family: TriangleFamily | None = None,
    **kwargs,
) -> Iterator[WeightedGraph]:
    """Seeded random graphs; weights respect the family's floor."""
    rng = random.Random(suite_seed() if seed is None else seed)
    floor = family.domain_floor if family is not None else 0
    for _ in range(count):
        yield random_graph(rng, mode, floor=floor, **kwargs)
