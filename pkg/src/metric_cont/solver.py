"""Path weights, the subdominant distance and continuation matrices.

Distances are computed by label setting. Extending a path never lowers its
weight (f(a, b) >= max(a, b)) and f is monotone, so the first time a vertex
is settled its label is minimal over all joining paths.
"""

from __future__ import annotations

import heapq
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .errors import DomainError, NotMetrizable
from .graph import Edge, WeightedGraph, components, edge_key
from .numeric import UNREACHABLE, NumericMode, format_value
from .triangle import TriangleFamily


def path_weight(f: TriangleFamily, g: WeightedGraph, path: Sequence[str]):
    """Fold of the edge weights along ``path``; identity for a single vertex."""
    edges = g.path_edges(path)
    if not edges:
        return f.identity_in(g.mode)
    return f.fold([g.weights[e] for e in edges])


def single_source(
    g: WeightedGraph,
    f: TriangleFamily,
    source: str,
    *,
    exclude_edge: Optional[Edge] = None,
):
    """Minimal path weight from ``source`` to every vertex.

    Returns ``(dist, pred)``. Vertices outside the source's component map to
    UNREACHABLE and have no predecessor. Among equally good predecessors the
    smallest label wins.
    """
    if source not in g.adjacency:
        raise KeyError(source)
    f.check_domain(*g.weights.values())
    ident = f.identity_in(g.mode)
    dist = {source: ident}
    pred = {}
    done = set()
    heap = [(ident, source)]
    adj = g.adjacency
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        done.add(x)
        for y, w in adj[x]:
            if y in done:
                continue
            if exclude_edge is not None and edge_key(x, y) == exclude_edge:
                continue
            cand = w if x == source else f.raw(d, w)
            old = dist.get(y)
            if old is None or cand < old:
                dist[y] = cand
                pred[y] = x
                heapq.heappush(heap, (cand, y))
            elif cand == old and x < pred[y]:
                pred[y] = x
    for v in g.vertices:
        if v not in dist:
            dist[v] = UNREACHABLE
    return dist, pred


def reconstruct(pred: Mapping, source: str, target: str) -> list:
    """Vertex sequence of the predecessor path from ``source`` to ``target``."""
    path = [target]
    while path[-1] != source:
        prev = pred.get(path[-1])
        if prev is None or len(path) > len(pred) + 1:
            raise KeyError(f"no predecessor path from {source!r} to {target!r}")
        path.append(prev)
    path.reverse()
    return path


@dataclass
class DistanceMatrix:
    """Symmetric matrix of distances over ``order``."""

    order: tuple
    rows: list
    family: TriangleFamily
    mode: NumericMode
    preds: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.order)}

    def __getitem__(self, pair):
        u, v = pair
        return self.rows[self.index[u]][self.index[v]]

    def items(self) -> Iterator:
        for i, u in enumerate(self.order):
            for j, v in enumerate(self.order):
                yield u, v, self.rows[i][j]

    def path(self, u: str, v: str) -> list:
        return reconstruct(self.preds[u], u, v)

    def to_tsv(self) -> str:
        lines = ["\t".join([""] + list(self.order))]
        for u, row in zip(self.order, self.rows):
            lines.append("\t".join([u] + [format_value(x) for x in row]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "order": list(self.order),
            "d": [[format_value(x) for x in row] for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"


def all_pairs(
    g: WeightedGraph,
    f: TriangleFamily,
    *,
    threads: int = 1,
    fast_max: bool = False,
) -> DistanceMatrix:
    """Distances between all vertex pairs, one label-setting run per source."""
    if fast_max and f.kind == "max":
        return minimax_all_pairs(g, f)
    f.check_domain(*g.weights.values())
    order = g.vertices
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: single_source(g, f, s), order))
    else:
        results = [single_source(g, f, s) for s in order]
    rows = [[dist[v] for v in order] for dist, _ in results]
    preds = {s: pred for s, (_, pred) in zip(order, results)}
    return DistanceMatrix(order, rows, f, g.mode, preds)


def minimax_all_pairs(g: WeightedGraph, f: TriangleFamily) -> DistanceMatrix:
    """Bottleneck distances for the max family via a minimum spanning forest."""
    if f.kind != "max":
        raise ValueError("minimax shortcut only applies to the max family")
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = {v: [] for v in g.vertices}
    for (u, v), w in sorted(g.weights.items(), key=lambda kv: (kv[1], kv[0])):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree[u].append((v, w))
            tree[v].append((u, w))
    ident = f.identity_in(g.mode)
    order = g.vertices
    rows, preds = [], {}
    for s in order:
        dist, pred = {s: ident}, {}
        stack = [s]
        while stack:
            x = stack.pop()
            for y, w in tree[x]:
                if y not in dist:
                    dist[y] = w if x == s else max(dist[x], w)
                    pred[y] = x
                    stack.append(y)
        rows.append([dist.get(v, UNREACHABLE) for v in order])
        preds[s] = pred
    return DistanceMatrix(order, rows, f, g.mode, preds)


def triangle_violations(m: DistanceMatrix, mode: Optional[NumericMode] = None) -> Iterator[tuple]:
    """Triples ``(u, p, v)`` with d(u,v) > f(d(u,p), d(p,v)) beyond tolerance."""
    mode = mode or m.mode
    f = m.family
    rows = m.rows
    n = len(m.order)
    for i in range(n):
        for k in range(n):
            a = rows[i][k]
            if a is UNREACHABLE:
                continue
            for j in range(n):
                b = rows[k][j]
                c = rows[i][j]
                if b is UNREACHABLE or c is UNREACHABLE:
                    continue
                if not mode.le(c, f.raw(a, b)):
                    yield (m.order[i], m.order[k], m.order[j])


def is_pseudosemimetric(m: DistanceMatrix, mode: Optional[NumericMode] = None) -> bool:
    """Symmetric, identity on the diagonal, finite, generalized triangle inequality."""
    mode = mode or m.mode
    ident = m.family.identity_in(m.mode)
    n = len(m.order)
    for i in range(n):
        if not mode.close(m.rows[i][i], ident):
            return False
        for j in range(n):
            x, y = m.rows[i][j], m.rows[j][i]
            if x is UNREACHABLE or y is UNREACHABLE or not mode.close(x, y):
                return False
    return next(triangle_violations(m, mode), None) is None


def build_continuation(
    g: WeightedGraph,
    f: TriangleFamily,
    bridge_weights=None,
    *,
    force: bool = False,
    threads: int = 1,
) -> DistanceMatrix:
    """Maximal continuation of ``w`` to all vertex pairs.

    Disconnected graphs are joined by bridges from each component's smallest
    vertex to the smallest vertex of the graph. ``bridge_weights`` is a single
    weight, a mapping from representative label (or component index) to
    weight, or None for the identity of ``f``.
    """
    if not force:
        from .checker import check

        verdict = check(g, f, boundary=False)
        if not verdict.metrizable:
            raise NotMetrizable(f"weight is not {f.name}-pseudosemimetrizable", verdict)
    comps = components(g)
    if len(comps) <= 1:
        return all_pairs(g, f, threads=threads)
    reps = [c[0] for c in comps]
    ident = f.identity_in(g.mode)
    bridges = []
    for i in range(1, len(comps)):
        if bridge_weights is None:
            a = ident
        elif isinstance(bridge_weights, Mapping):
            a = bridge_weights.get(reps[i], bridge_weights.get(i, ident))
        else:
            a = bridge_weights
        a = g.mode.coerce(a)
        if a < f.domain_floor:
            raise DomainError(f"bridge weight {a} is below the floor {f.domain_floor} of {f.name}", [a])
        bridges.append((reps[i], reps[0], a))
    return all_pairs(g.with_edges(bridges), f, threads=threads)
