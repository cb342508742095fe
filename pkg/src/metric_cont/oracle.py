"""Brute-force reference answers by exhaustive path and cycle enumeration.

Nothing here calls the label-setting solver: distances are minima over every
simple path, verdicts come from every (cycle, edge) pair. The enumerations
depend only on the unweighted structure and are cached, so sweeping many
weightings of one graph is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from .errors import DomainError, TooLarge, UnsupportedTransform
from .graph import WeightedGraph, edge_key, serialize
from .numeric import UNREACHABLE, NumericMode, format_value
from .triangle import TriangleFamily

DEFAULT_LIMIT = 12


def _guard(g: WeightedGraph, limit: int) -> None:
    if len(g.vertices) > limit:
        raise TooLarge(f"{len(g.vertices)} vertices exceed the enumeration limit of {limit}")


def _adjacency(structure) -> dict:
    vertices, edges = structure
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj.values():
        lst.sort()
    return adj


@lru_cache(maxsize=8192)
def simple_paths_from(structure, source) -> dict:
    """Every simple path leaving ``source``, grouped by endpoint, as edge tuples."""
    adj = _adjacency(structure)
    out = {source: [()]}
    on_path = {source}
    stack = [(source, iter(adj[source]), ())]
    while stack:
        x, it, edges = stack[-1]
        y = next(it, None)
        if y is None:
            stack.pop()
            on_path.discard(x)
            continue
        if y in on_path:
            continue
        path = edges + (edge_key(x, y),)
        out.setdefault(y, []).append(path)
        on_path.add(y)
        stack.append((y, iter(adj[y]), path))
    return out


@lru_cache(maxsize=4096)
def simple_cycles(structure) -> tuple:
    """All simple cycles, each once: smallest vertex first, then the smaller direction."""
    vertices, _ = structure
    adj = _adjacency(structure)
    rank = {v: i for i, v in enumerate(vertices)}
    found = []
    for s in vertices:
        path = [s]
        on_path = {s}

        def extend(x):
            for y in adj[x]:
                if rank[y] < rank[s]:
                    continue
                if y == s:
                    if len(path) >= 3 and rank[path[1]] < rank[path[-1]]:
                        found.append(tuple(path))
                elif y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    extend(y)
                    path.pop()
                    on_path.discard(y)

        extend(s)
    return tuple(found)


def cycle_edges(cycle) -> list:
    k = len(cycle)
    return [edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def brute_distance(g: WeightedGraph, f: TriangleFamily, u: str, v: str, *, limit: int = DEFAULT_LIMIT):
    """Minimum fold over every simple u-v path, or UNREACHABLE."""
    _guard(g, limit)
    if u == v:
        return f.identity_in(g.mode)
    paths = simple_paths_from(g.structure_key, u).get(v)
    if not paths:
        return UNREACHABLE
    w = g.weights
    return min(f.fold([w[e] for e in p]) for p in paths)


def brute_all_pairs(g: WeightedGraph, f: TriangleFamily, *, limit: int = DEFAULT_LIMIT) -> dict:
    """brute_distance for every ordered pair; each unordered pair is enumerated once."""
    _guard(g, limit)
    f.check_domain(*g.weights.values())
    w = g.weights
    ident = f.identity_in(g.mode)
    out = {}
    for i, u in enumerate(g.vertices):
        out[u, u] = ident
        paths = simple_paths_from(g.structure_key, u)
        for v in g.vertices[i + 1:]:
            ps = paths.get(v)
            d = min(f.fold([w[e] for e in p], checked=False) for p in ps) if ps else UNREACHABLE
            out[u, v] = out[v, u] = d
    return out


@dataclass
class CycleVerdict:
    metrizable: bool
    failing_edges: list = field(default_factory=list)
    witness: Optional[tuple] = None  # (cycle, edge)
    cycles_checked: int = 0


def _sweep(g: WeightedGraph, limit: int, violated: Callable) -> CycleVerdict:
    """Apply ``violated(weights_of_cycle_edges, i)`` to every cycle and position."""
    _guard(g, limit)
    failing = set()
    witness = None
    cycles = simple_cycles(g.structure_key)
    for cyc in cycles:
        edges = cycle_edges(cyc)
        ws = [g.weights[e] for e in edges]
        for i, e in enumerate(edges):
            if violated(ws, i):
                failing.add(e)
                if witness is None:
                    witness = (cyc, e)
    return CycleVerdict(not failing, sorted(failing), witness, len(cycles))


def brute_cycle_check(
    g: WeightedGraph, f: TriangleFamily, mode: Optional[NumericMode] = None, *, limit: int = DEFAULT_LIMIT
) -> CycleVerdict:
    """Test w(e) <= fold(C minus e) for every simple cycle C and edge e of C."""
    mode = mode or g.mode
    f.check_domain(*g.weights.values())

    def violated(ws, i):
        rest = ws[i + 1:] + ws[:i]
        return mode.lt(f.fold(rest), ws[i])

    return _sweep(g, limit, violated)


def two_max_rule(g: WeightedGraph, *, limit: int = DEFAULT_LIMIT) -> CycleVerdict:
    """Every cycle must attain its maximum weight on at least two edges."""

    def violated(ws, i):
        top = max(ws)
        return ws[i] == top and ws.count(top) < 2

    return _sweep(g, limit, violated)


def phi_rule(
    g: WeightedGraph, f: TriangleFamily, mode: Optional[NumericMode] = None, *, limit: int = DEFAULT_LIMIT
) -> CycleVerdict:
    """Closed-form cycle test specialised to the family.

    additive: 2 * max(C) <= sum(C); power p: w(e)^p <= sum of p-th powers of
    the rest; multiplicative: w(e) <= product of the rest, all weights >= 1;
    homeomorphism phi: w(e) <= phi^-1(sum of phi over the rest).
    """
    mode = mode or g.mode
    kind = f.kind
    if kind == "additive":

        def violated(ws, i):
            top = max(ws)
            return ws[i] == top and mode.lt(sum(ws), 2 * top)

    elif kind == "multiplicative":
        low = [e for e in g.edges if g.weights[e] < 1]
        if low:
            raise DomainError("multiplicative continuation needs every weight >= 1", low)

        def violated(ws, i):
            prod = 1
            for j, x in enumerate(ws):
                if j != i:
                    prod = prod * x
            return mode.lt(prod, ws[i])

    elif kind == "power":
        p = f.p
        exact = mode.exact and isinstance(p, int)

        def violated(ws, i):
            rest = ws[i + 1:] + ws[:i]
            if exact:
                return sum(x**p for x in rest) < ws[i] ** p
            return mode.lt(sum(float(x) ** p for x in rest) ** (1.0 / p), ws[i])

    elif kind == "phi" or (kind == "custom" and f.has_transform):
        fwd, inv = f.forward, f.inverse

        def violated(ws, i):
            rest = ws[i + 1:] + ws[:i]
            return mode.lt(inv(sum(fwd(float(x)) for x in rest)), ws[i])

    else:
        raise UnsupportedTransform(f"no closed-form cycle rule for {f.name}")
    return _sweep(g, limit, violated)


def verify_equivalence(
    g: WeightedGraph,
    f: TriangleFamily,
    mode: Optional[NumericMode] = None,
    *,
    limit: int = DEFAULT_LIMIT,
    checker: Optional[Callable] = None,
) -> dict:
    """Cross-check the three equivalent metrizability criteria and the distances.

    ``checker`` replaces the label-setting checker (used for fault injection).
    The returned report extends the checker report with per-criterion
    verdicts, an ``agreement`` flag and a list of disagreements.
    """
    from .checker import certificates, check, check_report
    from .solver import all_pairs, build_continuation, is_pseudosemimetric, minimax_all_pairs

    mode = mode or g.mode
    _guard(g, limit)
    mode.require(f)
    checker = checker or check
    verdict = checker(g, f, mode)
    cyc = brute_cycle_check(g, f, mode, limit=limit)

    cont = build_continuation(g, f, force=True)
    restricts = all(mode.close(cont[u, v], g.weights[(u, v)]) for u, v in g.edges)
    criterion_i = restricts and is_pseudosemimetric(cont, mode)

    criteria = {"i": criterion_i, "ii": verdict.metrizable, "iii": cyc.metrizable}
    if f.kind == "max":
        rule = two_max_rule(g, limit=limit)
        criteria["rule"] = rule.metrizable
    elif f.has_transform:
        rule = phi_rule(g, f, mode, limit=limit)
        criteria["rule"] = rule.metrizable
    else:
        rule = None

    disagreements = []
    if len(set(criteria.values())) != 1:
        disagreements.append(f"criteria differ: {criteria}")
    if sorted(verdict.failing_edges) != cyc.failing_edges:
        disagreements.append(f"failing edges differ: checker {verdict.failing_edges} vs cycles {cyc.failing_edges}")
    if rule is not None and rule.failing_edges != cyc.failing_edges:
        disagreements.append(f"closed-form rule fails at {rule.failing_edges}, cycles at {cyc.failing_edges}")

    fast = verdict.matrix if verdict.matrix is not None else all_pairs(g, f)
    matrices = [("label-setting", fast)]
    if f.kind == "max":
        matrices.append(("minimax", minimax_all_pairs(g, f)))
    brute = brute_all_pairs(g, f, limit=limit)
    for name, m in matrices:
        for (u, v), want in brute.items():
            got = m[u, v]
            same = got is want if want is UNREACHABLE or got is UNREACHABLE else mode.close(got, want)
            if not same:
                disagreements.append(f"{name} d({u},{v})={format_value(got)} but enumeration gives {format_value(want)}")
                break

    try:
        certs = certificates(g, verdict) if not verdict.metrizable else []
    except Exception as exc:  # a lying checker can make reconstruction fail
        certs = []
        disagreements.append(f"certificate construction failed: {exc}")
    report = check_report(verdict, certs, g)
    report["criteria"] = criteria
    report["agreement"] = not disagreements
    report["disagreements"] = disagreements
    if disagreements:
        report["instance"] = serialize(g)
    return report
