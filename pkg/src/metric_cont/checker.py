"""Pseudosemimetrizability decision and violating-cycle certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import DomainError, InternalError
from .graph import Edge, WeightedGraph, edge_key
from .numeric import UNREACHABLE, NumericMode, format_value
from .solver import DistanceMatrix, all_pairs, path_weight, reconstruct, single_source
from .triangle import TriangleFamily


@dataclass
class EdgeRecord:
    edge: Edge
    w: object
    d: object
    passed: bool
    boundary: bool = False


@dataclass
class Verdict:
    family: TriangleFamily
    mode: NumericMode
    records: list
    matrix: Optional[DistanceMatrix] = field(default=None, repr=False)

    @property
    def metrizable(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failing_edges(self) -> list:
        return [r.edge for r in self.records if not r.passed]

    @property
    def boundary_edges(self) -> list:
        return [r.edge for r in self.records if r.boundary]


@dataclass
class ViolationCertificate:
    """Edge ``{cycle[0], cycle[-1]}`` outweighs the rest of ``cycle``."""

    edge: Edge
    cycle: list
    lhs: object
    rhs: object

    def revalidate(self, g: WeightedGraph, f: TriangleFamily, mode: Optional[NumericMode] = None) -> bool:
        """Recompute both sides from the graph and confirm lhs > rhs."""
        mode = mode or g.mode
        cyc = self.cycle
        if len(cyc) < 3 or len(set(cyc)) != len(cyc):
            return False
        if edge_key(cyc[0], cyc[-1]) != self.edge or not g.has_edge(*self.edge):
            return False
        try:
            rest = g.path_edges(cyc)
        except Exception:
            return False
        if self.edge in rest:
            return False
        lhs = g.weights[self.edge]
        rhs = f.fold([g.weights[e] for e in rest])
        return mode.lt(rhs, lhs)


def domain_violations(g: WeightedGraph, f: TriangleFamily) -> list:
    """Edges whose weight lies below the family's admissible floor."""
    return [e for e in g.edges if g.weights[e] < f.domain_floor]


def check(
    g: WeightedGraph,
    f: TriangleFamily,
    mode: Optional[NumericMode] = None,
    *,
    boundary: bool = True,
    threads: int = 1,
) -> Verdict:
    """Compare every edge weight with the subdominant distance of its endpoints.

    An edge fails exactly when some other path is lighter than the edge by
    more than the tolerance. With ``boundary`` set, passing edges whose best
    alternative path ties with the edge weight are flagged.
    """
    mode = mode or g.mode
    mode.require(f)
    bad = domain_violations(g, f)
    if bad:
        raise DomainError(
            f"{len(bad)} edge weight(s) below the floor {f.domain_floor} of {f.name}", bad
        )
    m = all_pairs(g, f, threads=threads)
    records = []
    for e in g.edges:
        u, v = e
        w, d = g.weights[e], m[u, v]
        passed = not mode.lt(d, w)
        flag = False
        if passed and boundary:
            alt = single_source(g, f, u, exclude_edge=e)[0][v]
            flag = alt is not UNREACHABLE and mode.close(alt, w)
        records.append(EdgeRecord(e, w, d, passed, flag))
    return Verdict(f, mode, records, m)


def certificate(
    g: WeightedGraph,
    f: TriangleFamily,
    edge: Edge,
    predecessors: Mapping,
    mode: Optional[NumericMode] = None,
) -> ViolationCertificate:
    """Cycle made of a minimizing path between the endpoints plus the edge.

    ``predecessors`` is the predecessor map of the single-source run from
    ``edge[0]``.
    """
    mode = mode or g.mode
    u, v = edge
    try:
        path = reconstruct(predecessors, u, v)
    except KeyError as exc:
        raise InternalError(f"cannot rebuild a path for {edge}: {exc}") from None
    if len(path) < 3:
        raise InternalError(f"minimizing path for {edge} is the edge itself")
    cert = ViolationCertificate(edge_key(u, v), path, g.weights[edge_key(u, v)], path_weight(f, g, path))
    if not cert.revalidate(g, f, mode):
        raise InternalError(f"certificate for {edge} does not re-validate")
    return cert


def certificates(g: WeightedGraph, verdict: Verdict) -> list:
    m = verdict.matrix if verdict.matrix is not None else all_pairs(g, verdict.family)
    return [certificate(g, verdict.family, e, m.preds[e[0]], verdict.mode) for e in verdict.failing_edges]


def check_report(verdict: Verdict, certs: list, g: Optional[WeightedGraph] = None) -> dict:
    """JSON-ready report; weights use the graph's lexemes when ``g`` is given."""

    def wtext(e, value):
        return g.lexeme(e) if g is not None else format_value(value)

    by_edge = {c.edge: c for c in certs}
    violations = []
    for r in verdict.records:
        if r.passed:
            continue
        c = by_edge.get(r.edge)
        violations.append({
            "edge": list(r.edge),
            "w": wtext(r.edge, r.w),
            "d": format_value(r.d),
            "cycle": list(c.cycle) if c else None,
            "rhs": format_value(c.rhs) if c else None,
        })
    return {
        "family": verdict.family.name,
        "mode": verdict.mode.to_dict(),
        "metrizable": verdict.metrizable,
        "domain_violations": [],
        "violations": violations,
        "boundary_edges": [list(e) for e in verdict.boundary_edges],
    }


def domain_report(g: WeightedGraph, f: TriangleFamily, mode: Optional[NumericMode] = None) -> dict:
    """Report for inputs rejected before any distance is computed."""
    mode = mode or g.mode
    return {
        "family": f.name,
        "mode": mode.to_dict(),
        "metrizable": None,
        "domain_violations": [
            {"edge": list(e), "w": g.lexeme(e), "floor": format_value(f.floor_in(mode))}
            for e in domain_violations(g, f)
        ],
        "violations": [],
        "boundary_edges": [],
    }
