"""Finite simple weighted graphs, connected components and file formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DuplicateEdge, InvalidPath, ParseError, SelfLoop
from .numeric import FLOAT, NumericMode, format_value

Edge = tuple  # (u, v) with u < v


def edge_key(u: str, v: str) -> Edge:
    return (u, v) if u < v else (v, u)


def _check_label(label, line=None) -> str:
    if not isinstance(label, str) or not label or any(c.isspace() for c in label) or "#" in label:
        raise ParseError(f"invalid vertex label {label!r}", line)
    return label


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Immutable simple graph with nonnegative edge weights.

    Vertices are kept in sorted label order; edges are canonical ``(u, v)``
    tuples with ``u < v``. ``lexemes`` remembers the input text of weights so
    serialization can reproduce it.
    """

    vertices: tuple
    weights: Mapping
    lexemes: Mapping = field(default_factory=dict)
    mode: NumericMode = FLOAT

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple],
        vertices: Iterable[str] = (),
        mode: NumericMode = FLOAT,
        lexemes: Optional[Mapping] = None,
    ) -> "WeightedGraph":
        verts = {_check_label(v) for v in vertices}
        weights = {}
        for u, v, w in edges:
            _check_label(u)
            _check_label(v)
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            key = edge_key(u, v)
            if key in weights:
                raise DuplicateEdge(f"duplicate edge {u} {v}")
            weights[key] = mode.coerce(w)
            verts.update(key)
        lex = {k: s for k, s in (lexemes or {}).items() if k in weights}
        return cls(tuple(sorted(verts)), MappingProxyType(weights), MappingProxyType(lex), mode)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and dict(self.weights) == dict(other.weights)

    def __hash__(self):
        return hash((self.vertices, frozenset(self.weights.items())))

    def __repr__(self):
        return f"WeightedGraph(n={len(self.vertices)}, m={len(self.weights)})"

    @cached_property
    def edges(self) -> tuple:
        return tuple(sorted(self.weights))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for (u, v), w in self.weights.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        for lst in adj.values():
            lst.sort(key=lambda t: t[0])
        return adj

    @cached_property
    def structure_key(self) -> tuple:
        """Hashable description of the unweighted graph."""
        return (self.vertices, self.edges)

    def weight(self, u: str, v: str):
        return self.weights[edge_key(u, v)]

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.weights

    def neighbors(self, v: str) -> list:
        return self.adjacency[v]

    def lexeme(self, edge: Edge) -> str:
        """Weight text for ``edge``: the input lexeme when it is still accurate."""
        text = self.lexemes.get(edge)
        if text is not None:
            return text
        return format_value(self.weights[edge])

    def with_weights(self, weights: Mapping) -> "WeightedGraph":
        """Same structure, new weights (lexemes dropped where values changed)."""
        new = {k: self.mode.coerce(weights[k]) for k in self.weights}
        lex = {k: s for k, s in self.lexemes.items() if new[k] == self.weights[k]}
        return WeightedGraph(self.vertices, MappingProxyType(new), MappingProxyType(lex), self.mode)

    def with_edges(self, extra: Iterable[tuple]) -> "WeightedGraph":
        edges = [(u, v, w) for (u, v), w in self.weights.items()] + list(extra)
        return WeightedGraph.from_edges(edges, self.vertices, self.mode, self.lexemes)

    def without_edge(self, edge: Edge) -> "WeightedGraph":
        weights = {k: w for k, w in self.weights.items() if k != edge}
        lex = {k: s for k, s in self.lexemes.items() if k != edge}
        return WeightedGraph(self.vertices, MappingProxyType(weights), MappingProxyType(lex), self.mode)

    def path_edges(self, path: Sequence[str]) -> list:
        """Edges of a simple path given by its vertex sequence."""
        if len(path) == 0:
            raise InvalidPath("a path has at least one vertex")
        if len(set(path)) != len(path):
            raise InvalidPath(f"path repeats a vertex: {list(path)}")
        for v in path:
            if v not in self.adjacency:
                raise InvalidPath(f"unknown vertex {v!r}")
        out = []
        for a, b in zip(path, path[1:]):
            key = edge_key(a, b)
            if key not in self.weights:
                raise InvalidPath(f"{a!r} and {b!r} are not adjacent")
            out.append(key)
        return out


def components(g: WeightedGraph) -> list:
    """Connected components as sorted label lists, ordered by smallest label."""
    seen = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        seen.add(start)
        block, stack = [start], [start]
        while stack:
            x = stack.pop()
            for y, _ in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    block.append(y)
                    stack.append(y)
        out.append(sorted(block))
    return out


def is_connected(g: WeightedGraph) -> bool:
    return len(components(g)) <= 1


# formats -------------------------------------------------------------------


def parse_edge_list(text: str, mode: NumericMode = FLOAT) -> WeightedGraph:
    """Parse the line-oriented edge-list format.

    Each non-blank line is either ``vertex <label>`` or ``<u> <v> <w>``;
    ``#`` starts a comment.
    """
    verts = []
    edges = []
    lexemes = {}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 2 and tokens[0] == "vertex":
            verts.append(_check_label(tokens[1], lineno))
            continue
        if len(tokens) != 3:
            raise ParseError(f"expected '<u> <v> <w>' or 'vertex <label>', got {line!r}", lineno)
        u, v, lex = tokens
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}", lineno)
        key = edge_key(u, v)
        if key in seen:
            raise DuplicateEdge(f"edge {u} {v} already declared on line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append((u, v, mode.parse(lex, lineno)))
        lexemes[key] = lex
    return WeightedGraph.from_edges(edges, verts, mode, lexemes)


def parse_json(text: str, mode: NumericMode = FLOAT) -> WeightedGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or not isinstance(data.get("edges", []), list):
        raise ParseError("JSON graph must be an object with 'vertices' and 'edges' arrays")
    verts = data.get("vertices", [])
    if not isinstance(verts, list):
        raise ParseError("'vertices' must be an array")
    edges, lexemes = [], {}
    for i, item in enumerate(data.get("edges", [])):
        if not isinstance(item, dict) or not {"u", "v", "w"} <= set(item):
            raise ParseError(f"edge #{i} must be an object with keys u, v, w")
        u, v, w = item["u"], item["v"], item["w"]
        _check_label(u)
        _check_label(v)
        if isinstance(w, bool) or not isinstance(w, (str, int, float)):
            raise ParseError(f"edge #{i}: weight must be a string lexeme")
        lex = w if isinstance(w, str) else json.dumps(w)
        if u == v:
            raise SelfLoop(f"edge #{i}: self-loop at {u!r}")
        key = edge_key(u, v)
        if key in lexemes:
            raise DuplicateEdge(f"edge #{i}: duplicate edge {u} {v}")
        edges.append((u, v, mode.parse(lex)))
        lexemes[key] = lex.strip()
    return WeightedGraph.from_edges(edges, verts, mode, lexemes)


def parse_graph(text: str, mode: NumericMode = FLOAT, fmt: str = "auto") -> WeightedGraph:
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "edge-list"
    if fmt == "json":
        return parse_json(text, mode)
    if fmt == "edge-list":
        return parse_edge_list(text, mode)
    raise ValueError(f"unknown graph format {fmt!r}")


def serialize(g: WeightedGraph, fmt: str = "edge-list") -> str:
    if fmt == "edge-list":
        touched = {x for e in g.edges for x in e}
        lines = [f"vertex {v}" for v in g.vertices if v not in touched]
        lines += [f"{u} {v} {g.lexeme((u, v))}" for u, v in g.edges]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "vertices": list(g.vertices),
            "edges": [{"u": u, "v": v, "w": g.lexeme((u, v))} for u, v in g.edges],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")

