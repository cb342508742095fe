import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from metric_cont import EXACT, FLOAT, WeightedGraph, parse_edge_list, parse_family
from metric_cont.triangle import BUILTIN_FAMILIES

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FAMILIES = [parse_family(name) for name in BUILTIN_FAMILIES]
EXACT_FAMILIES = [f for f in FAMILIES if f.exact_capable]


@pytest.fixture(params=FAMILIES, ids=lambda f: f.name)
def family(request):
    return request.param


def make_graph(edges, mode=FLOAT, vertices=()):
    """``edges`` is ``"a b 1, b c 2"`` shorthand for an edge list."""
    lines = [f"vertex {v}" for v in vertices] + [c.strip() for c in edges.split(",") if c.strip()]
    return parse_edge_list("\n".join(lines), mode)


@st.composite
def graphs(draw, min_n=1, max_n=6, floor=0, exact=False, connected=False):
    n = draw(st.integers(min_n, max_n))
    labels = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(labels, 2))
    present = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    if connected:
        # a random spanning path keeps the graph connected
        order = draw(st.permutations(labels))
        chain = {tuple(sorted(e)) for e in zip(order, order[1:])}
        present = [p or pair in chain for p, pair in zip(present, pairs)]
    if exact:
        weight = st.fractions(min_value=0, max_value=10, max_denominator=6).map(lambda q: floor + q)
        mode = EXACT
    else:
        weight = st.floats(min_value=0, max_value=10, allow_nan=False).map(lambda x: floor + x)
        mode = FLOAT
    edges = [(u, v, draw(weight)) for (u, v), keep in zip(pairs, present) if keep]
    return WeightedGraph.from_edges(edges, labels, mode)


def floor_of(f):
    return Fraction(f.domain_floor)
