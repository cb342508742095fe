"""Exit criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
"""

import contextlib
import io
import math
import random
import subprocess
import sys
import time
from dataclasses import dataclass, field

import pytest

from metric_cont.checker import certificates, check
from metric_cont.cli import main
from metric_cont.errors import DomainError
from metric_cont.graph import components, parse_edge_list, parse_graph, serialize
from metric_cont.numeric import EXACT, FLOAT, UNREACHABLE, NumericMode
from metric_cont.oracle import brute_all_pairs, brute_cycle_check, phi_rule, two_max_rule
from metric_cont.solver import all_pairs, build_continuation, is_pseudosemimetric, single_source, triangle_violations
from metric_cont.suites import exhaustive_suite, random_graph, random_suite
from metric_cont.triangle import BUILTIN_FAMILIES, custom, parse_family, validate_family

SEED = 20240917
RANDOM_COUNT = 1000
REL_TOL = 1e-9  # float-mode distance agreement
pytestmark = pytest.mark.slow

FAMILIES = [parse_family(name) for name in BUILTIN_FAMILIES]


def announce(request, number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    with request.config.pluginmanager.get_plugin("capturemanager").global_and_fixture_disabled():
        print("\n" + line, flush=True)
    return ok


def rel_err(a, b):
    if a == b:
        return 0.0
    a, b = float(a), float(b)
    return abs(a - b) / max(abs(a), abs(b))


@dataclass
class Tally:
    instances: int = 0
    pairs: int = 0
    distance_mismatches: list = field(default_factory=list)
    max_rel_err: float = 0.0
    verdict_disagreements: list = field(default_factory=list)
    triangle_failures: int = 0
    dominance_failures: int = 0
    certificates: int = 0
    invalid_certificates: list = field(default_factory=list)
    rule_disagreements: list = field(default_factory=list)
    non_metrizable: int = 0
    distance_seconds: float = 0.0


def certificate_ok(cert, g, f, mode):
    cyc = cert.cycle
    simple = len(cyc) >= 3 and len(set(cyc)) == len(cyc)
    contains = {cyc[0], cyc[-1]} == set(cert.edge) and g.has_edge(*cert.edge)
    return simple and contains and cert.revalidate(g, f, mode)


def sweep_instance(t: Tally, g, f, mode: NumericMode):
    t.instances += 1
    start = time.perf_counter()
    m = all_pairs(g, f)
    brute = brute_all_pairs(g, f)
    for (u, v), want in brute.items():
        t.pairs += 1
        got = m[u, v]
        if want is UNREACHABLE or got is UNREACHABLE:
            ok = got is want
        elif mode.exact:
            ok = got == want
        else:
            err = rel_err(got, want)
            t.max_rel_err = max(t.max_rel_err, err)
            ok = err <= REL_TOL
        if not ok and len(t.distance_mismatches) < 5:
            t.distance_mismatches.append((serialize(g), u, v, got, want))
    t.distance_seconds += time.perf_counter() - start

    verdict = check(g, f, mode, boundary=False)
    cyc = brute_cycle_check(g, f, mode)
    cont = build_continuation(g, f, force=True)
    crit_i = all(mode.close(cont[e], w) for e, w in g.weights.items()) and is_pseudosemimetric(cont, mode)
    if not (verdict.metrizable == cyc.metrizable == crit_i) or verdict.failing_edges != cyc.failing_edges:
        t.verdict_disagreements.append((serialize(g), verdict.metrizable, cyc.metrizable, crit_i))

    if next(triangle_violations(m, mode), None) is not None:
        t.triangle_failures += 1
    if any(not mode.le(m[e], w) for e, w in g.weights.items()):
        t.dominance_failures += 1

    if not verdict.metrizable:
        t.non_metrizable += 1
        for cert in certificates(g, verdict):
            t.certificates += 1
            if not certificate_ok(cert, g, f, mode):
                t.invalid_certificates.append((serialize(g), cert))

    rule = two_max_rule(g) if f.kind == "max" else phi_rule(g, f, mode)
    if rule.failing_edges != cyc.failing_edges:
        t.rule_disagreements.append(serialize(g))


def suite_runs():
    for f in FAMILIES:
        modes = [EXACT, FLOAT] if f.exact_capable else [FLOAT]
        for mode in modes:
            yield "exhaustive", f, mode, lambda mode=mode: exhaustive_suite(5, (1, 2, 3), mode)
            yield "random", f, mode, lambda mode=mode, f=f: random_suite(RANDOM_COUNT, SEED, mode, f)


@pytest.fixture(scope="module")
def sweep():
    tallies = {}
    for suite, f, mode, make in suite_runs():
        t = Tally()
        for g in make():
            sweep_instance(t, g, f, mode)
        tallies[suite, f.name, mode.name] = t
    # the runtime bound covers the distance comparison alone
    return tallies, sum(t.distance_seconds for t in tallies.values())


def test_criterion_1_distances(request, sweep):
    tallies, elapsed = sweep
    bad = {k: t.distance_mismatches for k, t in tallies.items() if t.distance_mismatches}
    pairs = sum(t.pairs for t in tallies.values())
    worst = max(t.max_rel_err for t in tallies.values())
    exhaustive = sum(t.instances for (s, _, _), t in tallies.items() if s == "exhaustive")
    ok = not bad and elapsed < 120
    detail = (f"{pairs} vertex pairs over {exhaustive} exhaustive and "
              f"{sum(t.instances for (s, _, _), t in tallies.items() if s == 'random')} random runs; "
              f"exact mismatches {sum(len(v) for v in bad.values())}, worst float rel err {worst:.2e}, "
              f"distance comparison {elapsed:.1f}s")
    announce(request, 1, ok, detail)
    assert not bad, bad
    assert worst <= REL_TOL
    assert elapsed < 120, f"distance comparison took {elapsed:.1f}s"


def test_criterion_2_equivalence(request, sweep):
    tallies, _ = sweep
    bad = {k: t.verdict_disagreements for k, t in tallies.items() if t.verdict_disagreements}
    neg = sum(t.non_metrizable for t in tallies.values())
    total = sum(t.instances for t in tallies.values())
    announce(request, 2, not bad, f"{total} instances ({neg} non-metrizable), disagreements {sum(map(len, bad.values()))}")
    assert not bad, bad


def test_criterion_3_subdominance(request, sweep):
    tallies, _ = sweep
    tri = sum(t.triangle_failures for t in tallies.values())
    dom = sum(t.dominance_failures for t in tallies.values())
    rng = random.Random(SEED + 3)
    scaled_failures = 0
    checked = 0
    for f in FAMILIES:
        floor = f.domain_floor
        for g in random_suite(100, SEED + 3, FLOAT, f):
            checked += 1
            smaller = g.with_weights({e: floor + (w - floor) * rng.uniform(0.0, 1.0) for e, w in g.weights.items()})
            big, small = all_pairs(g, f), all_pairs(smaller, f)
            for u, v, d in big.items():
                if d is not UNREACHABLE and not FLOAT.le(small[u, v], d):
                    scaled_failures += 1
    ok = tri == 0 and dom == 0 and scaled_failures == 0
    announce(request, 3, ok, f"triangle failures {tri}, edge dominance failures {dom}, "
                             f"scaled-down pointwise failures {scaled_failures} over {checked} instances")
    assert ok


def test_criterion_4_two_max_rule(request, sweep):
    tallies, _ = sweep
    bad = sum(len(t.rule_disagreements) for (s, name, _), t in tallies.items() if name == "max" and s == "exhaustive")
    direct = 0
    for g in exhaustive_suite(5, (1, 2, 3), EXACT):
        if two_max_rule(g).metrizable != check(g, parse_family("max"), boundary=False).metrizable:
            direct += 1
    yes = parse_edge_list("a b 3\nb c 3\na c 2", EXACT)
    no = parse_edge_list("a b 3\nb c 2\na c 2", EXACT)
    mx = parse_family("max")
    pair_ok = (two_max_rule(yes).metrizable and check(yes, mx).metrizable
               and not two_max_rule(no).metrizable and not check(no, mx).metrizable)
    ok = bad == 0 and direct == 0 and pair_ok
    announce(request, 4, ok, f"two-max vs max checker disagreements {bad + direct}; (3,3,2) yes / (3,2,2) no: {pair_ok}")
    assert ok


def test_criterion_5_closed_form_rules(request, sweep):
    tallies, _ = sweep
    bad = {k: len(t.rule_disagreements) for k, t in tallies.items() if k[1] != "max" and t.rule_disagreements}
    add, p2, mult = parse_family("additive"), parse_family("power:2"), parse_family("multiplicative")
    boundary_exact = parse_edge_list("a b 3\nb c 4\na c 5", EXACT)
    boundary_float = parse_edge_list("a b 3\nb c 4\na c 5", FLOAT)
    checks = {
        "additive 1-2-3 boundary": phi_rule(parse_edge_list("a b 1\nb c 2\na c 3", EXACT), add).metrizable,
        "power:2 3-4-5 exact": phi_rule(boundary_exact, p2).metrizable and brute_cycle_check(boundary_exact, p2).metrizable,
        "power:2 3-4-5 float": phi_rule(boundary_float, p2).metrizable and check(boundary_float, p2).metrizable,
        "power:2 3-4-5 flagged boundary": check(boundary_exact, p2).boundary_edges == [("a", "c")],
        "multiplicative 2-3-6": phi_rule(parse_edge_list("a b 2\nb c 3\na c 6", EXACT), mult).metrizable,
    }
    low = parse_edge_list("a b 0.5\nb c 3\na c 1", FLOAT)
    for name, fn in (("phi_rule", lambda: phi_rule(low, mult)), ("check", lambda: check(low, mult))):
        try:
            fn()
            checks[f"domain violation from {name}"] = False
        except DomainError:
            checks[f"domain violation from {name}"] = True
    ok = not bad and all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    announce(request, 5, ok, f"rule disagreements {sum(bad.values())}; named instances failed: {failed or 'none'}")
    assert ok, (bad, failed)


def test_criterion_6_axioms(request):
    results = {}
    for f in FAMILIES:
        rep = validate_family(f, samples=10_000, seed=SEED)
        results[f.name] = rep
    broken = validate_family(custom("product", lambda x, y: x * y, identity=1), grid=[0.5, 1, 2, 3], samples=10_000)
    c3 = broken.results["condition3"]
    ok = all(r.passed for r in results.values()) and not c3.passed and c3.counterexample == (0.5, 0.5)
    failing = {k: r.first_failure().name for k, r in results.items() if not r.passed}
    announce(request, 6, ok, f"families failing: {failing or 'none'}; broken product condition3 counterexample "
                             f"{c3.counterexample} ({c3.detail})")
    assert ok


def _non_metrizable(rng, f, mode):
    """Random connected instance made to fail by inflating one cyclic edge."""
    while True:
        g = random_graph(rng, mode, n_range=(3, 8), density=(0.35, 0.8), floor=f.domain_floor)
        if len(components(g)) != 1 or len(g.edges) < len(g.vertices):
            continue
        for e in rng.sample(list(g.edges), len(g.edges)):
            alt = single_source(g, f, e[0], exclude_edge=e)[0][e[1]]
            if alt is UNREACHABLE:
                continue
            # anything strictly above the detour distance breaks the cycle condition
            new = math.floor(float(alt)) + 2 if mode.exact else float(alt) * 1.5 + 1
            return g.with_weights({**g.weights, e: new})


def test_criterion_7_certificates(request, sweep):
    tallies, _ = sweep
    swept = sum(t.certificates for t in tallies.values())
    invalid = sum(len(t.invalid_certificates) for t in tallies.values())
    rng = random.Random(SEED + 7)
    fuzzed = fuzz_invalid = 0
    for f in FAMILIES:
        mode = EXACT if f.exact_capable else FLOAT
        for _ in range(200):
            g = _non_metrizable(rng, f, mode)
            verdict = check(g, f, mode)
            assert not verdict.metrizable
            for cert in certificates(g, verdict):
                fuzzed += 1
                if not certificate_ok(cert, g, f, mode):
                    fuzz_invalid += 1
    ok = invalid == 0 and fuzz_invalid == 0
    announce(request, 7, ok, f"{swept} suite certificates ({invalid} invalid), {fuzzed} fuzz certificates "
                             f"from {200 * len(FAMILIES)} non-metrizable instances ({fuzz_invalid} invalid)")
    assert ok


def test_criterion_8_determinism_and_roundtrip(request, tmp_path):
    rng = random.Random(SEED + 8)
    identical = True
    for i in range(5):
        g = random_graph(rng, EXACT, n_range=(4, 8), density=(0.4, 0.9))
        path = tmp_path / f"g{i}.txt"
        path.write_text(serialize(g))
        outs = []
        for j in range(2):
            out = tmp_path / f"r{i}_{j}.json"
            with contextlib.redirect_stdout(io.StringIO()):
                main(["check", str(path), "--mode", "exact", "--report", str(out)])
            outs.append(out.read_bytes())
        proc = subprocess.run([sys.executable, "-m", "metric_cont", "check", str(path), "--mode", "exact",
                               "--report", "-"], capture_output=True)
        report_text = proc.stdout.split(b"\n}\n")[0] + b"\n}\n"
        identical &= outs[0] == outs[1] == report_text
    roundtrips = 0
    for mode in (FLOAT, EXACT):
        for g in random_suite(100, SEED + 8, mode):
            for fmt in ("edge-list", "json"):
                back = parse_graph(serialize(g, fmt), mode, fmt)
                roundtrips += back == g and back.vertices == g.vertices
    ok = identical and roundtrips == 400
    announce(request, 8, ok, f"byte-identical exact reports: {identical}; round trips {roundtrips}/400")
    assert ok
