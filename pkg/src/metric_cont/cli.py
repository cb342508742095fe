"""Command-line front end.

Exit codes: 0 success / metrizable, 1 not metrizable or disagreement,
2 domain violation, 3 parse or usage error, 4 instance too large for the
brute-force oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checker import certificates, check, check_report, domain_report
from .errors import DomainError, ModeError, NotMetrizable, ParseError, TooLarge
from .graph import parse_graph
from .numeric import FLOAT, NumericMode
from .oracle import DEFAULT_LIMIT, verify_equivalence
from .solver import build_continuation
from .triangle import BUILTIN_FAMILIES, parse_family, validate_family

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE, EXIT_TOO_LARGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _mode(args) -> NumericMode:
    if args.mode == "exact":
        return NumericMode(exact=True)
    return NumericMode(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _setup(args):
    family = parse_family(args.family)
    mode = _mode(args)
    mode.require(family)
    g = parse_graph(_read(args.graph), mode, args.format)
    return g, family, mode


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_check(args) -> int:
    g, f, mode = _setup(args)
    try:
        verdict = check(g, f, mode, threads=args.threads)
    except DomainError as exc:
        if args.report:
            _write(args.report, _dump(domain_report(g, f, mode)))
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    certs = certificates(g, verdict)
    if args.report:
        _write(args.report, _dump(check_report(verdict, certs, g)))
    if verdict.metrizable:
        print(f"metrizable under {f.name}")
        return EXIT_OK
    print(f"not metrizable under {f.name}: {len(certs)} violating edge(s)")
    for c in certs:
        print(f"  edge {c.edge[0]}-{c.edge[1]}: w={g.lexeme(c.edge)} > rest of cycle {'-'.join(c.cycle)}")
    return EXIT_FAIL


def cmd_extend(args) -> int:
    g, f, mode = _setup(args)
    bridge = None if args.bridge_weight is None else mode.parse(args.bridge_weight)
    try:
        m = build_continuation(g, f, bridge, force=args.force, threads=args.threads)
    except DomainError as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NotMetrizable as exc:
        print(f"{exc}; use --force to write the subdominant distance anyway", file=sys.stderr)
        return EXIT_FAIL
    text = m.to_json() if args.out_format == "json" else m.to_tsv()
    _write(args.out or "-", text)
    return EXIT_OK


def _grid(spec):
    if spec is None:
        return None
    try:
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad grid spec {spec!r}; expected comma-separated numbers") from None


def cmd_validate_family(args) -> int:
    f = parse_family(args.family)
    report = validate_family(f, _grid(args.grid_spec), samples=args.samples, seed=args.seed)
    if args.report:
        _write(args.report, _dump(report.to_dict()))
    for name, r in report.results.items():
        print(f"{'pass' if r.passed else 'FAIL'}  {name} ({r.checked} checks)")
        if not r.passed:
            print(f"      counterexample: {r.detail}")
    if report.below_floor:
        print(f"note: grid points below the domain floor: {', '.join(map(str, report.below_floor))}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.suite:
        return _oracle_suite(args)
    if args.graph is None:
        raise UsageError("oracle needs a graph file or --suite")
    g, f, mode = _setup(args)
    try:
        report = verify_equivalence(g, f, mode, limit=args.limit)
    except DomainError as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _write(args.report or "-", _dump(report))
    return EXIT_OK if report["agreement"] else EXIT_FAIL


def _oracle_suite(args) -> int:
    from .suites import exhaustive_suite, random_suite, suite_seed

    mode = _mode(args)
    names = BUILTIN_FAMILIES if args.family == "all" else [args.family]
    failures = 0
    for name in names:
        f = parse_family(name)
        if mode.exact and not f.exact_capable:
            print(f"{name}: skipped (float-only family)")
            continue
        if args.suite == "random":
            seed = suite_seed() if args.seed is None else args.seed
            graphs = random_suite(args.count, seed, mode, f)
        else:
            low = f.domain_floor
            graphs = exhaustive_suite(args.max_n, tuple(low + w for w in (1, 2, 3)), mode)
        total = bad = 0
        for g in graphs:
            total += 1
            report = verify_equivalence(g, f, mode, limit=args.limit)
            if not report["agreement"]:
                bad += 1
                if bad <= 3:
                    print(_dump(report), file=sys.stderr)
        failures += bad
        print(f"{name}: {total - bad}/{total} instances agree")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metric-cont", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graph_required=True):
        if graph_required:
            p.add_argument("graph", help="graph file, or - for stdin")
        else:
            p.add_argument("graph", nargs="?", help="graph file, or - for stdin")
        p.add_argument("--family", default="additive", help="additive | max | multiplicative | power:<p> | phi:<name>")
        p.add_argument("--mode", choices=("float", "exact"), default="float")
        p.add_argument("--rel-tol", type=float, default=FLOAT.rel_tol)
        p.add_argument("--abs-tol", type=float, default=FLOAT.abs_tol)
        p.add_argument("--format", choices=("auto", "edge-list", "json"), default="auto")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("check", help="decide whether the weight extends")
    common(p)
    p.add_argument("--report", help="write the JSON report here (- for stdout)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extend", help="write the maximal continuation matrix")
    common(p)
    p.add_argument("--bridge-weight", help="weight of bridges joining components (default: identity)")
    p.add_argument("--force", action="store_true", help="write the subdominant distance even if w does not extend")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--out-format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("validate-family", help="sample the triangle-function axioms")
    p.add_argument("--family", required=True)
    p.add_argument("--grid-spec", help="comma-separated sample values (default grid otherwise)")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_validate_family)

    p = sub.add_parser("oracle", help="cross-check against brute-force enumeration")
    common(p, graph_required=False)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum vertex count for enumeration")
    p.add_argument("--report", help="write the agreement report here (default stdout)")
    p.add_argument("--suite", choices=("random", "exhaustive"), help="run a generated suite instead of one graph")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, help="random suite seed (default: METRIC_CONT_SEED or built-in)")
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except DomainError as exc:
        print(f"domain violation: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParseError, ModeError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
