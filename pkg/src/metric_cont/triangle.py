"""Triangle functions: evaluation, n-ary fold, transforms and sampled axiom checks."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import DomainError, EmptyInput, ParseError, UnsupportedTransform
from .numeric import FLOAT, NumericMode, Radical, make_root

KINDS = ("additive", "max", "multiplicative", "power", "phi", "custom")


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Radical)) and not isinstance(x, bool)


@dataclass(frozen=True, eq=False)
class TriangleFamily:
    """An immutable description of a triangle function.

    Instances are callable: ``f(x, y)`` evaluates the function after checking
    both arguments against ``domain_floor``.
    """

    kind: str
    name: str
    p: Optional[object] = None
    forward: Optional[Callable[[float], float]] = None
    inverse: Optional[Callable[[float], float]] = None
    formula: Optional[Callable] = None
    identity: object = 0
    domain_floor: object = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "power" and not self.p > 0:
            raise ValueError("power exponent must be positive")

    def __eq__(self, other):
        if not isinstance(other, TriangleFamily):
            return NotImplemented
        if self.kind == "custom":
            return self is other
        return (self.kind, self.name) == (other.kind, other.name)

    def __hash__(self):
        return hash((self.kind, self.name))

    def __repr__(self):
        return f"TriangleFamily({self.name!r})"

    @property
    def exact_capable(self) -> bool:
        if self.kind in ("additive", "max", "multiplicative"):
            return True
        return self.kind == "power" and isinstance(self.p, int)

    @property
    def has_transform(self) -> bool:
        if self.kind == "custom":
            return self.forward is not None and self.inverse is not None
        return self.kind != "max"

    def identity_in(self, mode: NumericMode):
        return mode.coerce(self.identity)

    def floor_in(self, mode: NumericMode):
        return mode.coerce(self.domain_floor)

    # evaluation ---------------------------------------------------------

    def check_domain(self, *xs) -> None:
        bad = [x for x in xs if x < self.domain_floor]
        if bad:
            raise DomainError(
                f"{self.name}: weight {bad[0]} is below the admissible floor {self.domain_floor}",
                bad,
            )

    def raw(self, x, y):
        """Evaluate the formula without the domain guard."""
        kind = self.kind
        if kind == "additive":
            return x + y
        if kind == "max":
            return x if x >= y else y
        if kind == "multiplicative":
            return x * y
        if kind == "power":
            p = self.p
            if isinstance(p, int) and _is_exact(x) and _is_exact(y):
                return make_root(_exact_pow(x, p) + _exact_pow(y, p), p)
            xf, yf = float(x), float(y)
            if xf == 0.0 and yf == 0.0:
                return 0.0
            return (xf**p + yf**p) ** (1.0 / p)
        if kind == "phi":
            return self.inverse(self.forward(float(x)) + self.forward(float(y)))
        return self.formula(x, y)

    def __call__(self, x, y):
        self.check_domain(x, y)
        return self.raw(x, y)

    def fold(self, xs: Sequence, checked: bool = True):
        """Right-nested n-ary extension: x1 for n=1, otherwise f(x1, fold(x2..xn))."""
        if len(xs) == 0:
            raise EmptyInput("fold needs at least one value")
        if checked:
            self.check_domain(*xs)
        acc = xs[-1]
        for x in reversed(xs[:-1]):
            acc = self.raw(x, acc)
        return acc

    # transforms ---------------------------------------------------------

    def phi_forward(self, x):
        if not self.has_transform:
            raise UnsupportedTransform(f"{self.name} has no additive transform")
        kind = self.kind
        if kind == "additive":
            return x
        if kind == "power":
            if isinstance(self.p, int) and _is_exact(x):
                return _exact_pow(x, self.p)
            return float(x) ** self.p
        if kind == "multiplicative":
            return math.log(x)
        return self.forward(float(x))

    def phi_inverse(self, t):
        if not self.has_transform:
            raise UnsupportedTransform(f"{self.name} has no additive transform")
        kind = self.kind
        if kind == "additive":
            return t
        if kind == "power":
            if isinstance(self.p, int) and _is_exact(t):
                return make_root(t, self.p)
            return float(t) ** (1.0 / self.p)
        if kind == "multiplicative":
            return math.exp(t)
        return self.inverse(float(t))

    def fold_via_transform(self, xs: Sequence):
        """Fold computed as inverse(sum of forward transforms)."""
        if len(xs) == 0:
            raise EmptyInput("fold needs at least one value")
        self.check_domain(*xs)
        return self.phi_inverse(sum(self.phi_forward(x) for x in xs))


def _exact_pow(x, p: int):
    if isinstance(x, Radical):
        return x.power(p)
    return x**p


ADDITIVE = TriangleFamily("additive", "additive")
MAX = TriangleFamily("max", "max")
MULTIPLICATIVE = TriangleFamily("multiplicative", "multiplicative", identity=1, domain_floor=1)


def power(p) -> TriangleFamily:
    p = Fraction(p) if not isinstance(p, float) else p
    if isinstance(p, Fraction):
        p = int(p) if p.denominator == 1 else float(p)
    if not p > 0:
        raise ValueError("power exponent must be positive")
    return TriangleFamily("power", f"power:{p}", p=p)


def phi_homeomorphism(name: str, forward, inverse) -> TriangleFamily:
    return TriangleFamily("phi", f"phi:{name}", forward=forward, inverse=inverse)


def custom(name: str, formula, identity=0, domain_floor=0, forward=None, inverse=None) -> TriangleFamily:
    """A user-supplied triangle function, mainly for validation experiments."""
    return TriangleFamily(
        "custom", name, formula=formula, identity=identity, domain_floor=domain_floor,
        forward=forward, inverse=inverse,
    )


PHI_REGISTRY: dict[str, tuple[Callable, Callable]] = {
    "square": (lambda x: x * x, math.sqrt),
    "exp1": (math.expm1, math.log1p),
}


def register_phi(name: str, forward, inverse) -> None:
    PHI_REGISTRY[name] = (forward, inverse)


def parse_family(text: str) -> TriangleFamily:
    """Parse ``additive``, ``max``, ``multiplicative``, ``power:<p>`` or ``phi:<name>``."""
    text = text.strip()
    simple = {"additive": ADDITIVE, "max": MAX, "multiplicative": MULTIPLICATIVE}
    if text in simple:
        return simple[text]
    head, sep, arg = text.partition(":")
    if head == "power" and sep:
        try:
            p = Fraction(arg)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad power exponent {arg!r}") from None
        if "/" in arg or p <= 0:
            raise ParseError(f"power exponent must be a positive decimal, got {arg!r}")
        return power(p)
    if head == "phi" and sep:
        if arg not in PHI_REGISTRY:
            raise ParseError(f"unknown homeomorphism {arg!r}; known: {sorted(PHI_REGISTRY)}")
        fwd, inv = PHI_REGISTRY[arg]
        return phi_homeomorphism(arg, fwd, inv)
    raise ParseError(f"unknown family {text!r}")


BUILTIN_FAMILIES = ("additive", "max", "multiplicative", "power:2", "phi:exp1")

# validation ------------------------------------------------------------------

DEFAULT_GRID = (0, 0.25, 0.5, 1, 1.5, 2, 3, 5, 7.5, 10)

AXIOMS = (
    "symmetry",
    "monotonicity",
    "identity",
    "condition1",
    "condition2",
    "condition3",
    "permutation",
)


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: Optional[tuple] = None
    detail: str = ""

    def fail(self, counterexample, detail):
        if self.passed:
            self.passed = False
            self.counterexample = counterexample
            self.detail = detail


@dataclass
class ValidationReport:
    family: str
    grid: tuple
    results: dict = field(default_factory=dict)
    below_floor: tuple = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def first_failure(self) -> Optional[AxiomResult]:
        for r in self.results.values():
            if not r.passed:
                return r
        return None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "passed": self.passed,
            "grid": [str(g) for g in self.grid],
            "below_floor": [str(g) for g in self.below_floor],
            "axioms": {
                name: {
                    "passed": r.passed,
                    "checked": r.checked,
                    "counterexample": None if r.counterexample is None else _jsonable(r.counterexample),
                    "detail": r.detail,
                }
                for name, r in self.results.items()
            },
        }


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, float):
        return obj
    return str(obj)


def default_grid(f: TriangleFamily) -> tuple:
    return tuple(f.domain_floor + g for g in DEFAULT_GRID)


def validate_family(
    f: TriangleFamily,
    grid: Optional[Sequence] = None,
    *,
    samples: int = 10_000,
    max_multiset: int = 6,
    seed: int = 0,
    extra: Sequence = (),
    mode: NumericMode = FLOAT,
) -> ValidationReport:
    """Check the triangle-function axioms and conditions (1)-(3) on samples.

    Points below ``f.domain_floor`` are evaluated with the raw formula and
    listed in ``below_floor`` so that failures there stay visible.
    """
    points = list(default_grid(f) if grid is None else grid) + list(extra)
    points = sorted({mode.coerce(x) for x in points})
    if not points:
        raise EmptyInput("validation grid is empty")
    rng = random.Random(seed)
    phi = f.raw
    report = ValidationReport(f.name, tuple(points))
    report.below_floor = tuple(x for x in points if x < f.domain_floor)
    res = {name: AxiomResult(name) for name in AXIOMS}
    report.results = res

    pairs = list(itertools.product(points, repeat=2))
    for x, y in pairs:
        a, b = phi(x, y), phi(y, x)
        res["symmetry"].checked += 1
        if not mode.close(a, b):
            res["symmetry"].fail((x, y), f"f({x},{y})={a} but f({y},{x})={b}")
        top = x if x >= y else y
        res["condition3"].checked += 1
        if not mode.le(top, a):
            res["condition3"].fail((x, y), f"f({x},{y})={a} < max={top}")

    for lo, hi in zip(points, points[1:]):
        for y in points:
            res["monotonicity"].checked += 1
            a, b = phi(lo, y), phi(hi, y)
            if not mode.le(a, b):
                res["monotonicity"].fail((lo, hi, y), f"f({lo},{y})={a} > f({hi},{y})={b}")

    e = f.identity_in(mode)
    res["identity"].checked += 1
    if not mode.close(phi(e, e), e):
        res["identity"].fail((e, e), f"f({e},{e})={phi(e, e)} != {e}")
    for x in points:
        if x < f.domain_floor:
            continue
        res["identity"].checked += 1
        v = phi(x, e)
        if not mode.close(v, x):
            res["identity"].fail((x, e), f"f({x},{e})={v} != {x}")

    triples = itertools.product(points, repeat=3)
    if len(points) > 20:
        triples = (tuple(rng.choice(points) for _ in range(3)) for _ in range(8000))
    for x, y, z in triples:
        res["condition1"].checked += 1
        a, b = phi(x, phi(y, z)), phi(z, phi(x, y))
        if not mode.close(a, b):
            res["condition1"].fail((x, y, z), f"f(x,f(y,z))={a} but f(z,f(x,y))={b}")

    for _ in range(samples):
        B = [rng.choice(points) for _ in range(rng.randint(1, max_multiset))]
        C = [rng.choice(points) for _ in range(rng.randint(1, max_multiset))]
        pool = B + C
        A = rng.sample(pool, rng.randint(1, min(len(pool), max_multiset)))
        res["condition2"].checked += 1
        lhs = f.fold(A, checked=False)
        rhs = phi(f.fold(B, checked=False), f.fold(C, checked=False))
        if not mode.le(lhs, rhs):
            res["condition2"].fail((tuple(A), tuple(B), tuple(C)), f"A={A} B={B} C={C}: fold(A)={lhs} > f(fold(B),fold(C))={rhs}")

        xs = [rng.choice(points) for _ in range(rng.randint(1, max_multiset))]
        ys = xs[:]
        rng.shuffle(ys)
        res["permutation"].checked += 1
        a, b = f.fold(xs, checked=False), f.fold(ys, checked=False)
        if not mode.close(a, b):
            res["permutation"].fail((tuple(xs), tuple(ys)), f"fold differs: {a} vs {b}")

    if f.kind in ("phi", "power") or (f.kind == "custom" and f.has_transform):
        r = AxiomResult("transform")
        res["transform"] = r
        fpts = [float(x) for x in points if x >= 0]
        r.checked += 1
        if f.phi_forward(0.0) != 0:
            r.fail((0,), f"forward(0)={f.phi_forward(0.0)}")
        for lo, hi in zip(fpts, fpts[1:]):
            r.checked += 1
            if not f.phi_forward(lo) < f.phi_forward(hi):
                r.fail((lo, hi), "forward is not strictly increasing")
        for x in fpts:
            r.checked += 1
            back = f.phi_inverse(f.phi_forward(x))
            if not FLOAT.close(back, x):
                r.fail((x,), f"inverse(forward({x}))={back}")
    return report

