"""Numeric modes, weight lexemes and exact radicals.

Two regimes are supported. Float mode stores weights as ``float`` and compares
with a relative tolerance plus an absolute floor. Exact mode stores weights as
:class:`fractions.Fraction`; power families with an integer exponent produce
:class:`Radical` values, which compare exactly through their p-th powers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import ModeError, NegativeWeight, ParseError


class _Unreachable:
    """Marker for vertex pairs that no path joins."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def exact_root(value, degree: int):
    """Return the rational k-th root of ``value`` or None if it is irrational."""
    if isinstance(value, int):
        r = _iroot(value, degree)
        return r if r**degree == value else None
    num, den = value.numerator, value.denominator
    rn, rd = _iroot(num, degree), _iroot(den, degree)
    if rn**degree == num and rd**degree == den:
        return normalize(Fraction(rn, rd))
    return None


def normalize(q):
    """Integral rationals become ``int``, which keeps exact arithmetic fast."""
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


@total_ordering
class Radical:
    """The nonnegative real ``radicand ** (1/degree)`` kept in exact form.

    Use :func:`make_root`, which collapses perfect powers to a Fraction, so a
    Radical instance is always irrational.
    """

    __slots__ = ("radicand", "degree")

    def __init__(self, radicand: Fraction, degree: int):
        self.radicand = radicand
        self.degree = degree

    def power(self, degree: int) -> Fraction:
        if degree != self.degree:
            raise ModeError(f"cannot raise a degree-{self.degree} root to power {degree} exactly")
        return self.radicand

    def _cmp_key(self, other):
        # both sides raised to a common power; returns (lhs, rhs)
        if isinstance(other, Radical):
            d = self.degree * other.degree // math.gcd(self.degree, other.degree)
            return (self.radicand ** (d // self.degree), other.radicand ** (d // other.degree))
        if isinstance(other, (int, Fraction)):
            if other < 0:
                return (Fraction(0), Fraction(-1))
            return (self.radicand, other**self.degree)
        if isinstance(other, float):
            return (float(self), other)
        return None

    def __eq__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] < key[1]

    def __hash__(self):
        return hash((self.radicand, self.degree))

    def __float__(self):
        return float(self.radicand) ** (1.0 / self.degree)

    def __repr__(self):
        return f"Radical({self.radicand!s}, {self.degree})"

    def __str__(self):
        return f"({self.radicand})^(1/{self.degree})"


def make_root(radicand, degree: int):
    """Exact ``radicand ** (1/degree)``: a rational when possible, else a Radical."""
    radicand = normalize(radicand)
    if degree == 1:
        return radicand
    root = exact_root(radicand, degree)
    return root if root is not None else Radical(radicand, degree)


Number = Union[float, Fraction, Radical]

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_RATIO = re.compile(r"^[+-]?\d+/\d+$")


@dataclass(frozen=True)
class NumericMode:
    """Comparison regime: exact rationals or floats with tolerances."""

    exact: bool = False
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    @property
    def name(self) -> str:
        return "exact" if self.exact else "float"

    def to_dict(self) -> dict:
        if self.exact:
            return {"kind": "exact"}
        return {"kind": "float", "rel_tol": self.rel_tol, "abs_tol": self.abs_tol}

    def close(self, a, b) -> bool:
        if self.exact:
            return a == b
        a, b = float(a), float(b)
        if a == b:
            return True
        return abs(a - b) <= max(self.rel_tol * max(abs(a), abs(b)), self.abs_tol)

    def le(self, a, b) -> bool:
        """``a <= b`` up to tolerance."""
        return a <= b or self.close(a, b)

    def lt(self, a, b) -> bool:
        """``a < b`` by more than the tolerance."""
        return a < b and not self.close(a, b)

    def parse(self, lexeme: str, line=None) -> Number:
        """Turn a weight lexeme into a value of this mode's type."""
        text = lexeme.strip()
        if _RATIO.match(text):
            if not self.exact:
                raise ParseError(f"fraction lexeme {text!r} requires exact mode", line)
            num, den = text.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}", line)
            value = normalize(Fraction(int(num), int(den)))
        elif _DECIMAL.match(text):
            value = normalize(Fraction(text)) if self.exact else float(text)
        else:
            raise ParseError(f"malformed weight {text!r}", line)
        if value < 0:
            raise NegativeWeight(f"negative weight {text!r}", line)
        return value

    def coerce(self, value) -> Number:
        """Convert a Python number to this mode's representation."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise TypeError("boolean is not a weight")
        if self.exact:
            if isinstance(value, Radical):
                out = value
            elif isinstance(value, float):
                if not math.isfinite(value):
                    raise ModeError(f"non-finite weight {value!r}")
                out = normalize(Fraction(value))
            else:
                out = normalize(Fraction(value))
        else:
            out = float(value)
            if not math.isfinite(out):
                raise ModeError(f"non-finite weight {value!r}")
        if out < 0:
            raise NegativeWeight(f"negative weight {value!r}")
        return out

    def require(self, family) -> None:
        """Raise ModeError if ``family`` cannot be evaluated in this mode."""
        if self.exact and not family.exact_capable:
            raise ModeError(f"family {family.name!r} is not supported in exact mode")


FLOAT = NumericMode()
EXACT = NumericMode(exact=True)


def make_weight(value, mode: NumericMode = FLOAT) -> Number:
    """Validated nonnegative weight in the representation of ``mode``."""
    return mode.coerce(value)


def format_value(value) -> str:
    if value is UNREACHABLE:
        return "inf"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return str(value)


def to_float(value) -> float:
    if value is UNREACHABLE:
        return math.inf
    return float(value)
