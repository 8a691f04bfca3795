"""Exact scalar arithmetic for the idempotent semirings used by the package.

Three carriers are supported:

* ``MAX_PLUS``  -- rationals with the tagged bottom element :data:`EPS` (``-inf``),
  ``a (+) b = max(a, b)``, ``a (x) b = a + b``.  This is the canonical mode; all
  spectral analysis runs here.
* ``MAX_TIMES`` -- nonnegative rationals, ``(+) = max``, ``(x) = *``, bottom ``0``.
* ``MAX_MIN``   -- rationals in ``[0, 1]``, ``(+) = max``, ``(x) = min``, bottom ``0``.

Finite values are plain Python ``int`` or :class:`fractions.Fraction`; both
compare and hash consistently, so no canonicalization is needed for equality.
"""

from __future__ import annotations

import enum
import functools
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Union


class SemiringError(ValueError):
    """Operation not defined for the requested semiring mode."""


@functools.total_ordering
class _Epsilon:
    """The max-plus bottom element; strictly below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EPS"

    def __str__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("maxcore-epsilon")

    def __reduce__(self):
        return (_Epsilon, ())


class _Unconstrained:
    """Residual of a bottom element: the constraint imposes nothing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNCONSTRAINED"


EPS = _Epsilon()
UNCONSTRAINED = _Unconstrained()

Scalar = Union[int, Fraction, _Epsilon]


class Mode(enum.Enum):
    MAX_PLUS = "maxplus"
    MAX_TIMES = "maxtimes"
    MAX_MIN = "maxmin"


@dataclass(frozen=True)
class Semiring:
    """Descriptor of a semiring mode: its bottom, one and multiplication."""

    mode: Mode
    zero: Scalar
    one: Scalar
    mul: Callable = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.mode.value

    def contains(self, a) -> bool:
        if self.mode is Mode.MAX_PLUS:
            return a is EPS or isinstance(a, Rational)
        if not isinstance(a, Rational) or a < 0:
            return False
        return self.mode is Mode.MAX_TIMES or a <= 1

    def is_zero(self, a) -> bool:
        if self.mode is Mode.MAX_PLUS:
            return a is EPS
        return a == 0


MAX_PLUS = Semiring(Mode.MAX_PLUS, EPS, 0, operator.add)
MAX_TIMES = Semiring(Mode.MAX_TIMES, 0, 1, operator.mul)
MAX_MIN = Semiring(Mode.MAX_MIN, 0, 1, min)

_BY_NAME = {s.name: s for s in (MAX_PLUS, MAX_TIMES, MAX_MIN)}


def semiring_by_name(name: str) -> Semiring:
    try:
        return _BY_NAME[name.lower().replace("-", "").replace("_", "")]
    except KeyError:
        raise SemiringError(f"unknown semiring {name!r}") from None


def canon(x):
    """Return ``x`` as an ``int`` when it is an integral rational."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def sr_add(a, b, s: Semiring = MAX_PLUS):
    """Tropical addition ``max(a, b)``; the bottom element is neutral."""
    if s.is_zero(a):
        return b
    if s.is_zero(b):
        return a
    return a if a >= b else b


def sr_mul(a, b, s: Semiring = MAX_PLUS):
    """Tropical multiplication; the bottom element is absorbing."""
    if s.is_zero(a) or s.is_zero(b):
        return s.zero
    return s.mul(a, b)


def sr_residual(a, b, s: Semiring = MAX_PLUS):
    """Largest ``x`` with ``a (x) x <= b``.

    Returns :data:`UNCONSTRAINED` when ``a`` is the bottom element, since then
    every ``x`` satisfies the inequality.
    """
    if s.is_zero(a):
        return UNCONSTRAINED
    if s.mode is Mode.MAX_PLUS:
        return EPS if b is EPS else b - a
    if s.mode is Mode.MAX_TIMES:
        return canon(Fraction(b) / a)
    return s.one if a <= b else b


def sr_root(a, k: int, s: Semiring = MAX_PLUS):
    """Tropical ``k``-th root; in max-plus this is ``a / k``.

    Only max-plus is supported: roots in max-times are irrational in general.
    """
    if s.mode is not Mode.MAX_PLUS:
        raise SemiringError(f"exact roots are not available in {s.name}")
    if a is EPS:
        raise SemiringError("root of the bottom element")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return canon(Fraction(a) / k)


def sr_power(a, k: int, s: Semiring = MAX_PLUS):
    """Tropical ``k``-th power (``k * a`` in max-plus)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return s.one
    if s.is_zero(a):
        return s.zero
    if s.mode is Mode.MAX_PLUS:
        return k * a
    if s.mode is Mode.MAX_TIMES:
        return a**k
    return a


def parse_scalar(text: str, s: Semiring = MAX_PLUS):
    """Parse ``"p"``, ``"p/q"`` or ``"-inf"`` into a scalar of ``s``."""
    token = text.strip()
    if token.lower() in ("-inf", "eps", "ε", "-∞"):
        if s.mode is not Mode.MAX_PLUS:
            raise ValueError(f"'-inf' is not in the carrier of {s.name}")
        return EPS
    try:
        value = canon(Fraction(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational literal {text!r}") from exc
    if "." in token or "e" in token.lower():
        raise ValueError(f"decimal literal {text!r} is not allowed; use p/q")
    if not s.contains(value):
        raise ValueError(f"{text!r} is outside the carrier of {s.name}")
    return value


def format_scalar(a) -> str:
    if a is EPS:
        return "-inf"
    a = canon(a)
    return str(a)
