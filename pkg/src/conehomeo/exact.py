"""Exact scalars: rationals plus a distinguished infinite level."""

from __future__ import annotations

from fractions import Fraction

try:  # same semantics as Fraction, several times faster
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    Rational = Fraction
from typing import Union


class Infinity:
    """The level at the vertex of a cone.  Compares above every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("conehomeo.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if other is self:
            return self
        Q(other)  # rejects non-numbers
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        Q(other)
        return self

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

Level = Union[Rational, Infinity]


def is_inf(x) -> bool:
    return x is INF


def Q(x) -> Rational:
    """Coerce ints, Fractions and "p/q" strings to Rational.  Floats are refused."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return Rational(x.numerator, x.denominator)
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Rational(x)
    if isinstance(x, str):
        return Rational(Fraction(x.strip()))
    raise TypeError(f"refusing lossy conversion of {type(x).__name__} {x!r} to a rational")


def level(x) -> Level:
    """Coerce to an extended level (positive rational or INF)."""
    if x is INF or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞")):
        return INF
    return Q(x)


def fmt(x) -> str:
    """Serialize a rational as "p/q" (or "p" for integers); INF as "inf"."""
    if x is INF:
        return "inf"
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
