"""The three ambient model spaces and their exact points.

AbstractCone(Y)
    Points (y, s) with y in Y and s a rational height, plus one vertex where
    all heights reach INF.  Heights range over every rational, so the space is
    the open cone on Y and a chart can have a nonempty exterior.
OpenSquare(H)
    Rational points strictly inside the square |x|, |y| < H; H=None is the plane.
Suspension(Y)
    Points (y, s), s rational, plus the north pole (s = +INF) and south pole
    (s = -INF).  Over a cycle base two planar patches cover it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .base import BaseGraph, BasePoint
from .errors import AmbientMismatch
from .exact import INF, Q, Rational, fmt
from .geometry import DirectionPolygon, Vec, scale, vec

_RATIONALS = (Rational, Fraction)


@dataclass(frozen=True)
class ConePoint:
    base: Optional[BasePoint]
    height: object  # Rational, or INF at the vertex

    def __post_init__(self):
        if (self.base is None) != (self.height is INF):
            raise ValueError("the cone vertex is exactly the point with height INF")

    @property
    def is_vertex(self) -> bool:
        return self.height is INF

    def __str__(self):
        return "vertex" if self.is_vertex else f"({self.base}, {fmt(self.height)})"


CONE_VERTEX = ConePoint(None, INF)


@dataclass(frozen=True)
class SuspensionPoint:
    base: Optional[BasePoint]
    height: Optional[Rational]
    pole: int = 0  # +1 north, -1 south, 0 ordinary

    def __post_init__(self):
        if self.pole not in (-1, 0, 1):
            raise ValueError("pole must be -1, 0 or 1")
        if (self.pole != 0) != (self.base is None) or (self.base is None) != (self.height is None):
            raise ValueError("poles carry no coordinates; other points need both")

    def __str__(self):
        if self.pole:
            return "N" if self.pole > 0 else "S"
        return f"({self.base}, {fmt(self.height)})"


NORTH = SuspensionPoint(None, None, 1)
SOUTH = SuspensionPoint(None, None, -1)


class AbstractCone:
    kind = "cone"

    def __init__(self, base: BaseGraph):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, AbstractCone) and self.base == other.base

    def __hash__(self):
        return hash(("cone", self.base))

    def __repr__(self):
        return f"AbstractCone({self.base!r})"

    @property
    def vertex(self):
        return CONE_VERTEX

    def point(self, y: BasePoint, s) -> ConePoint:
        if s is INF:
            return CONE_VERTEX
        if not self.base.contains(y):
            raise AmbientMismatch(f"{y} is not a point of the cone's base")
        return ConePoint(y, Q(s))

    def contains(self, x) -> bool:
        return isinstance(x, ConePoint) and (x.is_vertex or self.base.contains(x.base))


class OpenSquare:
    kind = "square"

    def __init__(self, halfwidth=None):
        self.halfwidth = None if halfwidth is None else Q(halfwidth)
        if self.halfwidth is not None and self.halfwidth <= 0:
            raise ValueError("halfwidth must be positive")

    def __eq__(self, other):
        return isinstance(other, OpenSquare) and self.halfwidth == other.halfwidth

    def __hash__(self):
        return hash(("square", self.halfwidth))

    def __repr__(self):
        return f"OpenSquare({fmt(self.halfwidth) if self.halfwidth is not None else 'plane'})"

    def contains(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 2 and all(isinstance(c, _RATIONALS) for c in x)):
            return False
        if self.halfwidth is None:
            return True
        return abs(x[0]) < self.halfwidth and abs(x[1]) < self.halfwidth

    def boundary_distance(self, x: Vec):
        """Sup-norm distance to the boundary square; None for the plane."""
        if self.halfwidth is None:
            return None
        return self.halfwidth - max(abs(x[0]), abs(x[1]))


def _rho(s: Rational) -> Rational:
    # decreasing bijection Q -> Q_{>0}: 1 - s below 0, 1/(1+s) above
    return 1 - s if s <= 0 else 1 / (1 + s)


def _rho_inv(g: Rational) -> Rational:
    return 1 - g if g >= 1 else 1 / g - 1


class SuspensionPatch:
    """Exact identification of the suspension minus one pole with the plane.

    The north patch sends the north pole to the origin and (y, s) to
    rho(s) * poly(y); the south patch does the same with -s.
    """

    def __init__(self, susp: "Suspension", pole: int):
        self.susp = susp
        self.pole = pole
        self.poly = susp.polygon

    def __repr__(self):
        return f"SuspensionPatch({'N' if self.pole > 0 else 'S'})"

    def __eq__(self, other):
        return isinstance(other, SuspensionPatch) and (self.susp, self.pole) == (other.susp, other.pole)

    def __hash__(self):
        return hash((self.susp, self.pole))

    @property
    def center_point(self):
        return NORTH if self.pole > 0 else SOUTH

    def covers(self, x: SuspensionPoint) -> bool:
        return x.pole != -self.pole

    def to_plane(self, x: SuspensionPoint) -> Vec:
        if x.pole == self.pole:
            return vec(0, 0)
        if x.pole == -self.pole:
            raise AmbientMismatch("the opposite pole is not in this patch")
        return scale(_rho(self.pole * x.height), self.poly.point(x.base))

    def from_plane(self, v: Vec) -> SuspensionPoint:
        if v == (0, 0):
            return self.center_point
        g, y = self.poly.direction(v)
        return SuspensionPoint(y, self.pole * _rho_inv(g))


class Suspension:
    kind = "suspension"

    def __init__(self, base: BaseGraph):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, Suspension) and self.base == other.base

    def __hash__(self):
        return hash(("suspension", self.base))

    def __repr__(self):
        return f"Suspension({self.base!r})"

    @property
    def north(self):
        return NORTH

    @property
    def south(self):
        return SOUTH

    def point(self, y: BasePoint, s) -> SuspensionPoint:
        if s is INF:
            return NORTH
        if isinstance(s, str) and s.strip() == "-inf":
            return SOUTH
        if not self.base.contains(y):
            raise AmbientMismatch(f"{y} is not a point of the suspension's base")
        return SuspensionPoint(y, Q(s))

    def contains(self, x) -> bool:
        return isinstance(x, SuspensionPoint) and (x.pole != 0 or self.base.contains(x.base))

    @property
    def polygon(self) -> DirectionPolygon:
        if not hasattr(self, "_poly"):
            self._poly = DirectionPolygon(self.base)
        return self._poly

    def patch(self, pole: int) -> SuspensionPatch:
        return SuspensionPatch(self, pole)
