"""Exact planar predicates: convex-polygon gauges, membership, segment clipping."""

from __future__ import annotations

from typing import Sequence, Tuple

from .base import BaseGraph, BasePoint
from .errors import InvalidChart
from .exact import Q, Rational

Vec = Tuple[Rational, Rational]


def vec(x, y) -> Vec:
    return (Q(x), Q(y))


def add(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Vec, b: Vec) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def scale(c, a: Vec) -> Vec:
    return (c * a[0], c * a[1])


def dot(a: Vec, b: Vec) -> Rational:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Vec, b: Vec) -> Rational:
    return a[0] * b[1] - a[1] * b[0]


def lerp(a: Vec, b: Vec, s) -> Vec:
    return (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))


def sup_norm(a: Vec) -> Rational:
    return max(abs(a[0]), abs(a[1]))


def on_segment(p: Vec, a: Vec, b: Vec) -> bool:
    """Exact test for p on the closed segment [a, b]."""
    d = sub(b, a)
    if cross(d, sub(p, a)) != 0:
        return False
    t = dot(sub(p, a), d)
    return 0 <= t <= dot(d, d)


# rational points in counter-clockwise order; 0 strictly inside
_SQUARE = [(1, 1), (-1, 1), (-1, -1), (1, -1)]


def standard_polygon(n: int):
    """A convex polygon with n rational vertices, counter-clockwise around 0."""
    if n == 4:
        return [vec(*p) for p in _SQUARE]
    if n < 3:
        raise InvalidChart("a direction polygon needs at least three vertices")
    # rational points on the unit circle via the half-angle parametrisation,
    # u_k = tan(pi k / n) approximated by rationals; convexity is asserted below
    import math
    from fractions import Fraction
    pts = []
    for k in range(n):
        ang = 2 * math.pi * k / n
        u = Q(Fraction(math.tan(ang / 2)).limit_denominator(64)) if abs(math.cos(ang / 2)) > 1e-9 else None
        if u is None:
            pts.append(vec(-1, 0))
        else:
            pts.append(((1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)))
    check_convex(pts)
    return pts


def check_convex(pts: Sequence[Vec]):
    n = len(pts)
    if n < 3:
        raise InvalidChart("polygon needs at least three vertices")
    for i in range(n):
        a, b, c = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
        if cross(sub(b, a), sub(c, b)) <= 0:
            raise InvalidChart("direction polygon is not strictly convex counter-clockwise")
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if cross(sub(b, a), sub((Rational(0), Rational(0)), a)) <= 0:
            raise InvalidChart("origin is not strictly inside the direction polygon")


class DirectionPolygon:
    """Assigns each point of a cycle base a point on the boundary of a convex polygon.

    Vertex v of the cycle goes to ``verts[v]``; edge points interpolate
    linearly.  The polygon contains the origin strictly inside, so every
    non-zero vector has a unique direction and a positive gauge.
    """

    def __init__(self, base: BaseGraph, verts_by_vertex: Sequence[Vec] = None):
        if not base.is_cycle():
            raise InvalidChart("direction polygons need a cycle base")
        order = base.cycle_order()
        if verts_by_vertex is None:
            poly = standard_polygon(base.n)
            verts_by_vertex = [None] * base.n
            for k, v in enumerate(order):
                verts_by_vertex[v] = poly[k]
        self.base = base
        self.verts = tuple(vec(*p) for p in verts_by_vertex)
        self.order = tuple(order)
        ring = [self.verts[v] for v in order]
        check_convex(ring)
        # polygon edges in ccw order as (vertex_a, vertex_b, normal, support value)
        self.faces = []
        for k in range(len(order)):
            a, b = order[k], order[(k + 1) % len(order)]
            pa, pb = self.verts[a], self.verts[b]
            d = sub(pb, pa)
            normal = (d[1], -d[0])
            self.faces.append((a, b, normal, dot(normal, pa)))
        # per face: scaled normal n/h, start point, direction, 1/|direction|^2
        self._fast = [(n[0] / h, n[1] / h, self.verts[a], sub(self.verts[b], self.verts[a]))
                      for a, b, n, h in self.faces]
        self._fast = [(ux, uy, pa, d, 1 / dot(d, d)) for ux, uy, pa, d in self._fast]

    def __eq__(self, other):
        return isinstance(other, DirectionPolygon) and (self.base, self.verts) == (other.base, other.verts)

    def __hash__(self):
        return hash((self.base, self.verts))

    def point(self, y: BasePoint) -> Vec:
        if y.edge is None:
            return self.verts[y.vertex]
        u, v = y.edge
        return lerp(self.verts[u], self.verts[v], y.param)

    def gauge(self, v: Vec) -> Rational:
        """Minkowski gauge: the least g >= 0 with v in g * polygon."""
        x, y = v
        return max(ux * x + uy * y for ux, uy, _, _, _ in self._fast)

    def direction(self, v: Vec):
        """Return (gauge, base point) with v = gauge * point(base point); v must be non-zero."""
        x, y = v
        best, k = None, 0
        for i, (ux, uy, _, _, _) in enumerate(self._fast):
            g = ux * x + uy * y
            if best is None or g > best:
                best, k = g, i
        if best <= 0:
            raise ValueError("direction of the zero vector")
        _, _, pa, d, inv = self._fast[k]
        s = ((x / best - pa[0]) * d[0] + (y / best - pa[1]) * d[1]) * inv
        a, b = self.faces[k][:2]
        return best, BasePoint.on((a, b), s)

    def max_gauge_of(self, points: Sequence[Vec]) -> Rational:
        return max(self.gauge(p) for p in points)


def clip_segment(a: Vec, b: Vec, center: Vec, poly: DirectionPolygon, radius):
    """Parameters [u0, u1] of segment a->b inside the closed polygon center + radius*poly.

    Cyrus-Beck with exact rationals; None when the segment misses it.
    """
    u0, u1 = Rational(0), Rational(1)
    d = sub(b, a)
    rel = sub(a, center)
    for _, _, n, h in poly.faces:
        num = radius * h - dot(n, rel)   # need dot(n, rel + u d) <= radius*h
        den = dot(n, d)
        if den == 0:
            if num < 0:
                return None
            continue
        u = num / den
        if den > 0:
            u1 = min(u1, u)
        else:
            u0 = max(u0, u)
        if u0 > u1:
            return None
    return u0, u1
