"""Piecewise-linear paths with exact membership and exact chart clipping.

LineSegment is a straight segment in a planar model.  ConeSegment lives in
an abstract cone: either radial (fixed base point, height running between
two values, possibly up to the vertex) or along one base edge with base
parameter and height both linear.  In both cases the level of an offset
chart is monotone or linear along the segment, so the part inside
chart(Y x [a, INF]) is a parameter interval computed exactly.
"""

from __future__ import annotations

from typing import List, Sequence

from .ambient import AbstractCone, ConePoint
from .base import BasePoint
from .charts import PlanarConvexChart, RadialOffsetChart
from .errors import Unsupported
from .exact import INF, Q, Rational
from .geometry import clip_segment, lerp, on_segment

_ZERO, _ONE = Rational(0), Rational(1)


class LineSegment:
    def __init__(self, a, b):
        self.start, self.end = a, b

    def __repr__(self):
        return f"LineSegment({self.start}, {self.end})"

    def point(self, u):
        return lerp(self.start, self.end, Q(u))

    def contains(self, x) -> bool:
        return on_segment(x, self.start, self.end)

    def clip(self, chart, a):
        if not isinstance(chart, PlanarConvexChart):
            raise Unsupported("planar segments clip against planar charts only")
        return clip_segment(self.start, self.end, chart.center, chart.poly, chart.width(Q(a)))

    def sub(self, u0, u1) -> "LineSegment":
        return LineSegment(self.point(u0), self.point(u1))


def _height_at(h0, h1, u):
    if h1 is INF:
        return INF if u == 1 else h0 + u / (1 - u)
    if h0 is INF:
        return INF if u == 0 else h1 + (1 - u) / u
    return h0 + u * (h1 - h0)


def _param_of_height(h0, h1, h):
    """Inverse of _height_at on finite h between the ends."""
    if h1 is INF:
        d = h - h0
        return d / (1 + d)
    if h0 is INF:
        d = h - h1
        return 1 / (1 + d)
    return (h - h0) / (h1 - h0)


class ConeSegment:
    """Segment in AbstractCone coordinates; see the module docstring."""

    def __init__(self, a: ConePoint, b: ConePoint):
        self.start, self.end = a, b
        if a.is_vertex or b.is_vertex or a.base == b.base:
            if a.is_vertex and b.is_vertex:
                raise ValueError("degenerate segment at the vertex")
            self.edge = None
            self.y = b.base if a.is_vertex else a.base
        else:
            cands = _candidate_edges(a.base, b.base)
            if not cands:
                raise ValueError("cone segment ends must share a ray or a base edge")
            self.edge = cands[0]
            self.s0, self.s1 = a.base.on_edge(self.edge), b.base.on_edge(self.edge)

    def __repr__(self):
        return f"ConeSegment({self.start}, {self.end})"

    def point(self, u):
        u = Q(u)
        h = _height_at(self.start.height, self.end.height, u)
        if h is INF:
            return ConePoint(None, INF)
        if self.edge is None:
            return ConePoint(self.y, h)
        return ConePoint(BasePoint.on(self.edge, self.s0 + u * (self.s1 - self.s0)), h)

    def contains(self, x) -> bool:
        h0, h1 = self.start.height, self.end.height
        if x.is_vertex:
            return h0 is INF or h1 is INF
        if self.edge is None:
            if x.base != self.y:
                return False
            lo, hi = (h0, h1) if _le(h0, h1) else (h1, h0)
            return lo <= x.height and (hi is INF or x.height <= hi)
        s = x.base.on_edge(self.edge)
        if s is None:
            return False
        u = (s - self.s0) / (self.s1 - self.s0)
        return 0 <= u <= 1 and _height_at(h0, h1, u) == x.height

    def clip(self, chart, a):
        if not (isinstance(chart, RadialOffsetChart) and isinstance(chart.ambient, AbstractCone)
                and chart.iso.is_identity):
            raise Unsupported("cone segments clip against identity-based offset charts only")
        a = Q(a)
        h0, h1 = self.start.height, self.end.height
        if self.edge is None:
            target = a + chart.offset(self.y)  # height where the level reaches a
            rising = _le(h0, h1)
            lo, hi = (h0, h1) if rising else (h1, h0)
            if hi is not INF and hi < target:
                return None
            if lo is INF or lo >= target:
                return _ZERO, _ONE
            u = _param_of_height(h0, h1, target)
            return (u, _ONE) if rising else (_ZERO, u)
        # level is linear in u along an edge segment
        t0 = h0 - chart.offset(self.start.base)
        t1 = h1 - chart.offset(self.end.base)
        if t0 >= a and t1 >= a:
            return _ZERO, _ONE
        if t0 < a and t1 < a:
            return None
        u = (a - t0) / (t1 - t0)
        return (u, _ONE) if t1 > t0 else (_ZERO, u)

    def sub(self, u0, u1) -> "ConeSegment":
        return ConeSegment(self.point(u0), self.point(u1))


def _le(a, b):
    return b is INF or (a is not INF and a <= b)


def _candidate_edges(y0: BasePoint, y1: BasePoint):
    ends0 = {v for v, _ in y0.anchors()}
    ends1 = {v for v, _ in y1.anchors()}
    if y0.edge is not None:
        cands = [y0.edge]
    elif y1.edge is not None:
        cands = [y1.edge]
    else:
        cands = [tuple(sorted((y0.vertex, y1.vertex)))]
    return [e for e in cands if set(e) >= ends0 and set(e) >= ends1]


def make_segment(a, b):
    if isinstance(a, ConePoint):
        return ConeSegment(a, b)
    return LineSegment(a, b)


class PLPath:
    """Consecutive segments sharing endpoints; parameter u in [0, 1] split evenly."""

    def __init__(self, segments: Sequence):
        segs = list(segments)
        if not segs:
            raise ValueError("a path needs at least one segment")
        for s, t in zip(segs, segs[1:]):
            if s.end != t.start:
                raise ValueError("path segments are not consecutive")
        self.segments = segs

    @classmethod
    def through(cls, points: Sequence) -> "PLPath":
        pts = [p for i, p in enumerate(points) if i == 0 or p != points[i - 1]]
        if len(pts) < 2:
            raise ValueError("a path needs two distinct waypoints")
        return cls([make_segment(a, b) for a, b in zip(pts, pts[1:])])

    def __repr__(self):
        return f"PLPath({len(self.segments)} segments)"

    @property
    def start(self):
        return self.segments[0].start

    @property
    def end(self):
        return self.segments[-1].end

    @property
    def waypoints(self) -> List:
        return [self.segments[0].start] + [s.end for s in self.segments]

    def point(self, u):
        u = Q(u)
        if not 0 <= u <= 1:
            raise ValueError("path parameter outside [0, 1]")
        n = len(self.segments)
        i = min(int(u * n), n - 1)
        return self.segments[i].point(u * n - i)

    def contains(self, x) -> bool:
        return any(s.contains(x) for s in self.segments)

    def avoids(self, F) -> bool:
        return not any(self.contains(f) for f in F)

    def replace(self, i0, u0, i1, u1, middle: Sequence) -> "PLPath":
        """Keep segment i0 up to u0 and segment i1 from u1, with ``middle`` in between."""
        head = self.segments[:i0]
        if u0 > 0:
            head.append(self.segments[i0].sub(_ZERO, u0))
        tail = []
        if u1 < 1:
            tail.append(self.segments[i1].sub(u1, _ONE))
        tail += self.segments[i1 + 1:]
        return PLPath(head + list(middle) + tail)
