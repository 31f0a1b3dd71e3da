"""Moving points inside a chart, rerouting paths, and chaining moves.

move_in_cone builds x -> y inside one chart U: slide x to a deep level,
recenter a chart at the slid point, and use the vertex swap of that pair
to bring the point back to the vertex p; the same for y, then compose.
chain_move strings such moves along a chain of charts that avoid a finite
set F, and strong_n_extend places n points one at a time that way.

Recentering stands in for the micro-homogeneity step; every composite built
here carries CONSTRUCTIVE in its provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .ambient import NORTH, SOUTH, AbstractCone, OpenSquare, Suspension
from .base import BaseGraph, BasePoint
from .charts import (PlanarConvexChart, TransportedChart, identity_chart, recenter_chart,
                     region_contains)
from .errors import (BaseTooSmall, ChainBroken, ChartMeetsF, DuplicatePoint, EndpointInF,
                     NoDetour, OutsideChart, TargetTooShallow, Unsupported, UnsupportedAmbient,
                     VertexInput)
from .exact import Q, Rational
from .geometry import lerp, sub, sup_norm
from .homeo import Homeo, IdentityHomeo, LevelReparam, TransportedHomeo, compose
from .paths import PLPath
from .pl import PLHomeo, identity
from .swindle import build_lemma1_homeo

CONSTRUCTIVE = "constructive surrogate"
TAPER = Rational(1, 2)  # radial slides only touch rays within this base distance
MAX_N = 4
_C4 = BaseGraph.cycle(4)


def radial_slide(phi, x, t_target) -> Homeo:
    """Slide x = phi(y0, t0) along its ray to phi(y0, t_target), tapered in y and near level 0."""
    loc = phi.locate(x)
    if loc.kind == "vertex":
        raise VertexInput("the vertex has no ray to slide along")
    if loc.kind == "outside":
        raise OutsideChart(f"{x} is outside the chart")
    t_target = Q(t_target)
    if t_target <= 0:
        raise ValueError("target level must be positive")
    t0, y0 = loc.t, loc.y
    if t_target == t0:
        return IdentityHomeo(phi.ambient)
    lo, hi = min(t0, t_target) / 2, max(t0, t_target) + 1
    full = PLHomeo([(0, 0), (lo, lo), (t0, t_target), (hi, hi)], tail=True)
    ident = identity(0)
    base = phi.base

    def theta(y):
        d = base.distance(y, y0)
        if d is None or d >= TAPER:
            return ident
        return full.blend_with_identity(1 - d / TAPER)

    return LevelReparam(phi, theta, (lo, hi), provenance=("radial-slide",))


def _recenterable(phi) -> bool:
    return isinstance(phi, (PlanarConvexChart, TransportedChart))


def to_vertex(phi, x) -> Homeo:
    """A map supported in the chart image sending x to the chart's vertex."""
    loc = phi.locate(x)
    if loc.kind == "outside":
        raise OutsideChart(f"{x} is outside the chart")
    if loc.kind == "vertex":
        return IdentityHomeo(phi.ambient)
    T = max(loc.t, Rational(6))
    for _ in range(12):
        g = radial_slide(phi, x, T)
        try:
            psi = recenter_chart(phi, g(x))
        except TargetTooShallow:
            T *= 2
            continue
        f = build_lemma1_homeo(phi, psi)
        return compose(g, f.inverse(), provenance=(CONSTRUCTIVE,))
    raise TargetTooShallow("could not recenter at any tried depth")


def move_in_cone(phi, x, y) -> Homeo:
    lx, ly = phi.locate(x), phi.locate(y)
    if lx.kind == "outside" or ly.kind == "outside":
        raise OutsideChart("both points must lie in the chart image")
    if x == y:
        return IdentityHomeo(phi.ambient)
    if _recenterable(phi):
        return compose(to_vertex(phi, x), to_vertex(phi, y).inverse(), provenance=(CONSTRUCTIVE,))
    if lx.kind == ly.kind == "interior" and lx.y == ly.y:
        return radial_slide(phi, x, ly.t)
    raise Unsupported("this chart cannot be recentered and the points share no ray")


# -- chart providers ------------------------------------------------------------------

def _free_radius(plane: OpenSquare, c, avoid) -> Rational:
    r = Rational(1)
    for f in avoid:
        r = min(r, sup_norm(sub(c, f)))
    b = plane.boundary_distance(c)
    if b is not None:
        r = min(r, b)
    return r / 2


def planar_chart(plane: OpenSquare, c, rho) -> PlanarConvexChart:
    """Square chart centred at c whose image is the open sup-ball of radius rho."""
    return PlanarConvexChart(plane, _C4, c, A=rho, B=1)


def planar_chart_provider(plane: OpenSquare):
    def provide(f, avoid):
        return planar_chart(plane, f, _free_radius(plane, f, avoid))
    return provide


def cone_chart_provider(cone: AbstractCone):
    def provide(f, avoid):
        if f != cone.vertex:
            raise Unsupported("cone paths are rerouted around the cone vertex only")
        return identity_chart(cone)
    return provide


# -- rerouting ------------------------------------------------------------------------

def _check_base(base: BaseGraph):
    if base.cardinality_class() != ">=3":
        raise BaseTooSmall("a base with at most two points leaves no room for a detour")


def _detour_route(Y: BaseGraph, y0: BasePoint, y1: BasePoint):
    for v in range(Y.n):
        y2 = BasePoint.at(v)
        if y2 in (y0, y1):
            continue
        r1, r2 = Y.route(y0, y2), Y.route(y2, y1)
        if r1 is not None and r2 is not None:
            return r1 + r2[1:]
    raise NoDetour("no third base direction connects the entry and exit rays")


def reroute_path(path: PLPath, F: Sequence, chart_provider, ambient=None) -> PLPath:
    """Same endpoints, image disjoint from F; changed only inside the provided charts."""
    F = list(F)
    if ambient is not None and getattr(ambient, "base", None) is not None:
        _check_base(ambient.base)
    if path.start in F or path.end in F:
        raise EndpointInF("path endpoints must avoid F")
    for f in F:
        if not path.contains(f):
            continue
        avoid = [g for g in F if g != f] + [path.start, path.end]
        chart = chart_provider(f, avoid)
        if chart.vertex != f:
            raise ValueError("chart provider must return a chart with vertex f")
        _check_base(chart.base)
        if any(region_contains(chart, 1, "closed", g) for g in avoid):
            raise ChartMeetsF("the provided chart reaches another point of F or an endpoint")
        hits = [(i, s.clip(chart, 1)) for i, s in enumerate(path.segments)]
        hits = [(i, c) for i, c in hits if c is not None]
        (i0, (u0, _)), (i1, (_, u1)) = hits[0], hits[-1]
        e0, e1 = path.segments[i0].point(u0), path.segments[i1].point(u1)
        y0, y1 = chart.locate(e0).y, chart.locate(e1).y
        ring = [chart.eval(z, 2) for z in _detour_route(chart.base, y0, y1)]
        middle = PLPath.through([e0] + ring + [e1]).segments
        path = path.replace(i0, u0, i1, u1, middle)
    if not path.avoids(F):
        raise NoDetour("rerouted path still meets F")
    return path


# -- chains ---------------------------------------------------------------------------

@dataclass
class ChartChain:
    """Charts U_1..U_k with witnesses x_0..x_k, x_(i-1) and x_i in U_i."""

    charts: List
    points: List

    def __post_init__(self):
        if len(self.points) != len(self.charts) + 1:
            raise ChainBroken("a chain of k charts needs k + 1 witness points")

    def check(self, F=()):
        for i, U in enumerate(self.charts):
            for w in (self.points[i], self.points[i + 1]):
                if U.locate(w).kind == "outside":
                    raise ChainBroken(f"witness {w} is not in chart {i + 1}")
            for f in F:
                if U.locate(f).kind != "outside":
                    raise ChartMeetsF(f"chart {i + 1} contains the fixed point {f}")


def planar_chain(plane: OpenSquare, path: PLPath, F: Sequence, max_depth: int = 60) -> ChartChain:
    """Cover a planar path by square charts avoiding F, bisecting until each piece fits."""
    charts, points = [], [path.start]

    def cover(p, q, depth):
        c = lerp(p, q, Rational(1, 2))
        rho = _free_radius(plane, c, F)
        if sup_norm(sub(q, p)) / 2 < rho:
            charts.append(planar_chart(plane, c, rho))
            points.append(q)
            return
        if depth >= max_depth:
            raise NoDetour("path passes too close to F to be covered")
        cover(p, c, depth + 1)
        cover(c, q, depth + 1)

    for seg in path.segments:
        cover(seg.start, seg.end, 0)
    return ChartChain(charts, points)


class ChainMove(Homeo):
    def __init__(self, ambient, maps, charts):
        self.ambient = ambient
        self.inner = compose(*maps, provenance=(CONSTRUCTIVE,))
        self.charts = list(charts)
        self.provenance = tuple(dict.fromkeys(("chain-move", CONSTRUCTIVE) + self.inner.provenance))

    def __repr__(self):
        return f"ChainMove({len(self.charts)} charts)"

    def __call__(self, x):
        return self.inner(x)

    def inv(self, x):
        return self.inner.inv(x)

    def support(self, x):
        return any(U.locate(x).kind != "outside" for U in self.charts) and self.inner.support(x)


def chain_move(ambient, x, y, F: Sequence, chain: ChartChain) -> Homeo:
    if chain.points[0] != x or chain.points[-1] != y:
        raise ChainBroken("chain witnesses must run from x to y")
    chain.check(F)
    maps = [move_in_cone(U, a, b) for U, a, b in zip(chain.charts, chain.points, chain.points[1:])]
    h = ChainMove(ambient, maps, chain.charts)
    assert h(x) == y, "chain move missed its target"
    assert all(h(f) == f for f in F), "chain move disturbed F"
    return h


# -- strong n-homogeneity on the models --------------------------------------------

def planar_move(plane: OpenSquare, a, b, F: Sequence) -> Homeo:
    if a == b:
        return IdentityHomeo(plane)
    path = reroute_path(PLPath.through([a, b]), F, planar_chart_provider(plane))
    return chain_move(plane, a, b, F, planar_chain(plane, path, F))


_PLANE = OpenSquare(None)


def _free_point(susp: Suspension, taken):
    for k in range(100):
        x = susp.point(BasePoint.at(0), Rational(k, 2) * (-1) ** k)
        if x not in taken:
            return x
    raise NoDetour("no free point found")


def suspension_move(susp: Suspension, a, b, F: Sequence) -> Homeo:
    if a == b:
        return IdentityHomeo(susp)
    if {a, b} == {NORTH, SOUTH}:
        c = _free_point(susp, list(F) + [a, b])
        return compose(suspension_move(susp, a, c, F), suspension_move(susp, c, b, F))
    patch = susp.patch(-1 if SOUTH in (a, b) else 1)
    Fp = [patch.to_plane(f) for f in F if patch.covers(f)]
    g = planar_move(_PLANE, patch.to_plane(a), patch.to_plane(b), Fp)
    return TransportedHomeo(g, patch)


class StrongExtension(Homeo):
    def __init__(self, ambient, stages, sources, targets):
        self.ambient = ambient
        self.stages = list(stages)
        self.inner = compose(*self.stages) if self.stages else IdentityHomeo(ambient)
        self.sources, self.targets = list(sources), list(targets)
        self.provenance = ("strong-n-extend", CONSTRUCTIVE)

    def __repr__(self):
        return f"StrongExtension(n={len(self.sources)})"

    def __call__(self, x):
        return self.inner(x)

    def inv(self, x):
        return self.inner.inv(x)

    def support(self, x):
        return self.inner.support(x)


def strong_n_extend(ambient, sources: Sequence, targets: Sequence, bound: int = MAX_N) -> StrongExtension:
    sources, targets = list(sources), list(targets)
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        raise DuplicatePoint("sources and targets must be pairwise distinct")
    if len(sources) != len(targets):
        raise ValueError("need as many targets as sources")
    if len(sources) > bound:
        raise ValueError(f"at most {bound} points are supported")
    if isinstance(ambient, OpenSquare):
        def stage(a, b, F):
            return planar_move(ambient, a, b, F)
    elif isinstance(ambient, Suspension) and ambient.base.is_cycle():
        def stage(a, b, F):
            return suspension_move(ambient, a, b, F)
    else:
        raise UnsupportedAmbient(f"strong n-homogeneity is built for the plane models, not {ambient!r}")
    for p in sources + targets:
        if not ambient.contains(p):
            raise ValueError(f"{p} is not a point of {ambient!r}")
    stages, placed, current = [], [], IdentityHomeo(ambient)
    for s, t in zip(sources, targets):
        g = stage(current(s), t, placed)
        stages.append(g)
        current = compose(current, g)
        placed.append(t)
    H = StrongExtension(ambient, stages, sources, targets)
    assert all(H(s) == t for s, t in zip(sources, targets)), "extension missed a target"
    return H
