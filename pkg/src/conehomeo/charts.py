"""Cone charts, level regions and the k-interlacing predicate.

A chart maps Y x (0, INF] into an ambient model, collapsing Y x {INF} to its
vertex.  Every chart offers ``eval(y, t)`` and ``locate(x)``; ``locate``
returns Interior(y, t), VERTEX or OUTSIDE and is the only way region
membership is decided.

RadialOffsetChart and PlanarConvexChart have exactly decidable region
algebra.  Charts derived from them (transported to a suspension patch, or
built by the promotion tower) fall back to deciding containments on the
boundary level set sampled over the base.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .ambient import AbstractCone, OpenSquare, Suspension, SuspensionPatch
from .base import BaseGraph, BaseIso, BasePoint, PLBaseFunction, enumerate_sample_points
from .errors import (AmbientMismatch, InvalidChart, OffsetTooLarge, TargetTooShallow,
                     WrongBase)
from .exact import INF, Q, Rational, fmt, level as as_level
from .geometry import DirectionPolygon, add, dot, scale, sub, vec

#: base samples per edge used when a containment has to be decided by sampling
SAMPLED_CONTAINMENT_M = 7
_LOC_CACHE_CAP = 100_000


class Located(NamedTuple):
    kind: str  # "interior", "vertex" or "outside"
    y: Optional[BasePoint] = None
    t: Optional[Rational] = None


VERTEX = Located("vertex")
OUTSIDE = Located("outside")


def Interior(y, t) -> Located:
    return Located("interior", y, t)


class ConeChart:
    """Common interface.  Subclasses set ``base``, ``ambient`` and implement eval/locate."""

    exact = False
    base: BaseGraph

    def eval(self, y: BasePoint, t):
        raise NotImplementedError

    def locate(self, x) -> Located:
        raise NotImplementedError

    @property
    def vertex(self):
        raise NotImplementedError

    def __call__(self, y, t):
        return chart_eval(self, y, t)

    def level(self, x):
        """Level of x: a positive rational, INF at the vertex, None outside the image."""
        loc = self.locate(x)
        if loc.kind == "interior":
            return loc.t
        if loc.kind == "vertex":
            return INF
        return None

    def in_image(self, x) -> bool:
        return self.locate(x).kind != "outside"

    def _memo(self, x, compute) -> Located:
        """Charts are immutable, so located points can be remembered."""
        cache = self.__dict__.get("_loc_cache")
        if cache is None:
            cache = self.__dict__["_loc_cache"] = {}
        hit = cache.get(x)
        if hit is None:
            if len(cache) >= _LOC_CACHE_CAP:
                cache.clear()
            hit = cache[x] = compute(x)
        return hit


def chart_eval(phi: ConeChart, y: BasePoint, t):
    if not phi.base.contains(y):
        raise WrongBase(f"{y} is not a point of the chart's base")
    t = as_level(t)
    if t is not INF and t <= 0:
        raise ValueError(f"level must be positive, got {fmt(t)}")
    if t is INF:
        return phi.vertex
    return phi.eval(y, t)


def chart_invert(phi: ConeChart, x) -> Located:
    return phi.locate(x)


def region_contains(phi: ConeChart, a, kind: str, x) -> bool:
    """Membership of x in phi(Y x (a, INF]) ("open") or phi(Y x [a, INF]) ("closed")."""
    a = Q(a)
    if a <= 0:
        raise ValueError("region level must be positive")
    t = phi.level(x)
    if t is None:
        return False
    if kind == "open":
        return t > a
    if kind == "closed":
        return t >= a
    raise ValueError(f"kind must be 'open' or 'closed', not {kind!r}")


# -- the two exact variants ----------------------------------------------------

class RadialOffsetChart(ConeChart):
    """phi(z, t) = (iota(z), sign * (t + d(z))) in an abstract cone or a suspension.

    sign = +1 puts the vertex at the cone vertex / north pole, -1 at the south pole.
    """

    exact = True

    def __init__(self, ambient, base: BaseGraph = None, iso: BaseIso = None,
                 offset: PLBaseFunction = None, sign: int = 1):
        if not isinstance(ambient, (AbstractCone, Suspension)):
            raise InvalidChart("radial-offset charts live in an abstract cone or a suspension")
        base = ambient.base if base is None else base
        iso = BaseIso.identity(ambient.base) if iso is None else iso
        if iso.source != base or iso.target != ambient.base:
            raise InvalidChart("base isomorphism must go from the chart base to the ambient base")
        offset = PLBaseFunction.constant(base, 0) if offset is None else offset
        if offset.graph != base:
            raise InvalidChart("offset must be a function on the chart base")
        if sign not in (1, -1) or (sign == -1 and isinstance(ambient, AbstractCone)):
            raise InvalidChart("sign must be +1 (or -1 in a suspension)")
        self.ambient, self.base, self.iso, self.offset, self.sign = ambient, base, iso, offset, sign
        self._iso_inv = iso.inverse()

    def __eq__(self, other):
        return (isinstance(other, RadialOffsetChart)
                and (self.ambient, self.base, self.iso, self.offset, self.sign)
                == (other.ambient, other.base, other.iso, other.offset, other.sign))

    def __hash__(self):
        return hash((self.ambient, self.base, self.offset, self.sign))

    def __repr__(self):
        d = ",".join(fmt(v) for v in self.offset.values)
        return f"RadialOffsetChart({self.ambient!r}, offsets=[{d}], sign={self.sign})"

    @property
    def vertex(self):
        if isinstance(self.ambient, AbstractCone):
            return self.ambient.vertex
        return self.ambient.north if self.sign > 0 else self.ambient.south

    def eval(self, y, t):
        if t is INF:
            return self.vertex
        return self.ambient.point(self.iso(y), self.sign * (t + self.offset(y)))

    def locate(self, x) -> Located:
        return self._memo(x, self._locate)

    def _locate(self, x) -> Located:
        if not self.ambient.contains(x):
            raise AmbientMismatch(f"{x} is not a point of {self.ambient!r}")
        if x == self.vertex:
            return VERTEX
        if x.base is None:  # the other pole
            return OUTSIDE
        y = self._iso_inv(x.base)
        t = self.sign * x.height - self.offset(y)
        return Interior(y, t) if t > 0 else OUTSIDE


class PlanarConvexChart(ConeChart):
    """phi(y, t) = center + w(t) * poly(y) with w(t) = A / (t + B).

    The level sets are the convex polygons center + w(t) * P.  With B > 0 the
    image is the open polygon of gauge radius A/B; B = 0 is only allowed in
    the unbounded plane.
    """

    exact = True

    def __init__(self, ambient: OpenSquare, base: BaseGraph, center, poly: DirectionPolygon = None,
                 A=2, B=0):
        if not isinstance(ambient, OpenSquare):
            raise InvalidChart("planar charts live in an open square (or the plane)")
        self.ambient, self.base = ambient, base
        self.center = vec(*center)
        self.poly = DirectionPolygon(base) if poly is None else poly
        if self.poly.base != base:
            raise InvalidChart("direction polygon is for a different base")
        self.A, self.B = Q(A), Q(B)
        if self.A <= 0 or self.B < 0:
            raise InvalidChart("width profile needs A > 0 and B >= 0")
        if not ambient.contains(self.center):
            raise InvalidChart("center outside the ambient square")
        if ambient.halfwidth is not None:
            if self.B == 0:
                raise InvalidChart("an unbounded chart does not fit in a bounded square")
            for p in self.closure_corners():
                if max(abs(p[0]), abs(p[1])) > ambient.halfwidth:
                    raise InvalidChart("chart image leaves the ambient square")

    def __eq__(self, other):
        return (isinstance(other, PlanarConvexChart)
                and (self.ambient, self.base, self.center, self.poly, self.A, self.B)
                == (other.ambient, other.base, other.center, other.poly, other.A, other.B))

    def __hash__(self):
        return hash((self.ambient, self.center, self.A, self.B))

    def __repr__(self):
        c = f"({fmt(self.center[0])},{fmt(self.center[1])})"
        return f"PlanarConvexChart(center={c}, width={fmt(self.A)}/(t+{fmt(self.B)}))"

    @property
    def extent(self):
        """Gauge radius of the image, None when unbounded."""
        return None if self.B == 0 else self.A / self.B

    def closure_corners(self):
        r = self.extent
        return [add(self.center, scale(r, p)) for p in self.poly.verts]

    def width(self, t) -> Rational:
        return self.A / (t + self.B)

    def width_inv(self, rho) -> Rational:
        return self.A / rho - self.B

    @property
    def vertex(self):
        return self.center

    def eval(self, y, t):
        if t is INF:
            return self.center
        return add(self.center, scale(self.width(t), self.poly.point(y)))

    def level_polygon(self, t):
        return [add(self.center, scale(self.width(t), p)) for p in self.poly.verts]

    def locate(self, x) -> Located:
        return self._memo(x, self._locate)

    def _locate(self, x) -> Located:
        if not self.ambient.contains(x):
            raise AmbientMismatch(f"{x} is not a point of {self.ambient!r}")
        v = sub(x, self.center)
        if v == (0, 0):
            return VERTEX
        g, y = self.poly.direction(v)
        t = self.width_inv(g)
        return Interior(y, t) if t > 0 else OUTSIDE

    def with_center(self, q, kappa=1) -> "PlanarConvexChart":
        return PlanarConvexChart(self.ambient, self.base, q, self.poly, Q(kappa) * self.A, self.B)


class TransportedChart(ConeChart):
    """A bounded planar chart carried into a suspension through one of its patches."""

    def __init__(self, planar: PlanarConvexChart, patch: SuspensionPatch):
        if planar.B == 0:
            raise InvalidChart("only bounded planar charts can be transported")
        if planar.ambient.halfwidth is not None:
            raise InvalidChart("transported charts are drawn in the plane")
        self.planar, self.patch = planar, patch
        self.ambient = patch.susp
        self.base = planar.base

    def __repr__(self):
        return f"TransportedChart({self.planar!r}, {self.patch!r})"

    def __eq__(self, other):
        return isinstance(other, TransportedChart) and (self.planar, self.patch) == (other.planar, other.patch)

    def __hash__(self):
        return hash((self.planar, self.patch))

    @property
    def vertex(self):
        return self.patch.from_plane(self.planar.center)

    def eval(self, y, t):
        return self.patch.from_plane(self.planar.eval(y, t))

    def locate(self, x) -> Located:
        return self._memo(x, self._locate)

    def _locate(self, x) -> Located:
        if not self.ambient.contains(x):
            raise AmbientMismatch(f"{x} is not a point of {self.ambient!r}")
        if not self.patch.covers(x):
            return OUTSIDE
        return self.planar.locate(self.patch.to_plane(x))


def identity_chart(ambient) -> RadialOffsetChart:
    return RadialOffsetChart(ambient)


# -- containment algebra ---------------------------------------------------------

def _planar_pair(outer, inner):
    if isinstance(outer, PlanarConvexChart) and isinstance(inner, PlanarConvexChart):
        return outer, inner
    if (isinstance(outer, TransportedChart) and isinstance(inner, TransportedChart)
            and outer.patch == inner.patch):
        return outer.planar, inner.planar
    return None


def _radial_pair(outer, inner):
    return (isinstance(outer, RadialOffsetChart) and isinstance(inner, RadialOffsetChart)
            and outer.sign == inner.sign)


def _radial_offset_gap(outer: RadialOffsetChart, inner: RadialOffsetChart) -> Rational:
    """min over z of d_inner(z) - d_outer(outer^-1 inner(z)): PL, so breakpoints suffice."""
    trans = inner.iso.then(outer._iso_inv)
    best = None
    Z = inner.base
    cands = [BasePoint.at(v) for v in range(Z.n)]
    for e in Z.edges:
        cands.extend(BasePoint(edge=e, param=s) for s in trans.edge_breakpoints(e) if 0 < s < 1)
    for z in cands:
        g = inner.offset(z) - outer.offset(trans(z))
        if best is None or g < best:
            best = g
    return best


def min_outer_level(outer: ConeChart, inner: ConeChart, b):
    """Least outer-level over the inner level set inner(Z x {b}).

    Exact for radial/radial and planar/planar pairs; values <= 0 mean some of
    the level set lies outside the outer image.  Other pairs are sampled and
    return None as soon as a sample falls outside the outer image.
    """
    b = Q(b)
    if _radial_pair(outer, inner):
        return b + _radial_offset_gap(outer, inner)
    pp = _planar_pair(outer, inner)
    if pp is not None:
        o, i = pp
        delta = sub(i.center, o.center)
        rho = i.width(b)
        g = max(o.poly.gauge(add(delta, scale(rho, v))) for v in i.poly.verts)
        return o.width_inv(g)
    for hook, other in ((getattr(outer, "min_level_over", None), inner),
                        (getattr(inner, "min_level_under", None), outer)):
        if hook is not None:
            v = hook(other, b)
            if v is not NotImplemented:
                return v
    if isinstance(outer, RadialOffsetChart) and isinstance(inner, RadialOffsetChart):
        return None  # opposite poles of a suspension
    best = None
    for z in enumerate_sample_points(inner.base, SAMPLED_CONTAINMENT_M):
        t = outer.level(inner.eval(z, b))
        if t is None:
            return None
        if t is not INF and (best is None or t < best):
            best = t
    return best if best is not None else INF


def region_contains_region(outer: ConeChart, a, inner: ConeChart, b) -> bool:
    """outer(Y x (a, INF]) contains inner(Z x [b, INF])."""
    m = min_outer_level(outer, inner, b)
    return m is not None and m > Q(a)


def inner_level_threshold(outer: ConeChart, a, inner: ConeChart):
    """b* such that inner(Z x [b, INF]) lies in outer(Y x (a, INF]) exactly when b > b*.

    Returns None when no b works.  Exact pairs only.
    """
    a = Q(a)
    if _radial_pair(outer, inner):
        return a - _radial_offset_gap(outer, inner)
    pp = _planar_pair(outer, inner)
    if pp is None:
        raise NotImplementedError("threshold only available for exactly decidable pairs")
    o, i = pp
    R = o.width(a)
    delta = sub(i.center, o.center)
    if o.poly.gauge(delta) >= R:
        return None
    rho_max = None
    for v in i.poly.verts:
        for _, _, n, h in o.poly.faces:
            nv = dot(n, v)
            if nv > 0:
                cand = (R * h - dot(n, delta)) / nv
                if rho_max is None or cand < rho_max:
                    rho_max = cand
    return i.width_inv(rho_max)


def check_same_ambient(phi: ConeChart, psi: ConeChart):
    if phi.ambient != psi.ambient:
        raise AmbientMismatch("charts live in different ambient spaces")


def interlacing_conditions(k: int):
    """The containments of k-interlacing as (outer, a, inner, b) with outer/inner in {"phi","psi"}."""
    conds = [("phi", 2 * i - 1, "psi", 2 * i) for i in range(1, k + 1)]
    conds += [("psi", 2 * i, "phi", 2 * i + 1) for i in range(1, k)]
    return sorted(conds, key=lambda c: c[1])


def is_k_interlaced(phi: ConeChart, psi: ConeChart, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be at least 2")
    check_same_ambient(phi, psi)
    charts = {"phi": phi, "psi": psi}
    return all(region_contains_region(charts[o], a, charts[i], b)
               for o, a, i, b in interlacing_conditions(k))


def is_exact_pair(phi: ConeChart, psi: ConeChart) -> bool:
    if getattr(phi, "exact_against", None) is not None:
        return phi.exact_against(psi)
    return _radial_pair(phi, psi) or _planar_pair(phi, psi) is not None


# -- generators --------------------------------------------------------------------

def make_offset_chart(phi: RadialOffsetChart, d: PLBaseFunction) -> RadialOffsetChart:
    """psi(z, t) = phi(z, t + d(z)); requires |d| < 1."""
    if not isinstance(phi, RadialOffsetChart):
        raise InvalidChart("offset charts are built from radial-offset charts")
    if d.graph != phi.base:
        raise WrongBase("offset function lives on a different base")
    if d.max_abs >= 1:
        raise OffsetTooLarge(f"offset magnitude {fmt(d.max_abs)} is not below 1")
    total = PLBaseFunction(phi.base, [a + b for a, b in zip(phi.offset.values, d.values)])
    psi = RadialOffsetChart(phi.ambient, phi.base, phi.iso, total, phi.sign)
    assert is_k_interlaced(phi, psi, 2)
    return psi


_KAPPAS = [Rational(1), Rational(3, 4), Rational(5, 4), Rational(1, 2), Rational(2, 3),
           Rational(3, 2), Rational(1, 3), Rational(1, 4)]


def recenter_chart(phi: ConeChart, q) -> ConeChart:
    """A chart with vertex q whose level polygons are scaled translates of phi's.

    Stand-in for the micro-homogeneity step: on the planar models the
    interlaced chart is written down directly.  q must lie in
    phi(Y x (4, INF]); TargetTooShallow when no tried scale interlaces.
    """
    if isinstance(phi, TransportedChart):
        inner = recenter_chart(phi.planar, phi.patch.to_plane(q)) if phi.patch.covers(q) else None
        if inner is None:
            raise TargetTooShallow("target outside the chart")
        return TransportedChart(inner, phi.patch)
    if not isinstance(phi, PlanarConvexChart):
        raise InvalidChart("recentering is implemented for planar charts")
    if not region_contains(phi, 4, "open", q):
        raise TargetTooShallow("target must lie in phi(Y x (4, INF])")
    for kappa in _candidate_scales(phi, q):
        try:
            psi = phi.with_center(q, kappa)
        except InvalidChart:
            continue
        if is_k_interlaced(phi, psi, 2):
            return psi
    raise TargetTooShallow("no scaled translate of phi centred at the target is 2-interlaced")


def _candidate_scales(phi: PlanarConvexChart, q):
    out = list(_KAPPAS)
    # sufficient interval for kappa from subadditivity of the gauge; the
    # polygon need not be symmetric, so both directions of q - c matter
    out_ = phi.poly.gauge(sub(q, phi.center))
    in_ = phi.poly.gauge(sub(phi.center, q))
    w = phi.width
    lo = (in_ + w(3)) / w(2)
    hi = min((w(1) - out_) / w(2), (w(3) - out_) / w(4))
    if lo < hi:
        out.insert(1, (lo + hi) / 2)
    return out
