"""Strictly increasing piecewise-linear bijections between extended intervals.

Every one-dimensional level reparameterization in the package is a PLHomeo:
the Lemma-1 pair (lambda, mu), the promotion triple (lambda, mu, nu) and the
radial slides.  Arithmetic is exact; infinity is the symbol INF and is only
ever compared, never subtracted.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, Sequence

from .errors import (DomainMismatch, EmptyDomain, InvalidK, NonMonotone,
                     NonPositiveR, OutOfDomain)
from .exact import INF, Q, Rational, fmt


class PLHomeo:
    """Linear interpolation of finitely many breakpoints.

    With ``tail=True`` the map continues past the last breakpoint with slope 1
    and sends INF to INF, so the domain is ``[x0, INF]``.
    """

    __slots__ = ("xs", "ys", "tail")

    def __init__(self, breakpoints: Iterable[Sequence], tail: bool = False):
        pts = [(Q(x), Q(y)) for x, y in breakpoints]
        if not pts or (len(pts) < 2 and not tail):
            raise EmptyDomain("a PLHomeo needs at least two breakpoints (or one plus a tail)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise NonMonotone(f"inputs not strictly increasing at {fmt(x0)}, {fmt(x1)}")
            if not y0 < y1:
                raise NonMonotone(f"outputs not strictly increasing at {fmt(y0)}, {fmt(y1)}")
        self.xs = tuple(p[0] for p in pts)
        self.ys = tuple(p[1] for p in pts)
        self.tail = bool(tail)

    # -- basic structure -------------------------------------------------
    @property
    def breakpoints(self):
        return tuple(zip(self.xs, self.ys))

    @property
    def domain(self):
        return (self.xs[0], INF if self.tail else self.xs[-1])

    @property
    def codomain(self):
        return (self.ys[0], INF if self.tail else self.ys[-1])

    def __eq__(self, other):
        if not isinstance(other, PLHomeo):
            return NotImplemented
        a, b = self.simplified(), other.simplified()
        return a.xs == b.xs and a.ys == b.ys and a.tail == b.tail

    def __hash__(self):
        s = self.simplified()
        return hash((s.xs, s.ys, s.tail))

    def __repr__(self):
        pts = ", ".join(f"({fmt(x)},{fmt(y)})" for x, y in self.breakpoints)
        return f"PLHomeo([{pts}]{', tail' if self.tail else ''})"

    def simplified(self) -> "PLHomeo":
        """Drop breakpoints interior to a straight piece (and a slope-1 end before the tail)."""
        xs, ys = list(self.xs), list(self.ys)
        keep = [0]
        for i in range(1, len(xs) - 1):
            a = keep[-1]
            # collinear iff slopes (a,i) and (i,i+1) agree
            if (ys[i] - ys[a]) * (xs[i + 1] - xs[i]) != (ys[i + 1] - ys[i]) * (xs[i] - xs[a]):
                keep.append(i)
        keep.append(len(xs) - 1)
        if self.tail and len(keep) >= 2:
            a, b = keep[-2], keep[-1]
            if ys[b] - ys[a] == xs[b] - xs[a]:
                keep.pop()
        pts = [(xs[i], ys[i]) for i in keep]
        if len(pts) == 1 and not self.tail:
            pts = [(xs[0], ys[0]), (xs[-1], ys[-1])]
        out = PLHomeo.__new__(PLHomeo)
        out.xs = tuple(p[0] for p in pts)
        out.ys = tuple(p[1] for p in pts)
        out.tail = self.tail
        return out

    def in_domain(self, t) -> bool:
        if t is INF:
            return self.tail
        t = Q(t)
        lo, hi = self.domain
        return lo <= t and (hi is INF or t <= hi)

    # -- evaluation ------------------------------------------------------
    def __call__(self, t):
        return pl_eval(self, t)

    def inverse(self) -> "PLHomeo":
        return pl_invert(self)

    def slope_after(self, t: Rational) -> Rational:
        """Right derivative at t."""
        i = bisect_right(self.xs, t) - 1
        if i >= len(self.xs) - 1:
            return Rational(1)
        return (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])

    def blend_with_identity(self, weight) -> "PLHomeo":
        """Return t -> (1-w) t + w f(t) for a constant 0 <= w <= 1.

        A convex combination of increasing maps is increasing, so the
        result is again a PLHomeo with the same breakpoints.
        """
        w = Q(weight)
        if not 0 <= w <= 1:
            raise ValueError("blend weight must lie in [0, 1]")
        pts = [(x, (1 - w) * x + w * y) for x, y in self.breakpoints]
        return PLHomeo(pts, tail=self.tail)


def pl_make(breakpoints, tail: bool = False) -> PLHomeo:
    return PLHomeo(breakpoints, tail=tail)


def identity(lo=0, hi=None) -> PLHomeo:
    """Identity on [lo, hi], or on [lo, INF] when hi is None."""
    if hi is None:
        return PLHomeo([(lo, lo)], tail=True)
    return PLHomeo([(lo, lo), (hi, hi)])


def pl_eval(f: PLHomeo, t):
    if t is INF:
        if f.tail:
            return INF
        raise OutOfDomain("INF outside a bounded domain")
    t = Q(t)
    xs, ys = f.xs, f.ys
    if t < xs[0] or (not f.tail and t > xs[-1]):
        raise OutOfDomain(f"{fmt(t)} outside [{fmt(xs[0])}, {fmt(f.domain[1])}]")
    if t >= xs[-1]:
        return ys[-1] + (t - xs[-1])
    i = bisect_right(xs, t) - 1
    if xs[i] == t:
        return ys[i]
    x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0)


def pl_invert(f: PLHomeo) -> PLHomeo:
    out = PLHomeo.__new__(PLHomeo)
    out.xs, out.ys, out.tail = f.ys, f.xs, f.tail
    return out


def _preimages(g: PLHomeo, values) -> list:
    ginv = pl_invert(g)
    return [pl_eval(ginv, v) for v in values if ginv.in_domain(v)]


def pl_compose(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    """The map t -> f(g(t)) on the part of g's domain that g sends into f's domain.

    Raises DomainMismatch when that part is empty or a single point.
    """
    glo, ghi = g.codomain
    flo, fhi = f.domain
    lo = max(glo, flo)
    hi = fhi if ghi is INF else (ghi if fhi is INF else min(ghi, fhi))
    if not lo < hi:
        raise DomainMismatch(
            f"codomain [{fmt(glo)},{fmt(ghi)}] does not overlap domain [{fmt(flo)},{fmt(fhi)}]")
    if (lo, hi) != (glo, ghi):
        g = _restrict_codomain(g, lo, hi)
    xs = set(g.xs)
    xs.update(_preimages(g, f.xs))
    # with tails, past the largest merged breakpoint both maps have slope 1
    xs = sorted(xs)
    pts = [(x, pl_eval(f, pl_eval(g, x))) for x in xs]
    return PLHomeo(pts, tail=g.tail).simplified()


def _restrict_codomain(g: PLHomeo, lo, hi) -> PLHomeo:
    ginv = pl_invert(g)
    ys = [lo] + [y for y in g.ys if lo < y and (hi is INF or y < hi)]
    tail = hi is INF
    if not tail:
        ys.append(hi)
    return PLHomeo([(pl_eval(ginv, y), y) for y in ys], tail=tail)


# -- the reparameterizations used by the constructions --------------------

def make_lemma1_lambda_mu(r):
    """Linear lambda: [2-r, 2] -> [2-r, 4] and mu: [1, 3+r] -> [3, 3+r]."""
    r = Q(r)
    if r <= 0:
        raise NonPositiveR(f"r must be positive, got {fmt(r)}")
    if r >= 2:
        raise NonPositiveR(f"r must be below 2 so that 2-r is a level, got {fmt(r)}")
    lam = PLHomeo([(2 - r, 2 - r), (2, 4)])
    mu = PLHomeo([(1, 3), (3 + r, 3 + r)])
    return lam, mu


def promotion_levels(k: int):
    """The six anchor levels 2k-3, ..., 2k+2 used when promoting a k-interlaced pair."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise InvalidK(f"k must be an integer >= 2, got {k!r}")
    return tuple(Rational(2 * k + j) for j in range(-3, 3))


def make_promotion_triple(r, k: int = 2):
    """Return (lam, mu, nu), homeomorphisms of (0, INF] with the promotion anchors.

    lam = id on (0, L1], lam(L3) = L1 + r, lam(L5) = L3, slope 1 afterwards.
    mu  = id on (0, L2] and [L6, INF], mu(L2 + r) = L4.
    nu  = id on (0, L1], inverse of lam|[L1, L3] on [L1, L1 + r], id on [L3 + r, INF].
    """
    r = Q(r)
    if r <= 0:
        raise NonPositiveR(f"r must be positive, got {fmt(r)}")
    L1, L2, L3, L4, L5, L6 = promotion_levels(k)
    if r >= 2:
        # mu needs L2 + r < L4
        raise NonPositiveR(f"r must be below 2, got {fmt(r)}")
    zero = Rational(0)
    lam = PLHomeo([(zero, zero), (L1, L1), (L3, L1 + r), (L5, L3)], tail=True)
    mu = PLHomeo([(zero, zero), (L2, L2), (L2 + r, L4), (L6, L6)], tail=True)
    nu = PLHomeo([(zero, zero), (L1, L1), (L1 + r, L3), (L3 + r, L3 + r)], tail=True)
    return lam, mu, nu
