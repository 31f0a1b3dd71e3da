"""Deliberately broken constructions, one per named check.

Each Mutation builds a report on a small fixture; the mutation is caught when
its target check fails with a counterexample.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, List, Tuple

from .ambient import ConePoint
from .base import BasePoint, PLBaseFunction, enumerate_sample_points
from .charts import OUTSIDE, Interior, RadialOffsetChart
from .exact import INF, Rational
from .fixtures import f0, f1, f2
from .homeo import Homeo, Piece
from .moves import radial_slide
from .paths import PLPath
from .promotion import ChartTower, LimitChart, PromotedChart, promote, tower_index
from .report import CheckResult, VerificationReport
from .swindle import Lemma1Homeo, Regions, shift
from .verify import (level_grid, lemma1_samples, verify_generic_homeo, verify_lemma1,
                     verify_limit_chart, verify_promotion, verify_reroute)


@dataclass(frozen=True)
class Mutation:
    name: str
    description: str
    target: str
    build: Callable[[], VerificationReport]

    def run(self) -> Tuple[VerificationReport, CheckResult]:
        rep = self.build()
        return rep, rep.check(self.target)


def caught(result: CheckResult) -> bool:
    return not result.passed and bool(result.counterexample)


# -- swap homeomorphism mutants --------------------------------------------------

class _SkipGamma(Lemma1Homeo):
    def alpha(self, x):
        return self.beta(x)

    def alpha_inv(self, x):
        return self.beta_inv(x)


class _BadInverse(Lemma1Homeo):
    def beta_inv(self, x):
        return self.beta(x)


class _DropT(Lemma1Homeo):
    """A-constituents forget the final psi-shift."""

    def _make_piece(self, kind, n):
        piece = super()._make_piece(kind, n)
        if kind != "A":
            return piece
        phi = self.phi

        def fwd(x):
            return self.alpha(shift(phi, x, -n))

        def bwd(x):
            return shift(phi, self.alpha_inv(x), n)

        return Piece(piece.name, piece.domain, fwd, piece.image, bwd)


class _ShortStride(Lemma1Homeo):
    """B-constituents push by at most one psi-shift, so deep points stay shallow."""

    def _make_piece(self, kind, n):
        piece = super()._make_piece(kind, n)
        if kind != "B" or n < 3:
            return piece
        phi, psi = self.phi, self.psi

        def fwd(x):
            return shift(psi, shift(phi, x, -(n - 1)), 1)

        def bwd(x):
            return shift(phi, shift(psi, x, -1), n - 1)

        return Piece(piece.name, piece.domain, fwd, piece.image, bwd)


class _FixesVertex(Lemma1Homeo):
    def __call__(self, x):
        return x if x == self.p else super().__call__(x)

    def inv(self, x):
        return x if x == self.q else super().inv(x)


class _ForgetsA(Lemma1Homeo):
    """Region labels without the A family."""

    def classify(self, x) -> Regions:
        lab = super().classify(x)
        return Regions(frozenset(l for l in lab.phi if l[0] != "A"), lab.psi)


class _Leaky(Homeo):
    """Swap map that also lowers points below the charts by one."""

    def __init__(self, h):
        self.h, self.ambient = h, h.ambient

    def _below(self, x, cut):
        return isinstance(x, ConePoint) and not x.is_vertex and x.height <= cut

    def __call__(self, x):
        return ConePoint(x.base, x.height - 1) if self._below(x, -1) else self.h(x)

    def inv(self, x):
        return ConePoint(x.base, x.height + 1) if self._below(x, -2) else self.h.inv(x)


def _lemma1_report(cls, fixture=f1, **kw):
    phi, psi = fixture()
    h = cls(phi, psi)
    return verify_lemma1(phi, psi, h, lemma1_samples(phi, psi, m=1, n_random=10), n_outside=40, **kw)


# -- promotion and limit-chart mutants -----------------------------------------------

class _LazyLocate(PromotedChart):
    """Inverse that ignores the reparameterizations."""

    def locate(self, x):
        return self.parent.locate(x)


class _TruncatedLimit(LimitChart):
    """phi_3 used beyond its range instead of climbing the tower."""

    def eval(self, y, t):
        if t is INF:
            return self.vertex
        return self.tower[min(tower_index(t), 3)].eval(y, t)

    def locate(self, x):
        if x == self.vertex:
            return super().locate(x)
        return self.tower[3].locate(x)


class _ShiftedLow(LimitChart):
    def eval(self, y, t):
        if t is not INF and t <= 3:
            t = t + Rational(1, 4)
        return super().eval(y, t)


class _StopsAtFive(LimitChart):
    def locate(self, x):
        loc = super().locate(x)
        return OUTSIDE if loc.kind == "interior" and loc.t > 5 else loc


class _Overshoots(LimitChart):
    def locate(self, x):
        loc = super().locate(x)
        return Interior(loc.y, loc.t + 20) if loc.kind == "interior" else loc


def _promotion_report(k, make_phi2, fixture=f1):
    phi, psi = fixture()
    return verify_promotion(phi, psi, k, make_phi2(phi, psi), m=1)


def _offset_low(phi, psi):
    return RadialOffsetChart(phi.ambient, phi.base, phi.iso,
                             PLBaseFunction.constant(phi.base, Rational(1, 4)))


def _lazy_promote(phi, psi):
    good = promote(phi, psi, 2)
    return _LazyLocate(phi, psi, 2, good.r)


def _limit_report(cls, fixture=f2):
    phi, psi = fixture()
    return verify_limit_chart(phi, psi, cls(ChartTower(phi, psi)))


# -- generic, move and reroute mutants ---------------------------------------------

class _Flicker(Homeo):
    """Alternates between two answers on repeated calls."""

    def __init__(self, g):
        self.g, self.ambient = g, g.ambient
        self._tick = itertools.count()

    def __call__(self, x):
        return self.g(x) if next(self._tick) % 2 else x

    def inv(self, x):
        return self.g.inv(x)


def _slide_samples(phi):
    return [phi.eval(y, t) for y in enumerate_sample_points(phi.base, 1) for t in level_grid(6)]


def _slide():
    phi, _ = f0()
    return phi, radial_slide(phi, phi.eval(BasePoint.at(0), 1), 5)


def _generic_support():
    phi, g = _slide()
    return verify_generic_homeo(g, lambda x: False, _slide_samples(phi))


def _generic_flicker():
    phi, g = _slide()
    return verify_generic_homeo(_Flicker(g), g.support, _slide_samples(phi))


def _skipped_detour():
    phi, _ = f0()
    path = PLPath.through([phi.eval(BasePoint.at(0), Rational(1, 2)), phi.vertex,
                           phi.eval(BasePoint.at(1), Rational(1, 2))])
    return verify_reroute(path, [phi.vertex], path)


MUTATIONS: List[Mutation] = [
    Mutation("skip_gamma", "alpha = beta, the phi-side reparameterization dropped",
             "overlap_agreement", lambda: _lemma1_report(_SkipGamma)),
    Mutation("bad_inverse", "beta^-1 replaced by beta", "round_trip", lambda: _lemma1_report(_BadInverse)),
    Mutation("drop_T", "A-constituents omit the psi-shift T^(n-1)", "region_images",
             lambda: _lemma1_report(_DropT)),
    Mutation("short_stride", "B-constituents for n >= 3 shift by T once", "vertex_neighborhoods",
             lambda: _lemma1_report(_ShortStride)),
    Mutation("short_stride_basis", "same map, seen by the basis check", "basis_mapping",
             lambda: _lemma1_report(_ShortStride)),
    Mutation("fixes_vertex", "h(p) = p", "vertex",
             lambda: _lemma1_report(_FixesVertex, fixture=f2)),
    Mutation("forgets_A", "classifier drops the A family", "partition", lambda: _lemma1_report(_ForgetsA)),
    Mutation("leaky_support", "points below both charts are moved", "support",
             lambda: verify_lemma1(*f1(), _Leaky(Lemma1Homeo(*f1())),
                                   lemma1_samples(*f1(), m=1, n_random=0), n_outside=40)),
    Mutation("low_levels_moved", "phi' = phi offset by 1/4 everywhere", "agree_below",
             lambda: _promotion_report(2, _offset_low)),
    Mutation("identity_promotion", "phi' = phi on a pair that is only 2-interlaced, k = 3", "interlaced",
             lambda: _promotion_report(3, lambda phi, psi: phi, fixture=f2)),
    Mutation("lazy_locate", "promoted chart inverted through its parent", "chart_round_trip",
             lambda: _promotion_report(2, _lazy_promote, fixture=f2)),
    Mutation("truncated_tower", "tower stopped at i = 3 and extended by phi_3", "continuity",
             lambda: _limit_report(_TruncatedLimit)),
    Mutation("limit_low_shift", "chi shifted by 1/4 on levels up to 3", "agree_below_3",
             lambda: _limit_report(_ShiftedLow)),
    Mutation("limit_stops", "chi-preimages above level 5 reported missing", "onto",
             lambda: _limit_report(_StopsAtFive)),
    Mutation("limit_overshoots", "chi-preimage levels reported 20 too high", "properness",
             lambda: _limit_report(_Overshoots)),
    Mutation("declared_support_empty", "radial slide declared to move nothing", "support",
             _generic_support),
    Mutation("flicker", "map alternates between two answers", "deterministic", _generic_flicker),
    Mutation("skipped_detour", "reroute returns the original path", "avoids_F", _skipped_detour),
]


def run_mutations(mutations=None):
    """[(mutation, target CheckResult)] for each mutation."""
    return [(m, m.run()[1]) for m in (MUTATIONS if mutations is None else mutations)]
