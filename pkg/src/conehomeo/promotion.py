"""Raising the interlacing order of a chart pair, and the limit chart.

promote(phi, psi, k) returns phi' = gamma o beta o alpha o phi, where alpha
and gamma reparameterize levels along phi and beta along psi, using the
anchor levels L1..L6 = 2k-3..2k+2.  phi' agrees with phi below L3 = 2k-1 and
is (k+1)-interlaced with psi.  Iterating gives a tower phi_2, phi_3, ...
whose pointwise limit chi has vertex q.
"""

from __future__ import annotations

import threading

from .base import enumerate_sample_points
from .charts import (OUTSIDE, VERTEX, ConeChart, Interior, check_same_ambient, is_exact_pair,
                     is_k_interlaced, min_outer_level)
from .errors import NoSlack, NotInterlaced, NotKInterlaced, TowerBoundExceeded
from .exact import INF, Q, Rational, fmt
from .homeo import Homeo, LevelReparam
from .pl import make_promotion_triple, pl_eval, pl_invert, promotion_levels

_CACHE_CAP = 200_000


class PromotedChart(ConeChart):
    """The chart gamma o beta o alpha o phi, evaluated without materializing X-maps."""

    def __init__(self, phi: ConeChart, psi: ConeChart, k: int, r):
        self.parent, self.psi, self.k, self.r = phi, psi, k, Q(r)
        self.base, self.ambient = phi.base, phi.ambient
        self.L = promotion_levels(k)
        self.lam, self.mu, self.nu = make_promotion_triple(self.r, k)
        self._lam_inv, self._mu_inv, self._nu_inv = (pl_invert(f) for f in (self.lam, self.mu, self.nu))
        L1, L2, L3, L4, L5, L6 = self.L
        self.alpha = LevelReparam(phi, self.lam, (L1, INF), ("promotion",))
        self.beta = LevelReparam(psi, self.mu, (L2, L6), ("promotion",))
        self.gamma = LevelReparam(phi, self.nu, (L1, L3 + self.r), ("promotion",))
        self._cache = {}
        self._vertex = self._forward(phi.vertex, None, INF)

    def __repr__(self):
        return f"PromotedChart(k={self.k}, r={fmt(self.r)})"

    @property
    def depth(self) -> int:
        return 1 + (self.parent.depth if isinstance(self.parent, PromotedChart) else 0)

    @property
    def vertex(self):
        return self._vertex

    def exact_against(self, psi) -> bool:
        return psi == self.psi and is_exact_pair(self.parent, psi)

    # -- forward ---------------------------------------------------------------
    def _forward(self, x1, y, t1):
        """gamma o beta applied to x1 = parent(y, t1)."""
        L1, L2, L3, L4, L5, L6 = self.L
        s = self.psi.level(x1)
        if s is not None and s is not INF and L2 < s < L6:
            z = self.psi.locate(x1).y
            x2 = self.psi.eval(z, pl_eval(self.mu, s))
            loc = self.parent.locate(x2)
            if loc.kind == "interior" and L1 < loc.t < L3 + self.r:
                return self.parent.eval(loc.y, pl_eval(self.nu, loc.t))
            return x2
        if t1 is not INF and L1 < t1 < L3 + self.r:
            return self.parent.eval(y, pl_eval(self.nu, t1))
        return x1

    def eval(self, y, t):
        if t is INF:
            return self._vertex
        if t <= self.L[2]:
            return self.parent.eval(y, t)
        t1 = pl_eval(self.lam, t)
        return self._forward(self.parent.eval(y, t1), y, t1)

    # -- inverse ---------------------------------------------------------------
    def locate(self, x):
        hit = self._cache.get(x)
        if hit is None:
            hit = self._locate(x)
            if len(self._cache) >= _CACHE_CAP:
                self._cache.clear()
            self._cache[x] = hit
        return hit

    def _locate(self, x):
        L1, L2, L3, L4, L5, L6 = self.L
        loc = self.parent.locate(x)
        if loc.kind == "outside":
            return OUTSIDE
        if loc.kind == "interior" and loc.t <= L3:
            return loc
        x1, y, t = x, loc.y, loc.t
        if loc.kind == "interior" and t < L3 + self.r:
            t = pl_eval(self._nu_inv, t)
            x1 = self.parent.eval(y, t)
        s = self.psi.level(x1)
        if s is not None and s is not INF and L2 < s < L6:
            z = self.psi.locate(x1).y
            loc = self.parent.locate(self.psi.eval(z, pl_eval(self._mu_inv, s)))
            y, t = loc.y, loc.t
            kind = loc.kind
        else:
            kind = "vertex" if t is None else "interior"
        if kind == "vertex":
            return VERTEX
        assert kind == "interior", "promotion maps leave the chart image"
        return Interior(y, pl_eval(self._lam_inv, t))

    # -- exact level bounds for the next promotion -------------------------------
    def min_level_over(self, psi, b):
        """Least phi'-level on psi(Z x {b})."""
        if psi != self.psi:
            return NotImplemented
        L1, L2, L3, L4, L5, L6 = self.L
        if b >= L4:
            m = min_outer_level(self.parent, psi, pl_eval(self._mu_inv, b))
            return None if m is None else pl_eval(self._lam_inv, m)
        m = min_outer_level(self.parent, psi, b)
        if m is not None and m <= L3:
            return m
        return NotImplemented

    def min_level_under(self, psi, b):
        """Least psi-level on phi'(Y x {b})."""
        if psi != self.psi:
            return NotImplemented
        L1, L2, L3, L4, L5, L6 = self.L
        if b <= L3:
            return min_outer_level(psi, self.parent, b)
        if b >= L5:
            m = min_outer_level(psi, self.parent, pl_eval(self.lam, b))
            return None if m is None else pl_eval(self.mu, m)
        return NotImplemented


def promotion_slack(phi: ConeChart, psi: ConeChart, k: int):
    """Supremum r* of the admissible r, from the three slack containments."""
    L1, L2, L3, L4, L5, L6 = promotion_levels(k)
    bounds = []
    for outer, inner, b, a in ((phi, psi, L2, L1), (psi, phi, L3, L2), (phi, psi, L4, L3)):
        m = min_outer_level(outer, inner, b)
        if m is None:
            return None
        bounds.append(m - a)
    return min(bounds)


def promote(phi: ConeChart, psi: ConeChart, k: int, r=None, check: bool = True) -> PromotedChart:
    promotion_levels(k)
    check_same_ambient(phi, psi)
    if not is_k_interlaced(phi, psi, k):
        raise NotKInterlaced(f"charts are not {k}-interlaced")
    r_star = promotion_slack(phi, psi, k)
    if r_star is None or r_star <= 0:
        raise NoSlack("no admissible r for the promotion containments")
    if r is None:
        r = r_star / 2 if is_exact_pair(phi, psi) else r_star / 4
        r = min(r, Rational(1))
    elif not 0 < Q(r) < r_star:
        raise NoSlack(f"r = {fmt(Q(r))} is not below the slack {fmt(r_star)}")
    out = PromotedChart(phi, psi, k, r)
    if check:
        L3 = out.L[2]
        for y in enumerate_sample_points(phi.base, 2):
            for t in (L3 / 3, L3 / 2, L3):
                assert out.eval(y, t) == phi.eval(y, t), "promotion moved the low levels"
        assert is_k_interlaced(out, psi, k + 1), "promotion did not raise the interlacing order"
    return out


class ChartTower:
    """phi_2 = phi, phi_(i+1) = promote(phi_i, psi, i), materialized on demand."""

    def __init__(self, phi: ConeChart, psi: ConeChart, bound: int = 64, check: bool = True):
        if not is_k_interlaced(phi, psi, 2):
            raise NotInterlaced("the tower needs a 2-interlaced pair")
        self.phi, self.psi, self.bound, self.check = phi, psi, bound, check
        self._charts = [phi]
        self._lock = threading.Lock()

    @property
    def materialized(self) -> int:
        """Largest index i with phi_i built."""
        return len(self._charts) + 1

    def __getitem__(self, i: int) -> ConeChart:
        if i < 2:
            raise IndexError("tower indices start at 2")
        if i > self.bound:
            raise TowerBoundExceeded(f"index {i} exceeds the tower bound {self.bound}")
        if i - 2 >= len(self._charts):
            with self._lock:
                while i - 2 >= len(self._charts):
                    j = len(self._charts) + 1  # index of the last chart
                    self._charts.append(promote(self._charts[-1], self.psi, j, check=self.check))
        return self._charts[i - 2]


def tower_index(t) -> int:
    """Least i >= 2 with 2i - 1 > t."""
    i = max(2, int(Rational(t + 1) / 2) + 1)
    while 2 * i - 1 <= t:
        i += 1
    while i > 2 and 2 * (i - 1) - 1 > t:
        i -= 1
    return i


class LimitChart(ConeChart):
    """chi = phi_i on Y x (0, 2i-1), chi(Y x {INF}) = q.  Tower-backed."""

    tower_backed = True

    def __init__(self, tower: ChartTower):
        self.tower = tower
        self.base, self.ambient = tower.phi.base, tower.phi.ambient

    def __repr__(self):
        return "LimitChart()"

    @property
    def vertex(self):
        return self.tower.psi.vertex

    def eval(self, y, t):
        if t is INF:
            return self.vertex
        return self.tower[tower_index(t)].eval(y, t)

    def locate(self, x):
        if x == self.vertex:
            return VERTEX
        i = 2
        while True:
            loc = self.tower[i].locate(x)
            if loc.kind == "outside":
                return OUTSIDE
            if loc.kind == "interior" and loc.t < 2 * i - 1:
                return loc
            i += 1


def vertex_swap_chart(phi: ConeChart, psi: ConeChart, bound: int = 64) -> LimitChart:
    return LimitChart(ChartTower(phi, psi, bound))


class AlternateSwap(Homeo):
    """h = chi o phi^-1 on U, the identity elsewhere."""

    def __init__(self, phi: ConeChart, psi: ConeChart, bound: int = 64):
        self.phi, self.psi = phi, psi
        self.chi = vertex_swap_chart(phi, psi, bound)
        self.ambient = phi.ambient
        self.provenance = ("limit-chart",)

    def __repr__(self):
        return "AlternateSwap()"

    def __call__(self, x):
        loc = self.phi.locate(x)
        if loc.kind == "outside" or (loc.kind == "interior" and loc.t <= 3):
            return x
        return self.chi.eval(loc.y, loc.t if loc.kind == "interior" else INF)

    def inv(self, x):
        loc = self.chi.locate(x)
        if loc.kind == "outside" or (loc.kind == "interior" and loc.t <= 3):
            return x
        return self.phi.eval(loc.y, loc.t) if loc.kind == "interior" else self.phi.vertex

    def support(self, x):
        t = self.phi.level(x)
        return t is not None and t > 3


def alternate_lemma1(phi: ConeChart, psi: ConeChart) -> AlternateSwap:
    if not is_k_interlaced(phi, psi, 2):
        raise NotInterlaced("alternate_lemma1 needs a 2-interlaced pair")
    return AlternateSwap(phi, psi)
