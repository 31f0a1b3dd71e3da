"""The vertex-swap homeomorphism of a 2-interlaced pair of cone charts.

With p, q the vertices of phi, psi the construction cuts U into

    A0 = phi[1, INF] - psi(2, INF]      B1 = C1 = psi[2, INF] - phi(3, INF]
    D1 = phi[3, INF] - psi(4, INF]      A_n = S^n(A0), B_n = S^(n-1)(B1), ...

(writing phi[a, b] for phi(Y x [a, b]) and S, T for the level shifts by 2)
and sends B_n -> C_n by T^(n-1) S^-(n-1), A_n -> D_n by T^(n-1) alpha S^-n,
p -> q, and fixes everything outside psi(2, INF].  Only the pieces a query
needs are ever materialized.
"""

from __future__ import annotations

import math
import threading
from typing import FrozenSet, NamedTuple

from .charts import (ConeChart, inner_level_threshold, is_exact_pair, is_k_interlaced,
                     min_outer_level, region_contains_region)
from .errors import InvalidR, NotInterlaced, OutsideChart, ShiftOutOfRange
from .exact import INF, Q, Rational, fmt
from .homeo import Homeo, Piece
from .pl import make_lemma1_lambda_mu, pl_eval, pl_invert


def compute_r(phi: ConeChart, psi: ConeChart) -> Rational:
    """Half the supremum of the r > 0 with phi(1, INF] > psi[2-r, INF] and phi(3+r, INF] > psi[4, INF]."""
    if not is_k_interlaced(phi, psi, 2):
        raise NotInterlaced("compute_r needs a 2-interlaced pair")
    bound2 = min_outer_level(phi, psi, 4) - 3
    if is_exact_pair(phi, psi):
        b_star = inner_level_threshold(phi, 1, psi)
        r_star = min(2 - b_star, bound2)
        r = r_star / 2
    else:
        r = bound2 / 2
        while not region_contains_region(phi, 1, psi, 2 - r):
            r /= 2
    if r >= 2:
        r = Rational(1)
    _check_r(phi, psi, r)
    return r


def _check_r(phi, psi, r):
    if not r > 0:
        raise InvalidR(f"r must be positive, got {fmt(r)}")
    if not (region_contains_region(phi, 1, psi, 2 - r) and region_contains_region(phi, 3 + r, psi, 4)):
        raise InvalidR(f"r = {fmt(r)} violates the slack containments")


def shift(chart: ConeChart, x, m: int = 1):
    """chart(y, t) -> chart(y, t + 2m); the vertex is fixed."""
    loc = chart.locate(x)
    if loc.kind == "vertex":
        return x
    if loc.kind == "outside":
        raise OutsideChart(f"{x} is outside the chart")
    if m == 0:
        return x
    t = loc.t + 2 * m
    if t <= 0:
        raise ShiftOutOfRange(f"shifting level {fmt(loc.t)} by {2 * m} leaves (0, INF]")
    return chart.eval(loc.y, t)


def shift_S(phi, x, m: int = 1):
    return shift(phi, x, m)


def shift_T(psi, x, m: int = 1):
    return shift(psi, x, m)


def _try_shift(chart, x, m):
    loc = chart.locate(x)
    if loc.kind == "vertex":
        return x
    if loc.kind == "outside" or loc.t + 2 * m <= 0:
        return None
    return x if m == 0 else chart.eval(loc.y, loc.t + 2 * m)


class Regions(NamedTuple):
    phi: FrozenSet[str]
    psi: FrozenSet[str]


def _gt(t, a):
    return t is not None and t > a


def _ge(t, a):
    return t is not None and t >= a


def _phi_candidates(t):
    """(kind, n) of the only B_n and A_n that can hold a point of phi-level t.

    B_n has levels in (2n-1, 2n+1] and A_n in [2n+1, 2n+3).
    """
    if t is INF or t is None:
        return []
    out = []
    nb = math.ceil((t - 1) / 2)
    if nb >= 1:
        out.append(("B", nb))
    na = math.floor((t - 1) / 2)
    if na >= 1:
        out.append(("A", na))
    return out


def _psi_candidates(s):
    """Same for the images: C_n has psi-levels in [2n, 2n+2), D_n in (2n, 2n+2]."""
    if s is INF or s is None:
        return []
    out = []
    nc = math.floor(s / 2)
    if nc >= 1:
        out.append(("B", nc))
    nd = math.ceil(s / 2) - 1
    if nd >= 1:
        out.append(("A", nd))
    return out


class Lemma1Homeo(Homeo):
    """h: X -> X with h(p) = q, supported on psi(2, INF] (inside U and V)."""

    def __init__(self, phi: ConeChart, psi: ConeChart, r=None):
        if not is_k_interlaced(phi, psi, 2):
            raise NotInterlaced("build_lemma1_homeo needs a 2-interlaced pair")
        self.phi, self.psi = phi, psi
        self.ambient = phi.ambient
        self.r = compute_r(phi, psi) if r is None else Q(r)
        if r is not None:
            _check_r(phi, psi, self.r)
        self.lam, self.mu = make_lemma1_lambda_mu(self.r)
        self.p, self.q = phi.vertex, psi.vertex
        self._memo = {}
        self._lock = threading.Lock()
        self.provenance = ("lemma1-swindle",)

    def __repr__(self):
        return f"Lemma1Homeo(r={fmt(self.r)})"

    # -- the four basic regions -------------------------------------------------
    def in_core(self, x) -> bool:
        return not _gt(self.psi.level(x), 2)

    def in_A0(self, x) -> bool:
        return _ge(self.phi.level(x), 1) and not _gt(self.psi.level(x), 2)

    def in_B1(self, x) -> bool:
        return _ge(self.psi.level(x), 2) and not _gt(self.phi.level(x), 3)

    in_C1 = in_B1

    def in_D1(self, x) -> bool:
        return _ge(self.phi.level(x), 3) and not _gt(self.psi.level(x), 4)

    # -- alpha = gamma o beta : A0 -> D1 -----------------------------------------------
    def beta(self, x):
        loc = self.psi.locate(x)
        if loc.kind == "interior" and 2 - self.r <= loc.t <= 2:
            return self.psi.eval(loc.y, pl_eval(self.lam, loc.t))
        return x

    def beta_inv(self, x):
        loc = self.psi.locate(x)
        if loc.kind == "interior" and 2 - self.r <= loc.t <= 4:
            return self.psi.eval(loc.y, pl_eval(pl_invert(self.lam), loc.t))
        return x

    def gamma(self, x):
        loc = self.phi.locate(x)
        if loc.kind == "interior" and 1 <= loc.t <= 3 + self.r:
            return self.phi.eval(loc.y, pl_eval(self.mu, loc.t))
        return x

    def gamma_inv(self, x):
        loc = self.phi.locate(x)
        if loc.kind == "interior" and 3 <= loc.t <= 3 + self.r:
            return self.phi.eval(loc.y, pl_eval(pl_invert(self.mu), loc.t))
        return x

    def alpha(self, x):
        return self.gamma(self.beta(x))

    def alpha_inv(self, x):
        return self.beta_inv(self.gamma_inv(x))

    # -- constituents ----------------------------------------------------------
    def constituent(self, kind: str, n: int) -> Piece:
        key = (kind, n)
        piece = self._memo.get(key)
        if piece is None:
            with self._lock:
                piece = self._memo.get(key)
                if piece is None:
                    piece = self._make_piece(kind, n)
                    self._memo[key] = piece
        return piece

    def _make_piece(self, kind, n):
        phi, psi = self.phi, self.psi
        if n < 1:
            raise ValueError("constituent index starts at 1")
        if kind == "B":
            def dom(x):
                z = _try_shift(phi, x, -(n - 1))
                return z is not None and z != self.p and self.in_B1(z)

            def fwd(x):
                return shift(psi, shift(phi, x, -(n - 1)), n - 1)

            def img(x):
                z = _try_shift(psi, x, -(n - 1))
                return z is not None and z != self.q and self.in_C1(z)

            def bwd(x):
                return shift(phi, shift(psi, x, -(n - 1)), n - 1)
        elif kind == "A":
            def dom(x):
                z = _try_shift(phi, x, -n)
                return z is not None and z != self.p and self.in_A0(z)

            def fwd(x):
                return shift(psi, self.alpha(shift(phi, x, -n)), n - 1)

            def img(x):
                z = _try_shift(psi, x, -(n - 1))
                return z is not None and z != self.q and self.in_D1(z)

            def bwd(x):
                return shift(phi, self.alpha_inv(shift(psi, x, -(n - 1))), n)
        else:
            raise ValueError(f"unknown constituent kind {kind!r}")
        return Piece(f"h{n}{kind}", dom, fwd, img, bwd)

    def _ordered(self, t):
        for kind, n in _phi_candidates(t):
            yield self.constituent(kind, n)

    def _ordered_inv(self, s):
        for kind, n in _psi_candidates(s):
            yield self.constituent(kind, n)

    # -- evaluation --------------------------------------------------------------
    def __call__(self, x):
        if x == self.p:
            return self.q
        if self.in_core(x):
            return x
        t = self.phi.level(x)
        for piece in self._ordered(t):
            if piece.domain(x):
                return piece.forward(x)
        raise AssertionError(f"{x} lies in no constituent region")

    def inv(self, x):
        if x == self.q:
            return self.p
        if self.in_core(x):
            return x
        s = self.psi.level(x)
        for piece in self._ordered_inv(s):
            if piece.image(x):
                return piece.backward(x)
        raise AssertionError(f"{x} lies in no constituent image")

    def support(self, x):
        return x == self.p or not self.in_core(x)

    # -- region labels -----------------------------------------------------------
    def classify(self, x) -> Regions:
        phi_side, psi_side = set(), set()
        if x == self.p:
            phi_side.add("P")
        else:
            if self.in_core(x):
                phi_side.add("Core")
            for kind, n in _phi_candidates(self.phi.level(x)):
                if self.constituent(kind, n).domain(x):
                    phi_side.add(f"{kind}{n}")
        if x == self.q:
            psi_side.add("Q")
        else:
            if self.in_core(x):
                psi_side.add("Core")
            for kind, n in _psi_candidates(self.psi.level(x)):
                if self.constituent(kind, n).image(x):
                    psi_side.add(("C" if kind == "B" else "D") + str(n))
        return Regions(frozenset(phi_side), frozenset(psi_side))


def build_lemma1_homeo(phi: ConeChart, psi: ConeChart) -> Lemma1Homeo:
    return Lemma1Homeo(phi, psi)


def build_alpha(phi: ConeChart, psi: ConeChart, r):
    """(alpha, alpha_inv) as plain functions A0 -> D1 and back."""
    h = Lemma1Homeo(phi, psi, r)
    return h.alpha, h.alpha_inv


def classify_region(phi: ConeChart, psi: ConeChart, x) -> Regions:
    return Lemma1Homeo(phi, psi).classify(x)


def region_label_index(label: str):
    """Numeric index of a label ("B3" -> 3); Core -> 0; vertices -> INF."""
    if label in ("P", "Q"):
        return INF
    if label == "Core":
        return 0
    return int(label[1:])
