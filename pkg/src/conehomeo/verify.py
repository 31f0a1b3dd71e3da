"""Exact property checks for the constructions.

Every check compares rationals exactly.  Samples are chart points on a grid
of base points and half-integer levels, boundary level sets, and seeded
random points; points outside the chart images come from ambient-specific
generators.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, List, Optional

from .ambient import AbstractCone, OpenSquare, Suspension
from .base import BasePoint, enumerate_sample_points
from .charts import interlacing_conditions, is_k_interlaced
from .exact import INF, Rational, fmt
from .report import VerificationReport, fmt_point
from .swindle import Lemma1Homeo, region_label_index

GRID_M = 3
MAX_LEVEL = 13


# -- samples ----------------------------------------------------------------------

def level_grid(max_level=MAX_LEVEL, extra=()) -> List[Rational]:
    ts = {Rational(k, 2) for k in range(1, 2 * int(max_level) + 1)}
    ts.update(Rational(t) for t in extra if 0 < t <= max_level)
    return sorted(ts)


def random_base_point(Y, rnd: random.Random) -> BasePoint:
    if not Y.edges or rnd.random() < 0.3:
        return BasePoint.at(rnd.randrange(Y.n))
    return BasePoint.on(rnd.choice(Y.edges), Rational(rnd.randint(1, 15), 16))


def chart_samples(chart, m=GRID_M, max_level=MAX_LEVEL, extra=(), n_random=0, rnd=None):
    pts = []
    for y in enumerate_sample_points(chart.base, m):
        for t in level_grid(max_level, extra):
            pts.append(chart.eval(y, t))
    for _ in range(n_random):
        y = random_base_point(chart.base, rnd)
        pts.append(chart.eval(y, Rational(rnd.randint(1, 8 * int(max_level)), 8)))
    return pts


def ambient_candidates(ambient, rnd: random.Random, count: int):
    for _ in range(count):
        if isinstance(ambient, AbstractCone):
            yield ambient.point(random_base_point(ambient.base, rnd), Rational(rnd.randint(-40, 40), 8))
        elif isinstance(ambient, Suspension):
            yield ambient.point(random_base_point(ambient.base, rnd), Rational(rnd.randint(-80, 80), 8))
        elif isinstance(ambient, OpenSquare):
            H = ambient.halfwidth if ambient.halfwidth is not None else Rational(8)
            k = 64
            lim = int(H * k) - 1
            yield (Rational(rnd.randint(-lim, lim), k), Rational(rnd.randint(-lim, lim), k))
        else:
            raise ValueError(f"no sampler for {ambient!r}")


def outside_samples(ambient, charts, count: int, rnd: random.Random):
    """Up to ``count`` ambient points outside every chart image."""
    out = []
    for x in ambient_candidates(ambient, rnd, 20 * count):
        if all(c.locate(x).kind == "outside" for c in charts):
            out.append(x)
            if len(out) >= count:
                break
    return out


def _first(points: Iterable, bad: Callable) -> Optional[str]:
    for x in points:
        msg = bad(x)
        if msg:
            return msg if isinstance(msg, str) else fmt_point(x)
    return None


def _level_above(chart, x, a) -> bool:
    t = chart.level(x)
    return t is not None and t > a


# -- the swap homeomorphism ---------------------------------------------------------

def lemma1_samples(phi, psi, seed=0, m=GRID_M, max_level=MAX_LEVEL, n_random=40):
    rnd = random.Random(seed)
    pts = chart_samples(phi, m, max_level, (1, 2, 3, 4), n_random, rnd)
    pts += chart_samples(psi, m, max_level, (1, 2, 3, 4), n_random, rnd)
    return list(dict.fromkeys(pts))


def verify_lemma1(phi, psi, h, samples=None, seed=0, n_outside=100, max_n=6, max_k=5,
                  title="swap homeomorphism") -> VerificationReport:
    rep = VerificationReport(title, seed)
    rnd = random.Random(seed + 1)
    pts = lemma1_samples(phi, psi, seed) if samples is None else list(samples)
    p, q = phi.vertex, psi.vertex

    cex = None if h(p) == q and h.inv(q) == p else f"h(p) = {fmt_point(h(p))}"
    rep.add("vertex", 1, cex)

    outside = outside_samples(phi.ambient, [phi, psi], n_outside, rnd)

    def moved_outside(x):
        return h(x) != x or h.inv(x) != x

    def moved_off_support(x):
        if h(x) != x and phi.locate(x).kind == "outside" and psi.locate(x).kind == "outside":
            return True
        return False

    cex = _first(outside, moved_outside) or _first(pts, moved_off_support)
    in_cap = all(phi.locate(x).kind != "outside" and psi.locate(x).kind != "outside"
                 for x in pts if h(x) != x)
    rep.add("support", len(outside) + len(pts), cex,
            f"moved samples inside U and V: {'yes' if in_cap else 'no'}")

    def round_trip(x):
        return h.inv(h(x)) != x or h(h.inv(x)) != x

    rep.add("round_trip", len(pts), _first(pts, round_trip))

    # phi-level >= 2k+3 forces psi-level > 2k after h, and symmetrically for h^-1
    nb_count, nb_cex = 0, None
    for k in range(1, max_k + 1):
        for x in pts:
            t, s = phi.level(x), psi.level(x)
            if t is not None and t >= 2 * k + 3:
                nb_count += 1
                if not _level_above(psi, h(x), 2 * k):
                    nb_cex = nb_cex or f"k={k} {fmt_point(x)} -> {fmt_point(h(x))}"
            if s is not None and s >= 2 * k + 3:
                nb_count += 1
                if not _level_above(phi, h.inv(x), 2 * k):
                    nb_cex = nb_cex or f"k={k} inverse {fmt_point(x)} -> {fmt_point(h.inv(x))}"
    rep.add("vertex_neighborhoods", nb_count, nb_cex)

    if isinstance(h, Lemma1Homeo):
        _constituent_checks(rep, h, phi, psi, pts, max_n, max_k)
    return rep


def overlap_points(phi, psi, n, m=GRID_M):
    """Points of B_n and A_n together, and of A_n and B_(n+1) together."""
    ba = [phi.eval(y, 2 * n + 1) for y in enumerate_sample_points(phi.base, m)]
    ab = []
    for z in enumerate_sample_points(psi.base, m):
        loc = phi.locate(psi.eval(z, 2))
        ab.append(phi.eval(loc.y, loc.t + 2 * n))
    return ba, ab


def _constituent_checks(rep, h: Lemma1Homeo, phi, psi, pts, max_n, max_k):
    count, cex = 0, None
    for n in range(1, max_n + 1):
        ba, ab = overlap_points(phi, psi, n)
        for pair, group in (((("B", n), ("A", n))), ba), ((("A", n), ("B", n + 1)), ab):
            P1, P2 = h.constituent(*pair[0]), h.constituent(*pair[1])
            for x in group:
                count += 1
                if not (P1.domain(x) and P2.domain(x)):
                    cex = cex or f"{fmt_point(x)} not in {P1.name} and {P2.name}"
                elif P1.forward(x) != P2.forward(x):
                    cex = cex or (f"{P1.name}{fmt_point(x)} = {fmt_point(P1.forward(x))} but "
                                  f"{P2.name} gives {fmt_point(P2.forward(x))}")
    rep.add("overlap_agreement", count, cex)

    labels = {x: h.classify(x) for x in pts}
    images = {x: h(x) for x in pts}
    img_labels = {x: h.classify(images[x]) for x in pts}

    cex = None
    for x in pts:
        if not labels[x].phi or not labels[x].psi:
            cex = cex or fmt_point(x)
    rep.add("partition", len(pts), cex)

    cex, count = None, 0
    for x in pts:
        for lab in labels[x].phi:
            if lab[0] in "AB":
                count += 1
                want = ("C" if lab[0] == "B" else "D") + lab[1:]
                if want not in img_labels[x].psi:
                    cex = cex or f"{lab} point {fmt_point(x)} -> {fmt_point(images[x])} not in {want}"
    rep.add("region_images", count, cex)

    cex, count = None, 0
    for k in range(1, max_k + 1):
        for x in pts:
            idx = [region_label_index(l) for l in labels[x].phi]
            if all(i is INF or i >= k for i in idx):
                count += 1
                out = [region_label_index(l) for l in img_labels[x].psi]
                if not all(i is INF or i >= k for i in out):
                    cex = cex or f"k={k} {fmt_point(x)} -> {fmt_point(images[x])}"
    rep.add("basis_mapping", count, cex)


# -- promotion and the limit chart -----------------------------------------------------

def _interlacing_witness(phi, psi, k, m=15):
    charts = {"phi": phi, "psi": psi}
    for o, a, i, b in interlacing_conditions(k):
        outer, inner = charts[o], charts[i]
        for z in enumerate_sample_points(inner.base, m):
            x = inner.eval(z, b)
            if not _level_above(outer, x, a):
                return f"{i}({z}, {b}) = {fmt_point(x)} not in {o}(({a}, inf])"
    return "containment fails between samples"


def verify_promotion(phi, psi, k, phi2, seed=0, m=GRID_M) -> VerificationReport:
    rep = VerificationReport(f"promotion k={k}", seed)
    top = 2 * k - 1
    count, cex = 0, None
    for y in enumerate_sample_points(phi.base, m):
        for t in level_grid(top, (top,)):
            count += 1
            if phi2.eval(y, t) != phi.eval(y, t):
                cex = cex or f"({y}, {fmt(t)}): {fmt_point(phi2.eval(y, t))} != {fmt_point(phi.eval(y, t))}"
    rep.add("agree_below", count, cex)
    ok = is_k_interlaced(phi2, psi, k + 1)
    rep.add("interlaced", 1, None if ok else _interlacing_witness(phi2, psi, k + 1))
    count, cex = 0, None
    for y in enumerate_sample_points(phi.base, 1):
        for t in level_grid(top + 4):
            count += 1
            loc = phi2.locate(phi2.eval(y, t))
            if (loc.y, loc.t) != (y, t):
                cex = cex or f"({y}, {fmt(t)})"
    rep.add("chart_round_trip", count, cex)
    return rep


def verify_limit_chart(phi, psi, chi, seed=0, max_i=5, m=1) -> VerificationReport:
    rep = VerificationReport("limit chart", seed)
    ys = enumerate_sample_points(phi.base, m)
    q = psi.vertex

    lows = [(y, t) for y in ys for t in level_grid(3)]
    rep.add("agree_below_3", len(lows),
            _first(lows, lambda yt: chi.eval(*yt) != phi.eval(*yt) and f"({yt[0]}, {fmt(yt[1])})"))

    rep.add("vertex", len(ys), _first(ys, lambda y: chi.eval(y, INF) != q and fmt_point(chi.eval(y, INF))))

    pts = [phi.eval(y, t) for y in ys for t in level_grid(9)]
    pts = [x for x in pts if x != q]

    def unfound(x):
        loc = chi.locate(x)
        return loc.kind != "interior" or chi.eval(loc.y, loc.t) != x

    rep.add("onto", len(pts), _first(pts, unfound))

    count, cex = 0, None
    for i in range(1, max_i + 1):
        for y in ys:
            for t in (2 * i + 1, 2 * i + Rational(3, 2), 2 * i + 2, 2 * i + 3):
                count += 1
                x = chi.eval(y, t)
                if not _level_above(psi, x, 2 * i):
                    cex = cex or f"i={i} chi({y}, {fmt(t)}) = {fmt_point(x)}"
    rep.add("continuity", count, cex)

    count, cex = 0, None
    for a, b in ((1, 2), (2, 4), (3, 6), (5, 9)):
        ann = [phi.eval(y, t) for y in ys for t in level_grid(b) if t >= a]
        if any(x == q for x in ann):
            continue
        s_max = max(psi.level(x) or Rational(0) for x in ann)
        i_star = 2
        while 2 * i_star - 2 < s_max:
            i_star += 1
        for x in ann:
            count += 1
            loc = chi.locate(x)
            if loc.kind != "interior" or loc.t >= 2 * i_star - 1:
                cex = cex or f"annulus [{a},{b}] {fmt_point(x)}"
    rep.add("properness", count, cex)
    return rep


# -- generic contract ------------------------------------------------------------------

def verify_generic_homeo(h, declared_support, samples, title="homeomorphism") -> VerificationReport:
    rep = VerificationReport(title)
    samples = list(samples)
    rep.add("round_trip", len(samples),
            _first(samples, lambda x: h.inv(h(x)) != x or h(h.inv(x)) != x))
    off = [x for x in samples if not declared_support(x)]
    rep.add("support", len(off), _first(off, lambda x: h(x) != x or h.inv(x) != x))
    rep.add("deterministic", len(samples), _first(samples, lambda x: h(x) != h(x)))
    return rep


def verify_reroute(path, F, new) -> VerificationReport:
    """Endpoints kept, no point of F on the new path, pieces consecutive."""
    rep = VerificationReport("reroute")
    cex = None
    if (new.start, new.end) != (path.start, path.end):
        cex = f"{fmt_point(new.start)} .. {fmt_point(new.end)}"
    rep.add("endpoints", 2, cex)
    rep.add("avoids_F", len(F), _first(F, lambda f: new.contains(f) and fmt_point(f)))
    pairs = list(zip(new.segments, new.segments[1:]))
    rep.add("consecutive", len(pairs),
            _first(pairs, lambda st: st[0].end != st[1].start and fmt_point(st[0].end)))
    return rep
