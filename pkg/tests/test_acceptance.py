"""One line per acceptance criterion; all comparisons are exact."""

import random
import time
from fractions import Fraction as F
from functools import lru_cache

from conehomeo.ambient import NORTH, SOUTH, AbstractCone, OpenSquare, Suspension
from conehomeo.base import BaseGraph, BasePoint, enumerate_sample_points
from conehomeo.charts import identity_chart
from conehomeo.errors import BaseTooSmall
from conehomeo.fixtures import f0, point_cone, random_offset_pair, random_planar_pair
from conehomeo.moves import cone_chart_provider, planar_chart_provider, reroute_path, strong_n_extend
from conehomeo.mutations import MUTATIONS, caught
from conehomeo.paths import PLPath
from conehomeo.promotion import ChartTower, LimitChart, alternate_lemma1
from conehomeo.swindle import build_lemma1_homeo
from conehomeo.verify import (lemma1_samples, random_base_point, verify_lemma1, verify_limit_chart,
                              verify_promotion, verify_reroute)

SEED = 20240611
N_OFFSET, N_PLANAR = 25, 10


@lru_cache(maxsize=None)
def pairs():
    rng = random.Random(SEED)
    return ([random_offset_pair(rng) for _ in range(N_OFFSET)]
            + [random_planar_pair(rng) for _ in range(N_PLANAR)])


@lru_cache(maxsize=None)
def swindle_reports():
    out = []
    for i, (phi, psi) in enumerate(pairs()):
        h = build_lemma1_homeo(phi, psi)
        pts = lemma1_samples(phi, psi, seed=i, m=1, n_random=10)
        out.append(verify_lemma1(phi, psi, h, pts, seed=i, n_outside=40))
    return out


@lru_cache(maxsize=None)
def alternate_reports():
    out = []
    for i, (phi, psi) in enumerate(pairs()):
        g = alternate_lemma1(phi, psi)
        pts = lemma1_samples(phi, psi, seed=i, m=1, max_level=9, n_random=5)
        out.append(verify_lemma1(phi, psi, g, pts, seed=i, n_outside=40, title="limit-chart swap"))
    return out


def _failures(reports, names=None):
    return [(i, c) for i, r in enumerate(reports) for c in r.checks
            if not c.passed and (names is None or c.name in names)]


def test_criterion_1_lemma1_suite(acceptance_line):
    reps = swindle_reports()
    bad = _failures(reps)
    acceptance_line(1, not bad, f"verify_lemma1 on {N_OFFSET} offset + {N_PLANAR} planar pairs, "
                                f"{sum(c.samples for r in reps for c in r.checks)} checked samples"
                                + (f"; first failure pair {bad[0][0]} {bad[0][1].name}" if bad else ""))
    assert not bad


def test_criterion_2_f0_pinned(acceptance_line):
    phi, psi = f0()
    h = build_lemma1_homeo(phi, psi)
    want = {F(7, 2): F(31, 10), F(15, 4): F(67, 20), F(11, 2): F(51, 10), F(5, 2): F(5, 2)}
    ok = all(h(phi.eval(y, t)) == psi.eval(y, s)
             for y in enumerate_sample_points(phi.base, 2) for t, s in want.items())
    ok = ok and h(phi.vertex) == psi.vertex
    acceptance_line(2, ok, "h(7/2)=31/10, h(15/4)=67/20, h(11/2)=51/10, h(5/2)=5/2, h(p)=p")
    assert ok


def test_criterion_3_overlaps(acceptance_line):
    reps = swindle_reports()
    bad = _failures(reps, {"overlap_agreement"})
    n = sum(r.check("overlap_agreement").samples for r in reps)
    acceptance_line(3, not bad, f"overlap identities for n <= 6 at {n} boundary samples on {len(reps)} pairs")
    assert not bad


def test_criterion_4_promotion_and_limit(acceptance_line):
    bad = []
    for i, (phi, psi) in enumerate(pairs()):
        tower = ChartTower(phi, psi)
        for k in range(2, 6):
            rep = verify_promotion(tower[k], psi, k, tower[k + 1], seed=i, m=1)
            bad += [(i, f"k={k} {c.name}") for c in rep.failures]
        rep = verify_limit_chart(phi, psi, LimitChart(tower), seed=i, max_i=5)
        bad += [(i, c.name) for c in rep.failures]
    bad += [(i, c.name) for i, c in _failures(alternate_reports())]
    acceptance_line(4, not bad, f"promote k=2..5, limit chart and alternate swap on {len(pairs())} pairs"
                                + (f"; first failure {bad[0]}" if bad else ""))
    assert not bad


def test_criterion_5_cross_construction(acceptance_line):
    names = {"vertex", "support", "round_trip", "vertex_neighborhoods"}
    bad = _failures(swindle_reports(), names) + _failures(alternate_reports(), names)
    outside = sum(r.check("support").samples for r in swindle_reports() + alternate_reports())
    acceptance_line(5, not bad, f"both constructions meet the contract; {outside} support samples incl. "
                                "points outside U and V left fixed")
    assert not bad


def _square_point(rng):
    return (F(rng.randint(-63, 63), 64), F(rng.randint(-63, 63), 64))


def test_criterion_6_strong_n(acceptance_line):
    rng = random.Random(SEED + 6)
    sq = OpenSquare(1)
    worst, bad = 0.0, []
    for n in (1, 2, 3):
        for _ in range(25):
            pts = []
            while len(pts) < 2 * n:
                p = _square_point(rng)
                if p not in pts:
                    pts.append(p)
            src, tgt = pts[:n], pts[n:]
            t0 = time.perf_counter()
            H = strong_n_extend(sq, src, tgt)
            worst = max(worst, time.perf_counter() - t0)
            if [H(p) for p in src] != tgt:
                bad.append((n, src))
            # each later stage fixes every point already placed
            for j, g in enumerate(H.stages):
                if any(g(t) != t for t in tgt[:j]):
                    bad.append((n, j))
    ok = not bad and worst < 5
    acceptance_line(6, ok, f"75 instances n=1,2,3 on the open square, slowest {worst:.2f}s")
    assert ok


def test_criterion_7_suspension(acceptance_line):
    rng = random.Random(SEED + 7)
    S = Suspension(BaseGraph.cycle(4))
    bad = []
    for _ in range(10):
        a = b = None
        while a == b:
            a, b = (S.point(random_base_point(S.base, rng), F(rng.randint(-40, 40), 8)) for _ in range(2))
        H = strong_n_extend(S, [a, b], [NORTH, SOUTH])
        if (H(a), H(b)) != (NORTH, SOUTH):
            bad.append((a, b))
    acceptance_line(7, not bad, "10 random pairs on Suspension(C4) sent to the poles")
    assert not bad


def _planar_instance(rng):
    pts = [_square_point(rng) for _ in range(rng.randint(2, 4))]
    pts = [p for i, p in enumerate(pts) if i == 0 or p != pts[i - 1]]
    if len(pts) < 2:
        pts.append((F(0), F(1, 2)) if pts[0] != (F(0), F(1, 2)) else (F(0), F(0)))
    path = PLPath.through(pts)
    F_ = []
    for _ in range(rng.randint(1, 3)):
        f = path.point(F(rng.randint(1, 63), 64))
        if f not in F_ and f not in (path.start, path.end):
            F_.append(f)
    return path, F_, planar_chart_provider(OpenSquare(1)), None


def _cone_instance(rng):
    n = rng.randint(3, 5)
    phi = identity_chart(AbstractCone(BaseGraph.cycle(n)))
    a, b = rng.sample(range(n), 2)
    path = PLPath.through([phi.eval(BasePoint.at(a), F(rng.randint(1, 7), 8)), phi.vertex,
                           phi.eval(BasePoint.at(b), F(rng.randint(1, 7), 8))])
    return path, [phi.vertex], cone_chart_provider(phi.ambient), phi.ambient


def test_criterion_8_reroute(acceptance_line):
    rng = random.Random(SEED + 8)
    bad = []
    for k in range(20):
        path, F_, provider, amb = (_cone_instance if k % 4 == 3 else _planar_instance)(rng)
        rep = verify_reroute(path, F_, reroute_path(path, F_, provider, amb))
        if not rep.passed:
            bad.append((k, rep.failures[0].counterexample))
    raised = 0
    for n in (1, 2):
        phi = point_cone(n)
        path = PLPath.through([phi.eval(BasePoint.at(0), F(1, 2)), phi.vertex,
                               phi.eval(BasePoint.at(n - 1), F(1, 3))])
        try:
            reroute_path(path, [phi.vertex], cone_chart_provider(phi.ambient), phi.ambient)
        except BaseTooSmall:
            raised += 1
    ok = not bad and raised == 2
    acceptance_line(8, ok, f"20 reroutes avoid F with endpoints kept; BaseTooSmall raised on {raised}/2 "
                           "degenerate bases")
    assert ok


def test_criterion_9_mutations(acceptance_line):
    missed = [m.name for m in MUTATIONS if not caught(m.run()[1])]
    ok = len(MUTATIONS) >= 8 and not missed
    acceptance_line(9, ok, f"{len(MUTATIONS) - len(missed)}/{len(MUTATIONS)} mutations caught by their target"
                           " check with a counterexample")
    assert ok
