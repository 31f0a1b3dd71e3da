"""Named chart pairs and seeded generators of random 2-interlaced pairs."""

from __future__ import annotations

import random

from .ambient import AbstractCone, OpenSquare
from .base import BaseGraph, PLBaseFunction
from .charts import PlanarConvexChart, identity_chart, make_offset_chart, recenter_chart
from .errors import TargetTooShallow
from .exact import Rational

F2_Q = (Rational(1, 8), Rational(0))


def f0():
    """phi = psi = the identity chart of the cone over a 3-cycle."""
    phi = identity_chart(AbstractCone(BaseGraph.cycle(3)))
    return phi, phi


def f1():
    """Offsets 1/2, -1/2, 0 over a discrete 3-point base."""
    phi = identity_chart(AbstractCone(BaseGraph.discrete(3)))
    d = PLBaseFunction(phi.base, [Rational(1, 2), Rational(-1, 2), 0])
    return phi, make_offset_chart(phi, d)


def f2():
    """Planar charts of half-width 2/t over a 4-cycle, centred at 0 and at (1/8, 0)."""
    phi = PlanarConvexChart(OpenSquare(), BaseGraph.cycle(4), (0, 0), A=2, B=0)
    return phi, phi.with_center(F2_Q)


def point_cone(n: int):
    """Identity chart over an n-point discrete base; n = 1, 2 are the degenerate bases."""
    return identity_chart(AbstractCone(BaseGraph.discrete(n)))


FIXTURES = {"F0": f0, "F1": f1, "F2": f2}


def random_base(rng: random.Random, max_vertices: int = 6, max_edges: int = 8) -> BaseGraph:
    n = rng.randint(1, max_vertices)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    return BaseGraph(n, pairs[:rng.randint(0, min(max_edges, len(pairs)))])


def random_offset(rng: random.Random, Y: BaseGraph, den: int = 8) -> PLBaseFunction:
    """Vertex values k/den with |k/den| <= 1/2."""
    return PLBaseFunction(Y, [Rational(rng.randint(-den // 2, den // 2), den) for _ in range(Y.n)])


def random_offset_pair(rng: random.Random, max_vertices: int = 6, max_edges: int = 8):
    phi = identity_chart(AbstractCone(random_base(rng, max_vertices, max_edges)))
    return phi, make_offset_chart(phi, random_offset(rng, phi.base))


_PLANAR_BASES = (BaseGraph.cycle(3), BaseGraph.cycle(4), BaseGraph.cycle(5), BaseGraph.cycle(6))


def random_planar_pair(rng: random.Random, den: int = 64):
    """phi centred at 0 and a recentred psi at a random point deep inside it."""
    Y = rng.choice(_PLANAR_BASES)
    phi = PlanarConvexChart(OpenSquare(), Y, (0, 0), A=2, B=0)
    while True:
        q = (Rational(rng.randint(-den // 8, den // 8), den), Rational(rng.randint(-den // 8, den // 8), den))
        if q == (0, 0) or not phi.level(q) > 4:
            continue
        # too shallow for this polygon: slide q radially toward the center
        while True:
            try:
                return phi, recenter_chart(phi, q)
            except TargetTooShallow:
                q = (q[0] / 2, q[1] / 2)
