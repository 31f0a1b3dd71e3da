from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conehomeo.ambient import AbstractCone, OpenSquare
from conehomeo.base import BaseGraph, BasePoint, PLBaseFunction, enumerate_sample_points
from conehomeo.charts import (OUTSIDE, VERTEX, PlanarConvexChart, identity_chart, is_k_interlaced,
                              make_offset_chart, recenter_chart, region_contains)
from conehomeo.errors import OffsetTooLarge, TargetTooShallow
from conehomeo.exact import INF, Q
from conehomeo.fixtures import F2_Q, f0, f1, f2

C4 = BaseGraph.cycle(4)


def test_identity_chart():
    phi, _ = f0()
    y = BasePoint.on((0, 1), F(1, 3))
    assert phi.eval(y, INF) == phi.vertex
    x = phi.eval(y, F(7, 2))
    assert (x.base, x.height) == (y, F(7, 2))
    assert phi.locate(phi.vertex) == VERTEX


def test_planar_corner_at_level_two():
    phi, _ = f2()
    assert (1, 1) in {phi.eval(BasePoint.at(v), 2) for v in range(4)}


def test_bounded_chart_outside():
    phi = PlanarConvexChart(OpenSquare(1), C4, (0, 0), A=1, B=2)
    assert phi.locate((F(9, 10), F(0))) == OUTSIDE
    assert phi.locate((F(1, 10), F(0))).kind == "interior"


def test_region_contains_boundaries():
    phi, _ = f0()
    x = phi.eval(BasePoint.at(0), 2)
    assert not region_contains(phi, 2, "open", x) and region_contains(phi, 2, "closed", x)
    assert region_contains(phi, 100, "open", phi.vertex)
    _, psi = f2()
    assert psi.level((F(9, 8), F(0))) == 2
    assert region_contains(psi, 2, "closed", (F(9, 8), F(0)))


@pytest.mark.parametrize("fixture", [f0, f1, f2])
def test_fixtures_are_2_interlaced(fixture):
    assert is_k_interlaced(*fixture(), 2)


def test_offset_charts():
    phi = identity_chart(AbstractCone(BaseGraph.discrete(3)))
    assert make_offset_chart(phi, PLBaseFunction.constant(phi.base, 0)).offset == phi.offset
    assert is_k_interlaced(phi, make_offset_chart(phi, PLBaseFunction.constant(phi.base, F(1, 2))), 2)
    with pytest.raises(OffsetTooLarge):
        make_offset_chart(phi, PLBaseFunction.constant(phi.base, F(3, 2)))


def test_recenter():
    phi, psi = f2()
    assert recenter_chart(phi, phi.vertex).vertex == phi.vertex
    rc = recenter_chart(phi, F2_Q)
    assert rc.vertex == F2_Q and is_k_interlaced(phi, rc, 2)
    for y in enumerate_sample_points(C4, 1):
        assert rc.eval(y, 3) == psi.eval(y, 3)
    with pytest.raises(TargetTooShallow):
        recenter_chart(phi, phi.eval(BasePoint.at(0), 2))


levels = st.fractions(F(1, 32), 40, max_denominator=32)
params = st.fractions(F(1, 16), F(15, 16), max_denominator=16)


@settings(max_examples=60)
@given(st.integers(0, 3), params, levels)
def test_planar_round_trip(e, s, t):
    _, psi = f2()
    y = BasePoint.on(C4.edges[e], s)
    loc = psi.locate(psi.eval(y, t))
    assert (loc.y, loc.t) == (y, t)


@settings(max_examples=60)
@given(st.integers(0, 2), levels)
def test_offset_round_trip(v, t):
    _, psi = f1()
    y = BasePoint.at(v)
    loc = psi.locate(psi.eval(y, Q(t)))
    assert (loc.y, loc.t) == (y, t)
