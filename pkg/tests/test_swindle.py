from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conehomeo.ambient import AbstractCone
from conehomeo.base import BaseGraph, BasePoint, PLBaseFunction
from conehomeo.charts import RadialOffsetChart, identity_chart
from conehomeo.errors import NotInterlaced, ShiftOutOfRange
from conehomeo.fixtures import f0, f1, f2
from conehomeo.homeo import homeo_inv_eval
from conehomeo.swindle import build_alpha, build_lemma1_homeo, classify_region, compute_r, shift

Y0 = BasePoint.at(0)


def test_r_selection():
    assert compute_r(*f0()) == F(1, 2)
    assert compute_r(*f1()) == F(1, 4)


def test_r_rejects_non_interlaced():
    phi = identity_chart(AbstractCone(BaseGraph.discrete(3)))
    far = RadialOffsetChart(phi.ambient, offset=PLBaseFunction.constant(phi.base, 3))
    with pytest.raises(NotInterlaced):
        compute_r(phi, far)


def test_shift():
    phi, _ = f0()
    assert shift(phi, phi.eval(Y0, 1)) == phi.eval(Y0, 3)
    assert shift(phi, phi.vertex) == phi.vertex
    x = shift(phi, phi.eval(Y0, F(7, 2)), -1)
    with pytest.raises(ShiftOutOfRange):
        shift(phi, x, -1)


def test_classify_f0():
    phi, psi = f0()
    lab = classify_region(phi, psi, phi.eval(Y0, F(5, 2)))
    assert lab.phi == {"B1"} and lab.psi == {"C1"}
    assert classify_region(phi, psi, phi.eval(Y0, 3)).phi == {"B1", "A1"}
    assert classify_region(phi, psi, phi.vertex).phi == {"P"}


def test_alpha_f0():
    phi, psi = f0()
    alpha, alpha_inv = build_alpha(phi, psi, F(1, 2))
    x = phi.eval(Y0, F(3, 2))
    assert alpha(x) == phi.eval(Y0, F(31, 10))
    assert alpha_inv(alpha(x)) == x


def test_f0_pinned_values():
    phi, psi = f0()
    h = build_lemma1_homeo(phi, psi)
    for t, want in [(F(5, 2), F(5, 2)), (F(7, 2), F(31, 10)), (F(15, 4), F(67, 20)), (F(11, 2), F(51, 10))]:
        assert h(phi.eval(Y0, t)) == psi.eval(Y0, want)
    assert h(phi.vertex) == psi.vertex
    assert homeo_inv_eval(h, phi.eval(Y0, F(31, 10))) == phi.eval(Y0, F(7, 2))


def test_outside_fixed():
    phi, psi = f1()
    h = build_lemma1_homeo(phi, psi)
    x = phi.ambient.point(Y0, -3)
    assert h(x) == x and h.inv(x) == x


def test_planar_swaps_vertices():
    phi, psi = f2()
    h = build_lemma1_homeo(phi, psi)
    assert h(phi.vertex) == psi.vertex and h.inv(psi.vertex) == phi.vertex


coords = st.fractions(-2, 2, max_denominator=64)


@settings(max_examples=150, deadline=None)
@given(coords, coords)
def test_planar_round_trip(a, b):
    phi, psi = f2()
    h = build_lemma1_homeo(phi, psi)
    x = (a, b)
    assert h.inv(h(x)) == x and h(h.inv(x)) == x


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2), st.fractions(-3, 20, max_denominator=16))
def test_offset_round_trip(v, s):
    phi, psi = f1()
    h = build_lemma1_homeo(phi, psi)
    x = phi.ambient.point(BasePoint.at(v), s)
    assert h.inv(h(x)) == x
