from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conehomeo.ambient import NORTH, SOUTH, OpenSquare, Suspension
from conehomeo.base import BaseGraph, BasePoint
from conehomeo.errors import BaseTooSmall, ChainBroken, DuplicatePoint, EndpointInF, UnsupportedAmbient
from conehomeo.fixtures import F2_Q, f0, f2, point_cone
from conehomeo.moves import (ChartChain, chain_move, cone_chart_provider, move_in_cone, planar_chain,
                             planar_chart, radial_slide, reroute_path, strong_n_extend)
from conehomeo.paths import PLPath
from conehomeo.verify import verify_generic_homeo

A, B, C = (BasePoint.at(v) for v in range(3))
SQ = OpenSquare(2)


def test_radial_slide_confined_to_one_ray():
    phi, _ = f0()
    g = radial_slide(phi, phi.eval(A, 1), 5)
    assert g(phi.eval(A, 1)) == phi.eval(A, 5)
    for y in (B, C):
        for t in (F(1, 2), 1, 3, 7):
            assert g(phi.eval(y, t)) == phi.eval(y, t)
    assert radial_slide(phi, phi.eval(A, 2), 2)(phi.eval(A, 2)) == phi.eval(A, 2)


def test_radial_slide_contract():
    phi, _ = f0()
    g = radial_slide(phi, phi.eval(A, 1), 5)
    pts = [phi.eval(BasePoint.on((0, 1), F(k, 8)), F(t, 4)) for k in range(8) for t in range(1, 30)]
    assert verify_generic_homeo(g, g.support, pts).passed


def test_move_in_cone():
    phi, _ = f0()
    x = phi.eval(A, 1)
    assert move_in_cone(phi, x, x)(x) == x
    assert move_in_cone(phi, x, phi.eval(A, 5))(x) == phi.eval(A, 5)
    p2, _ = f2()
    g = move_in_cone(p2, F2_Q, p2.vertex)
    assert g(F2_Q) == p2.vertex


def test_reroute_f0():
    phi, _ = f0()
    path = PLPath.through([phi.eval(A, F(1, 2)), phi.vertex, phi.eval(B, F(1, 2))])
    assert reroute_path(path, [], cone_chart_provider(phi.ambient)) is path
    new = reroute_path(path, [phi.vertex], cone_chart_provider(phi.ambient), phi.ambient)
    assert new.avoids([phi.vertex]) and (new.start, new.end) == (path.start, path.end)
    assert phi.eval(C, 2) in new.waypoints


@pytest.mark.parametrize("n", [1, 2])
def test_reroute_small_bases(n):
    phi = point_cone(n)
    pts = [phi.eval(BasePoint.at(0), F(1, 2)), phi.vertex, phi.eval(BasePoint.at(n - 1), F(1, 3))]
    with pytest.raises(BaseTooSmall):
        reroute_path(PLPath.through(pts), [phi.vertex], cone_chart_provider(phi.ambient), phi.ambient)


def test_reroute_endpoint_in_f():
    a, b = (F(-1), F(0)), (F(1), F(0))
    with pytest.raises(EndpointInF):
        reroute_path(PLPath.through([a, b]), [a], None)


def test_planar_chain_move():
    x, y, f = (F(-1), F(0)), (F(1), F(0)), (F(0), F(1, 2))
    path = PLPath.through([x, y])
    chain = planar_chain(SQ, path, [f])
    h = chain_move(SQ, x, y, [f], chain)
    assert h(x) == y and h(f) == f and h.inv(y) == x


def test_chain_with_bad_witness():
    c = planar_chart(SQ, (F(0), F(0)), F(1, 4))
    with pytest.raises(ChainBroken):
        ChartChain([c], [(F(0), F(0)), (F(1), F(0))]).check()


def test_strong_n_identity_and_errors():
    x = (F(1, 3), F(1, 5))
    assert strong_n_extend(SQ, [x], [x])(x) == x
    with pytest.raises(DuplicatePoint):
        strong_n_extend(SQ, [x, x], [x, (F(0), F(0))])
    with pytest.raises(UnsupportedAmbient):
        strong_n_extend(f0()[0].ambient, [], [])


def test_suspension_to_poles():
    S = Suspension(BaseGraph.cycle(4))
    a, b = S.point(A, F(1, 3)), S.point(BasePoint.on((1, 2), F(1, 2)), F(-5, 4))
    H = strong_n_extend(S, [a, b], [NORTH, SOUTH])
    assert H(a) == NORTH and H(b) == SOUTH


coord = st.integers(-60, 60).map(lambda k: F(k, 64))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=6, max_size=6, unique=True))
def test_strong_three(pts):
    src, tgt = pts[:3], pts[3:]
    H = strong_n_extend(OpenSquare(1), src, tgt)
    assert [H(p) for p in src] == tgt
    assert [H.inv(q) for q in tgt] == src
