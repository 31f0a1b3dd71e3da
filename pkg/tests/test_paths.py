from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conehomeo.ambient import ConePoint
from conehomeo.base import BasePoint
from conehomeo.fixtures import f0, f2
from conehomeo.paths import ConeSegment, LineSegment, PLPath

A, B = BasePoint.at(0), BasePoint.at(1)


def test_radial_segment_clip():
    phi, _ = f0()
    seg = ConeSegment(ConePoint(A, F(1, 2)), ConePoint(A, 4))
    u0, u1 = seg.clip(phi, 1)
    assert seg.point(u0) == ConePoint(A, 1) and u1 == 1


def test_segment_into_vertex():
    phi, _ = f0()
    seg = ConeSegment(ConePoint(A, 1), phi.vertex)
    assert seg.point(1) == phi.vertex and seg.contains(phi.vertex)
    assert seg.point(F(1, 2)) == ConePoint(A, 2)


def test_edge_segment_level_is_linear():
    phi, _ = f0()
    seg = ConeSegment(ConePoint(A, F(1, 2)), ConePoint(B, F(3, 2)))
    u0, u1 = seg.clip(phi, 1)
    assert (u0, u1) == (F(1, 2), 1)
    assert seg.point(u0).height == 1


def test_non_adjacent_cone_points():
    with pytest.raises(ValueError):
        ConeSegment(ConePoint(A, 1), ConePoint(BasePoint.on((1, 2), F(1, 2)), 1))


def test_line_clip_against_planar_chart():
    phi, _ = f2()
    seg = LineSegment((F(-4), F(0)), (F(4), F(0)))
    u0, u1 = seg.clip(phi, 1)
    assert seg.point(u0) == (F(-2), F(0)) and seg.point(u1) == (F(2), F(0))


def test_path_replace_keeps_ends():
    path = PLPath.through([(F(0), F(0)), (F(1), F(0)), (F(1), F(1))])
    new = path.replace(0, F(1, 2), 1, F(1, 2), [LineSegment((F(1, 2), F(0)), (F(1, 2), F(1, 2))),
                                                   LineSegment((F(1, 2), F(1, 2)), (F(1), F(1, 2)))])
    assert (new.start, new.end) == (path.start, path.end)
    assert not new.contains((F(1), F(0)))


coord = st.fractions(-3, 3, max_denominator=12)


@given(st.lists(st.tuples(coord, coord), min_size=2, max_size=5, unique=True),
       st.fractions(0, 1, max_denominator=30))
def test_path_points_are_on_the_path(pts, u):
    path = PLPath.through(pts)
    assert path.contains(path.point(u))
    assert path.point(0) == path.start and path.point(1) == path.end
