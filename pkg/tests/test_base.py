from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conehomeo.base import BaseGraph, BaseIso, BasePoint, base_iso_apply, enumerate_sample_points
from conehomeo.errors import InvalidGraph, NonPL, WrongGraph
from conehomeo.pl import pl_make

C4 = BaseGraph.cycle(4)


def test_graph_validation():
    with pytest.raises(InvalidGraph):
        BaseGraph(3, [(0, 0)])
    with pytest.raises(InvalidGraph):
        BaseGraph(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidGraph):
        BaseGraph(0)


def test_cycle_and_components():
    assert C4.is_cycle() and not BaseGraph(4, [(0, 1), (1, 2), (2, 3)]).is_cycle()
    assert len(BaseGraph(4, [(0, 1)]).components()) == 3


def test_cardinality_classes():
    assert [BaseGraph.discrete(n).cardinality_class() for n in (1, 2, 3)] == ["1", "2", ">=3"]
    assert BaseGraph(2, [(0, 1)]).cardinality_class() == ">=3"


def test_sample_counts():
    assert enumerate_sample_points(BaseGraph.discrete(3), 5) == [BasePoint.at(i) for i in range(3)]
    assert len(enumerate_sample_points(C4, 1)) == 8
    pts = enumerate_sample_points(C4, 3)
    assert len(pts) == 16
    assert {p.param for p in pts if p.edge is not None} == {F(1, 4), F(1, 2), F(3, 4)}


def test_edge_point_normalization():
    assert BasePoint.on((1, 0), F(1, 4)) == BasePoint.on((0, 1), F(3, 4))
    assert BasePoint.on((0, 1), 0) == BasePoint.at(0)


def test_quarter_rotation_has_order_four():
    rot = BaseIso(C4, C4, [1, 2, 3, 0])
    y = BasePoint.on((0, 1), F(1, 3))
    z = y
    for _ in range(4):
        z = base_iso_apply(rot, z)
    assert z == y and base_iso_apply(rot, y) != y


def test_identity_iso():
    ident = BaseIso.identity(C4)
    for y in enumerate_sample_points(C4, 2):
        assert base_iso_apply(ident, y) == y


def test_non_pl_reparameterization_rejected():
    with pytest.raises(NonPL):
        BaseIso(C4, C4, range(4), {(0, 1): lambda t: t * t})


def test_non_bijection_rejected():
    with pytest.raises(WrongGraph):
        BaseIso(C4, C4, [0, 0, 1, 2])


reparam = pl_make([(0, 0), (F(1, 3), F(1, 2)), (1, 1)])


@given(st.integers(0, 3), st.integers(0, 3), st.fractions(F(1, 64), F(63, 64), max_denominator=64),
       st.booleans())
def test_iso_inverse_round_trip(shift, e, s, flip):
    vmap = [(shift + (-i if flip else i)) % 4 for i in range(4)]
    iota = BaseIso(C4, C4, vmap, {(0, 1): reparam})
    z = BasePoint.on(C4.edges[e], s)
    assert base_iso_apply(iota.inverse(), base_iso_apply(iota, z)) == z
