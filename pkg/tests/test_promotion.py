from fractions import Fraction as F

import pytest

from conehomeo.base import BasePoint, enumerate_sample_points
from conehomeo.charts import is_k_interlaced
from conehomeo.errors import NotKInterlaced, TowerBoundExceeded
from conehomeo.exact import INF
from conehomeo.fixtures import F2_Q, f0, f1, f2
from conehomeo.promotion import (ChartTower, LimitChart, alternate_lemma1, promote, tower_index,
                                 vertex_swap_chart)
from conehomeo.swindle import build_lemma1_homeo
from conehomeo.verify import verify_limit_chart, verify_promotion


@pytest.mark.parametrize("fixture", [f0, f1, f2])
def test_promote_k2(fixture):
    phi, psi = fixture()
    phi3 = promote(phi, psi, 2)
    assert is_k_interlaced(phi3, psi, 3)
    assert verify_promotion(phi, psi, 2, phi3, m=1).passed


def test_promote_needs_interlacing():
    phi, psi = f2()
    with pytest.raises(NotKInterlaced):
        promote(phi, psi, 3)


def test_tower_levels_up_to_six():
    phi, psi = f2()
    tower = ChartTower(phi, psi)
    for k in range(2, 6):
        assert is_k_interlaced(tower[k + 1], psi, k + 1)


def test_tower_index():
    assert [tower_index(t) for t in (F(1, 2), 3, F(7, 2), 10)] == [2, 3, 3, 6]


def test_limit_materializes_lazily():
    phi, psi = f0()
    chi = vertex_swap_chart(phi, psi)
    assert chi.tower.materialized == 2
    chi.eval(BasePoint.at(0), 10)
    assert chi.tower.materialized == 6


def test_tower_bound():
    phi, psi = f0()
    with pytest.raises(TowerBoundExceeded):
        ChartTower(phi, psi, bound=4)[5]


@pytest.mark.parametrize("fixture", [f0, f2])
def test_limit_chart_checks(fixture):
    phi, psi = fixture()
    chi = LimitChart(ChartTower(phi, psi))
    assert verify_limit_chart(phi, psi, chi).passed


def test_f2_limit_vertex():
    phi, psi = f2()
    chi = vertex_swap_chart(phi, psi)
    assert chi.eval(BasePoint.at(1), INF) == F2_Q


def test_two_constructions_share_the_contract():
    phi, psi = f0()
    h, g = build_lemma1_homeo(phi, psi), alternate_lemma1(phi, psi)
    for y in enumerate_sample_points(phi.base, 2):
        for t in (F(1, 2), 1, F(3, 2), 2):
            x = phi.eval(y, t)
            assert h(x) == x == g(x)
    assert h(phi.vertex) == g(phi.vertex) == psi.vertex
