from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conehomeo.errors import NonMonotone, NonPositiveR, OutOfDomain
from conehomeo.exact import INF, Q, fmt, level
from conehomeo.pl import (make_lemma1_lambda_mu, make_promotion_triple, pl_compose, pl_eval,
                          pl_invert, pl_make)


def test_inf_orders_above_rationals():
    assert Q(10 ** 9) < INF and not INF < Q(3)
    assert level("inf") is INF and fmt(INF) == "inf"


def test_q_refuses_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/4") == F(3, 4) and Q(F(1, 3)) == F(1, 3)


def test_make_identity_and_lambda():
    ident = pl_make([(1, 1), (2, 2)])
    assert pl_eval(ident, F(3, 2)) == F(3, 2)
    lam = pl_make([(F(3, 2), F(3, 2)), (2, 4)])
    assert pl_eval(lam, F(7, 4)) == F(11, 4)


def test_decreasing_rejected():
    with pytest.raises(NonMonotone):
        pl_make([(1, 2), (2, 1)])


def test_out_of_domain():
    with pytest.raises(OutOfDomain):
        pl_eval(pl_make([(1, 1), (2, 2)]), 3)


def test_lemma1_pair_at_half():
    lam, mu = make_lemma1_lambda_mu(F(1, 2))
    assert pl_eval(lam, 2) == 4 and pl_eval(lam, F(3, 2)) == F(3, 2)
    assert pl_eval(mu, 1) == 3 and pl_eval(mu, F(7, 2)) == F(7, 2)
    assert pl_eval(mu, F(11, 4)) == F(67, 20)
    assert pl_eval(pl_invert(lam), 4) == 2
    assert pl_eval(pl_compose(mu, lam), F(3, 2)) == F(31, 10)


def test_nonpositive_r():
    with pytest.raises(NonPositiveR):
        make_lemma1_lambda_mu(0)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_promotion_triple_anchors(k):
    r = F(1, 4)
    lam, mu, nu = make_promotion_triple(r, k)
    L1, L2, L3, L4, L5, L6 = range(2 * k - 3, 2 * k + 3)
    assert pl_eval(lam, L1) == L1 and pl_eval(lam, L3) == L1 + r and pl_eval(lam, L5) == L3
    assert pl_eval(mu, L2) == L2 and pl_eval(mu, L2 + r) == L4 and pl_eval(mu, L6) == L6
    assert pl_eval(lam, INF) is INF and pl_eval(mu, INF) is INF
    # nu undoes lambda on [L1, L1 + r]
    for t in (L1, L1 + r / 3, L1 + r):
        assert pl_eval(nu, t) == pl_eval(pl_invert(lam), t)


rats = st.fractions(min_value=F(1, 16), max_value=20, max_denominator=50)


@st.composite
def pl_maps(draw):
    n = draw(st.integers(2, 6))
    xs = sorted(set(draw(st.lists(rats, min_size=n, max_size=n, unique=True))))
    ys = sorted(set(draw(st.lists(rats, min_size=len(xs), max_size=len(xs), unique=True))))
    if len(xs) < 2 or len(xs) != len(ys):
        xs, ys = [F(1), F(2)], [F(1), F(3)]
    return pl_make(list(zip(xs, ys)))


@given(pl_maps(), st.fractions(0, 1, max_denominator=40))
def test_inverse_round_trip(f, u):
    (lo, _), (hi, _) = f.breakpoints[0], f.breakpoints[-1]
    t = lo + u * (hi - lo)
    assert pl_eval(pl_invert(f), pl_eval(f, t)) == t


@given(pl_maps(), st.fractions(0, 1, max_denominator=40))
def test_compose_with_inverse_is_identity(f, u):
    (_, lo), (_, hi) = f.breakpoints[0], f.breakpoints[-1]
    s = lo + u * (hi - lo)
    assert pl_eval(pl_compose(f, pl_invert(f)), s) == s
