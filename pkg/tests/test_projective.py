from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cartanlimits.nonarch import ONE, T, MagnitudeClass, as_hreal, parse_hreal, t_power
from cartanlimits.projective import (
    CoincidentError,
    IncidenceError,
    ProjLine,
    ProjPoint,
    angle_sq,
    apply,
    collinear,
    distance_to_line_sq,
    foot_of_perpendicular,
    join,
    meet,
    sep_sq,
    shadow_point,
)

from conftest import hreals


def P(*xs):
    return ProjPoint(*[parse_hreal(x) if isinstance(x, str) else x for x in xs])


def test_foot_on_horizontal_plane():
    x = P("1", "t", "t^2")
    line = ProjLine(0, 0, 1)
    assert foot_of_perpendicular(x, line) == P("1", "t", "0")


def test_foot_of_point_on_line_is_an_error():
    with pytest.raises(IncidenceError):
        foot_of_perpendicular(P("1", "2", "0"), ProjLine(0, 0, 1))


def test_scaling_is_projective_equality():
    assert P("2", "2*t", "0") == P("1", "t", "0")
    assert P("t", "t^2", "t^3") == P("1", "t", "t^2")
    assert hash(P("t", "t^2", "t^3")) == hash(P("1", "t", "t^2"))
    assert P("1", "t", "0") != P("1", "2*t", "0")


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)


def test_separation_orders():
    a, b = P("1", "0", "0"), P("1", "t", "0")
    assert sep_sq(a, b).valuation() == 2
    assert sep_sq(a, P("0", "1", "0")) == ONE
    assert sep_sq(a, a).is_zero()


def test_shadow_point():
    assert shadow_point(P("1", "t", "t^(1/2)")) == ProjPoint(1, 0, 0)
    # coordinates of minimal valuation survive
    assert shadow_point(P("t^-1", "2*t^-1 + 1", "5")) == ProjPoint(1, 2, 0)


def test_angle_of_nearly_parallel_lines():
    l1 = join(P("1", "0", "0"), P("0", "1", "0"))
    l2 = join(P("1", "0", "0"), P("0", "1", "t"))
    assert angle_sq(l1, l2).magnitude() is MagnitudeClass.INFINITESIMAL
    assert angle_sq(l1, l1).is_zero()


def test_meet_and_join():
    p, q = P("1", "0", "0"), P("0", "1", "0")
    l = join(p, q)
    assert l == ProjLine(0, 0, 1)
    m = ProjLine(1, -1, 0)
    assert meet(l, m) == ProjPoint(1, 1, 0)
    with pytest.raises(CoincidentError):
        join(p, P("3", "0", "0"))
    with pytest.raises(CoincidentError):
        meet(l, ProjLine(0, 0, 2))


def test_apply():
    m = ((as_hreal(1), T, as_hreal(0)), (as_hreal(0), as_hreal(1), as_hreal(0)), (as_hreal(0), as_hreal(0), as_hreal(1)))
    assert apply(m, P("0", "1", "0")) == P("t", "1", "0")


points = st.tuples(hreals(), hreals(), hreals()).filter(lambda v: not all(c.is_zero() for c in v)).map(ProjPoint)


@settings(max_examples=60, deadline=None)
@given(points, points, points)
def test_incidence_properties(p, q, r):
    assume(p != q)
    l = join(p, q)
    assert l.contains(p) and l.contains(q)
    assert collinear(p, q, r) == l.contains(r)
    if not l.contains(r):
        m = join(p, r)
        assert meet(l, m) == p
        y = foot_of_perpendicular(r, l)
        assert l.contains(y)
        # the foot is the closest point of the line
        assert distance_to_line_sq(r, l) == sep_sq(r, y)
        assert sep_sq(r, y) <= sep_sq(r, p) and sep_sq(r, y) <= sep_sq(r, q)


@settings(max_examples=60, deadline=None)
@given(points, points)
def test_separation_bounds_and_symmetry(p, q):
    s = sep_sq(p, q)
    assert 0 <= s <= 1
    assert s == sep_sq(q, p)


def test_pythagoras_surrogate_orders():
    # for a small right triangle the squared separations add to leading order
    x, y, p = P("1", "t", "t^2"), P("1", "t", "0"), P("1", "0", "0")
    lhs = sep_sq(x, p)
    rhs = sep_sq(x, y) + sep_sq(y, p)
    assert (lhs - rhs).valuation() > lhs.valuation()
    assert lhs.valuation() == 2 and sep_sq(x, y).valuation() == 4
