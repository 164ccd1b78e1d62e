from fractions import Fraction

import pytest

from hyperact.errors import NotInSubspace, ZeroElement
from hyperact.exactlin import I, Scalar, vec
from hyperact.limits import (
    TCurve,
    curve_of,
    factor_binary_quadratic,
    gaussian_sqrt,
    generic_limit,
    limit_probe,
    linear_root,
    one_param_limit,
    projective_limit,
)
from hyperact.models import counterexample_pair, cubic_pair, pn_square_zero, quadric_pair
from hyperact.poly import ProjectivePoint, parse_poly

CUBIC = cubic_pair()
Q2 = quadric_pair(2)
CE = counterexample_pair()
ONE_PT = vec(1, 0, 0, 0)


def pt(*c):
    return ProjectivePoint(tuple(c))


def test_curve_examples():
    assert curve_of(CUBIC, vec(0, 0, 0, 0), vec(1, 2, 0, 0)).degree == 0
    c = curve_of(CUBIC, vec(0, 1, 0, 0))
    assert c.coords == ((1,), (0, 1), (0, 0, Fraction(1, 2)), (0, 0, 0, Fraction(1, 6)))
    c = curve_of(Q2, vec(0, 1, 1, 0))
    assert c.coords == ((1,), (0, 1), (0, 1), (0, 0, 1))
    assert c.at(0) == ONE_PT


def test_curve_errors():
    with pytest.raises(NotInSubspace):
        curve_of(CUBIC, vec(0, 0, 0, 1))
    with pytest.raises(ZeroElement):
        curve_of(CUBIC, vec(0, 1, 0, 0), vec(0, 0, 0, 0))
    with pytest.raises(ZeroElement):
        TCurve(((), ()))


def test_projective_limit_examples():
    a = vec(1, 2, 0, 0)
    assert projective_limit(curve_of(CUBIC, vec(0, 0, 0, 0), a)) == ProjectivePoint(a)
    assert projective_limit(curve_of(CUBIC, vec(0, 1, 0, 0))) == pt(0, 0, 0, 1)
    assert projective_limit(curve_of(CUBIC, vec(0, 0, 1, 0))) == pt(0, 0, 1, 0)


def test_one_param_limit_examples():
    assert one_param_limit(Q2, vec(0, 1, 1, 0)) == pt(0, 0, 0, 1)
    assert one_param_limit(Q2, vec(0, 1, I, 0)) == pt(0, 1, I, 0)
    with pytest.raises(ZeroElement):
        one_param_limit(Q2, vec(0, 0, 0, 0))


def test_pn_mode_allows_all_of_m():
    P = pn_square_zero(2)
    assert one_param_limit(P, vec(0, 1, 1)) == pt(0, 1, 1)


def test_generic_limit_cubic():
    tree = generic_limit(CUBIC)
    assert tree.fully_resolved()
    assert tree.point == pt(0, 0, 0, 1) and tree.k == 3
    (child,) = tree.children
    assert child.conditions == ["s1 = 0"]
    assert child.point == pt(0, 0, 1, 0)


def test_generic_limit_counterexample():
    tree = generic_limit(CE)
    assert tree.fully_resolved()
    assert [n.point for n in tree.walk()] == [pt(0, 0, 0, 1), pt(0, 0, 0, 1)]
    assert tree.children[0].conditions == ["s1 = 0"]


def test_generic_limit_quadric_unresolved():
    tree = generic_limit(Q2)
    assert tree.point == pt(0, 0, 0, 1)
    assert not tree.fully_resolved()
    assert tree.unresolved == ["s1^2 + s2^2 = 0"]


def test_generic_limit_quadric_factored():
    tree = generic_limit(Q2, quadratic_factoring=True)
    assert tree.fully_resolved()
    assert {str(c.point) for c in tree.children} == {"[0:1:i:0]", "[0:1:-i:0]"}


def test_probe_examples():
    for t, p in zip((10, 100), limit_probe(CUBIC, vec(0, 1, 0, 0), (10, 100))):
        t = Fraction(t)
        assert p == pt(6 / t ** 3, 6 / t ** 2, 3 / t, 1)
    # x^2 kills x^3: constant curve
    probes = limit_probe(CUBIC, vec(0, 0, 1, 0), (1, 2, 3), a=vec(0, 0, 0, 1))
    assert len(set(probes)) == 1
    (p,) = limit_probe(Q2, vec(0, 1, I, 0), (1000,))
    assert p == pt(Fraction(1, 1000), 1, I, 0)


def test_probe_rejects_zero():
    with pytest.raises(ZeroElement):
        limit_probe(CUBIC, vec(0, 0, 0, 0), (1,))


def test_square_roots():
    assert gaussian_sqrt(Scalar(-4)) in (Scalar(0, 2), Scalar(0, -2))
    r = gaussian_sqrt(Scalar(0, 2))
    assert r * r == Scalar(0, 2)
    assert gaussian_sqrt(Scalar(2)) is None


def test_linear_root_and_factoring():
    V = ("s1", "s2")
    assert linear_root(parse_poly("(s1 - 2*s2)^3", V)) is not None
    assert linear_root(parse_poly("s1^2 + s2^2", V)) is None
    factors = factor_binary_quadratic(parse_poly("s1^2 + s2^2", V))
    assert factors is not None and len(factors) == 2
    assert factor_binary_quadratic(parse_poly("s1^2 - 2*s2^2", V)) is None
