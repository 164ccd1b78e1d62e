from fractions import Fraction

import pytest
from hypothesis import given

from hyperact.algebra import Element, exp
from hyperact.errors import DegeneratePairUnsupported, DegreeOneHyperplane, NotInSubspace
from hyperact.exactlin import I, ONE, Scalar, Subspace, unit_vec, vec
from hyperact.geometry import (
    act,
    action_formula,
    complement_test,
    contains_point,
    equation,
    orbit_dimension,
    orbit_table,
    same_orbit,
)
from hyperact.hpair import HPair
from hyperact.models import counterexample_pair, cubic_pair, quadric_pair
from hyperact.poly import MultiPoly, ProjectivePoint, parse_poly

from conftest import HYPERSURFACE_PAIRS, u_vectors

CUBIC = cubic_pair()
Q2 = quadric_pair(2)


def test_equation_examples():
    assert str(equation(CUBIC)) == "3*z0^2*z3 - 3*z0*z1*z2 + z1^3"
    assert str(equation(Q2)) == "2*z0*z3 - z1^2 - z2^2"
    assert str(equation(counterexample_pair())) == "2*z0*z2 - z1^2"


def test_equation_rejects_degree_one():
    raw = HPair(CUBIC.algebra, Subspace.span([unit_vec(4, 2), unit_vec(4, 3)], 4),
                (unit_vec(4, 2), unit_vec(4, 3)))
    with pytest.raises(DegreeOneHyperplane):
        equation(raw)


def test_contains_point_examples():
    F = equation(CUBIC)
    assert contains_point(F, ProjectivePoint((1, 0, 0, 0)))
    assert not contains_point(F, ProjectivePoint((1, 1, 0, 0)))
    assert contains_point(equation(Q2), ProjectivePoint((0, 1, I, 0)))


def test_complement_examples():
    assert complement_test(CUBIC, vec(0, 0, 1, 0))
    assert not complement_test(CUBIC, vec(0, 1, 0, 0))
    assert complement_test(Q2, vec(0, 1, I, 0))


def test_act_examples():
    a = vec(1, 2, 3, 4)
    assert act(CUBIC, vec(0, 0, 0, 0), a).coords == a
    assert act(CUBIC, vec(0, 1, 0, 0), vec(1, 0, 0, 0)).coords == vec(1, 1, Fraction(1, 2), Fraction(1, 6))
    with pytest.raises(NotInSubspace):
        act(CUBIC, vec(0, 0, 0, 1), a)


def test_action_formula_cubic():
    V = action_formula(CUBIC).variables
    expected = [
        "z0",
        "z1 + s1*z0",
        "z2 + s1*z1 + (s2 + 1/2*s1^2)*z0",
        "z3 + s1*z2 + (s2 + 1/2*s1^2)*z1 + (s1*s2 + 1/6*s1^3)*z0",
    ]
    got = action_formula(CUBIC).coordinate_polys
    assert list(got) == [parse_poly(e, V) for e in expected]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_action_formula_quadric(n):
    f = action_formula(quadric_pair(n))
    V = f.variables
    s = " + ".join(f"s{i}*z{i}" for i in range(1, n + 1))
    sq = " + ".join(f"s{i}^2" for i in range(1, n + 1))
    assert f.coordinate_polys[-1] == parse_poly(f"z{n + 1} + {s} + 1/2*({sq})*z0", V)
    for i in range(1, n + 1):
        assert f.coordinate_polys[i] == parse_poly(f"z{i} + s{i}*z0", V)


@pytest.mark.parametrize("name", sorted(HYPERSURFACE_PAIRS))
def test_action_formula_identity_at_zero(name):
    p = HYPERSURFACE_PAIRS[name]
    f = action_formula(p)
    zero = {s: MultiPoly.zero(f.variables) for s in f.variables if s.startswith("s")}
    for k, c in enumerate(f.coordinate_polys):
        assert c.substitute(zero) == MultiPoly.var(f"z{k}", f.variables)


def test_same_orbit_examples():
    x2, x3 = vec(0, 0, 1, 0), vec(0, 0, 0, 1)
    assert same_orbit(CUBIC, x2, x2)
    assert same_orbit(CUBIC, x2, vec(0, 0, 1, 5))
    assert not same_orbit(CUBIC, x2, x3)
    with pytest.raises(DegeneratePairUnsupported):
        same_orbit(counterexample_pair(), x2, x3)


def test_orbit_dimensions():
    assert [orbit_dimension(CUBIC, unit_vec(4, k)) for k in (0, 2, 3)] == [2, 1, 0]
    rows = orbit_table(CUBIC)
    assert [r["dimension"] for r in rows] == [2, 2, 1, 0]
    assert [r["boundary"] for r in rows] == [False, False, True, True]


@given(u_vectors(CUBIC))
def test_act_matches_exp(u):
    a = Element(CUBIC.algebra, vec(1, 0, 0, 0))
    assert act(CUBIC, u, a.coords) == exp(Element(CUBIC.algebra, u))


def test_formula_specializes_to_act():
    f = action_formula(Q2)
    s1, s2 = Scalar(2), Scalar(Fraction(-1, 3), 1)
    z = (Scalar(1), Scalar(0), Scalar(0), Scalar(0))
    values = list(z) + [s1, s2]
    image = tuple(c.evaluate(values) for c in f.coordinate_polys)
    u = vec(0, s1, s2, 0)
    assert image == act(Q2, u, z).coords
    assert image == (ONE, s1, s2, (s1 * s1 + s2 * s2) / 2)
