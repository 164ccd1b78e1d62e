from fractions import Fraction

import pytest
from hypothesis import given

from hyperact.algebra import (
    Element,
    exp,
    ideal_power_basis,
    log,
    mul,
    nilpotency_exponent,
    quotient_algebra,
    rescale_basis,
    socle,
    subalgebra_generated,
    validate_algebra,
)
from hyperact.errors import (
    AlgebraMismatch,
    AlgebraValidationError,
    MalformedTable,
    NotAnIdeal,
    NotInMaximalIdeal,
    NotUnipotent,
)
from hyperact.exactlin import I, Scalar, Subspace, unit_vec, vec
from hyperact.models import chain_algebra, cubic_pair, pn_square_zero, quadric_pair, socle_extension

from conftest import HYPERSURFACE_PAIRS, m_vectors, scalars, u_vectors

C4 = chain_algebra(4)
Q2 = quadric_pair(2).algebra
x, x2, x3 = (C4.basis_element(k) for k in (1, 2, 3))


def span(A, *idx):
    return Subspace.span([unit_vec(A.dim, k) for k in idx], A.dim)


def test_dual_numbers_valid():
    A = validate_algebra(2, {(1, 1): (0, 0)})
    assert A.dim == 2 and not A.table


def test_chain_table_valid():
    table = {(i, j): unit_vec(4, i + j) for i in range(1, 4) for j in range(i, 4) if i + j < 4}
    assert validate_algebra(4, table) == C4


def test_idempotent_rejected():
    with pytest.raises(AlgebraValidationError) as exc:
        validate_algebra(2, {(1, 1): (0, 1)})
    assert [v.kind for v in exc.value.violations] == ["NotNilpotent"]


def test_all_violations_collected():
    # e1*e1 = 1 leaves the maximal ideal; e1*e2 = e1 breaks associativity
    with pytest.raises(AlgebraValidationError) as exc:
        validate_algebra(3, {(1, 1): (1, 0, 0), (1, 2): (0, 1, 0)})
    kinds = {v.kind for v in exc.value.violations}
    assert "NotClosedInMaxIdeal" in kinds and "NotAssociative" in kinds


def test_malformed_tables():
    with pytest.raises(MalformedTable):
        validate_algebra(3, {(1, 3): (0, 0, 0)})
    with pytest.raises(MalformedTable):
        validate_algebra(3, {(1, 1): (0, 0)})
    with pytest.raises(MalformedTable):
        validate_algebra(3, {(1, 2): (0, 0, 1), (2, 1): (0, 1, 0)})


def test_mul_examples():
    a = C4.element(1, 2, 0, 3)
    assert mul(C4.unit(), a) == a
    assert x * x2 == x3
    x1, y = Q2.basis_element(1), Q2.basis_element(2)
    q = Q2.basis_element(3)
    assert x1 * y == Q2.zero()
    assert x1 * x1 == q == y * y


def test_mul_across_algebras():
    with pytest.raises(AlgebraMismatch):
        mul(x, Q2.basis_element(1))


def test_ideal_powers():
    assert ideal_power_basis(C4, 3) == span(C4, 3)
    assert ideal_power_basis(C4, 4).dim == 0
    assert ideal_power_basis(Q2, 2) == span(Q2, 3)


def test_socle_examples():
    assert socle(C4) == span(C4, 3)
    assert socle(Q2) == span(Q2, 3)
    P = pn_square_zero(3).algebra
    assert socle(P) == P.max_ideal


def test_exp_examples():
    assert exp(C4.zero()) == C4.unit()
    assert exp(x) == C4.element(1, 1, Fraction(1, 2), Fraction(1, 6))
    s1, s2 = Scalar(3), Scalar(Fraction(-1, 2))
    v = Q2.basis_element(1) * s1 + Q2.basis_element(2) * s2
    assert exp(v) == Q2.element(1, s1, s2, (s1 * s1 + s2 * s2) / 2)


def test_log_examples():
    assert log(C4.unit()).coords == C4.zero().coords
    assert log(exp(x)) == x
    assert log(C4.unit() + x) == C4.element(0, 1, Fraction(-1, 2), Fraction(1, 3))


def test_exp_log_domain():
    with pytest.raises(NotInMaximalIdeal):
        exp(C4.unit())
    with pytest.raises(NotUnipotent):
        log(C4.element(2, 1, 0, 0))


def test_nilpotency_examples():
    assert nilpotency_exponent(x) == 3
    assert nilpotency_exponent(x2) == 1
    assert nilpotency_exponent(Q2.basis_element(1) + Q2.basis_element(2) * I) == 1


def test_quotients():
    Q, proj = quotient_algebra(C4, Subspace.zero(4))
    assert Q == C4
    Q, proj = quotient_algebra(C4, span(C4, 3))
    assert Q == chain_algebra(3)
    assert proj(vec(1, 2, 3, 4)) == vec(1, 2, 3)
    E = socle_extension(quadric_pair(2), 1).algebra
    Q, _ = quotient_algebra(E, span(E, 4))
    assert Q == Q2


def test_quotient_requires_ideal():
    with pytest.raises(NotAnIdeal):
        quotient_algebra(C4, span(C4, 2))


def test_subalgebra_generated():
    assert subalgebra_generated(C4, C4.max_ideal).dim == 4
    assert subalgebra_generated(C4, span(C4, 1)).dim == 4
    assert subalgebra_generated(C4, span(C4, 2)) == span(C4, 0, 2)


@pytest.mark.parametrize("name", sorted(HYPERSURFACE_PAIRS))
def test_rescaling_is_isomorphism(name):
    A = HYPERSURFACE_PAIRS[name].algebra
    factors = [1] + [k + 1 for k in range(1, A.dim)]
    B = rescale_basis(A, factors)
    assert ideal_power_basis(B, 2).dim == ideal_power_basis(A, 2).dim
    assert socle(B).dim == socle(A).dim


# roundtrips over the catalog algebras


@given(m_vectors(cubic_pair()))
def test_exp_log_roundtrip_cubic(m):
    e = Element(C4, m)
    assert log(exp(e)) == e
    assert exp(log(C4.unit() + e)) == C4.unit() + e


@given(m_vectors(socle_extension(quadric_pair(2), 1)), m_vectors(socle_extension(quadric_pair(2), 1)))
def test_exp_additive_extension(a, b):
    A = socle_extension(quadric_pair(2), 1).algebra
    ea, eb = Element(A, a), Element(A, b)
    assert exp(ea + eb) == exp(ea) * exp(eb)


@given(u_vectors(quadric_pair(3), scalars()))
def test_nilpotency_matches_powers(v):
    A = quadric_pair(3).algebra
    e = Element(A, v)
    if not e:
        return
    k = nilpotency_exponent(e)
    assert e ** k and not e ** (k + 1)
