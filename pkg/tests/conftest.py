import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hyperact.exactlin import Scalar
from hyperact.models import (
    counterexample_pair,
    cubic_pair,
    pn_square_zero,
    quadric_pair,
    socle_extension,
)

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)
small_ints = st.integers(min_value=-3, max_value=3)

_num = st.integers(min_value=-5, max_value=5)
_den = st.integers(min_value=1, max_value=5)


def scalars(gaussian=True):
    """Gaussian rationals of height at most 5, drawn from flat integer tuples."""
    if not gaussian:
        return st.tuples(_num, _den).map(lambda t: Scalar(Fraction(*t)))
    return st.tuples(_num, _den, _num, _den).map(
        lambda t: Scalar(Fraction(t[0], t[1]), Fraction(t[2], t[3]))
    )


def vectors(n, elements=None):
    elements = scalars() if elements is None else elements
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def in_span(basis, elements=None):
    """Random combination of the given basis vectors."""
    n = len(basis[0])

    def combine(coeffs):
        out = [Scalar(0)] * n
        for c, b in zip(coeffs, basis):
            out = [x + c * y for x, y in zip(out, b)]
        return tuple(out)

    return vectors(len(basis), elements).map(combine)


def u_vectors(p, elements=None):
    return in_span(list(p.basis), elements)


def m_vectors(p, elements=None):
    n = p.dim
    return vectors(n - 1, elements).map(lambda v: (Scalar(0),) + v)


HYPERSURFACE_PAIRS = {
    "cubic_pair": cubic_pair(),
    "counterexample_pair": counterexample_pair(),
    "quadric_pair(1)": quadric_pair(1),
    "quadric_pair(2)": quadric_pair(2),
    "quadric_pair(3)": quadric_pair(3),
    "socle_extension(quadric_pair(2),1)": socle_extension(quadric_pair(2), 1),
    "socle_extension(cubic_pair,1)": socle_extension(cubic_pair(), 1),
    "socle_extension(cubic_pair,2)": socle_extension(cubic_pair(), 2),
}

PN_PAIRS = {f"pn_square_zero({n})": pn_square_zero(n) for n in (1, 2, 3)}


@pytest.fixture(params=sorted(HYPERSURFACE_PAIRS))
def hpair(request):
    return HYPERSURFACE_PAIRS[request.param]


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
