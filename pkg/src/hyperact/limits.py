"""Limits of one-parameter subgroups ``t -> exp(t v)`` as ``t -> infinity``.

Limits are read off exactly as leading ``t``-coefficients; nothing here is
numeric.  :func:`generic_limit` treats ``v`` symbolically and splits the
parameter space into strata where the limit formula changes.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt

from .algebra import Element, mul_vectors, nilpotency_exponent
from .errors import NotInSubspace, ZeroElement
from .exactlin import (
    ONE,
    ZERO,
    Scalar,
    Subspace,
    contains,
    lincomb,
    nullspace,
    solve,
    unit_vec,
)
from .geometry import symbolic_combination, symbolic_mul
from .poly import MultiPoly, ProjectivePoint, canonicalize, s_variables


@dataclass(frozen=True)
class TCurve:
    """Coordinates of a curve; ``coords[c][j]`` is the coefficient of ``t^j``."""

    coords: tuple

    def __post_init__(self):
        trimmed = []
        for poly in self.coords:
            poly = list(poly)
            while poly and not poly[-1]:
                poly.pop()
            trimmed.append(tuple(poly))
        if not any(trimmed):
            raise ZeroElement("curve with all coordinates identically zero")
        object.__setattr__(self, "coords", tuple(trimmed))

    @property
    def degree(self):
        return max(len(c) for c in self.coords) - 1

    def at(self, t):
        t = Scalar.coerce(t)
        out = []
        for poly in self.coords:
            acc = ZERO
            for coef in reversed(poly):
                acc = acc * t + coef
            out.append(acc)
        return tuple(out)


def _coords(x):
    return tuple(x.coords) if isinstance(x, Element) else tuple(Scalar.coerce(c) for c in x)


def _allowed(p):
    return p.algebra.max_ideal if p.projective_space else p.U


def curve_of(p, v, a=None):
    """Exact coordinates of ``exp(t v) a`` as polynomials in ``t``."""
    A = p.algebra
    v = _coords(v)
    a = unit_vec(A.dim, 0) if a is None else _coords(a)
    if not contains(_allowed(p), v):
        raise NotInSubspace("direction vector is not in U")
    if not any(a):
        raise ZeroElement("base point must be nonzero")
    terms = [a]
    j = 0
    power = a
    while True:
        j += 1
        power = mul_vectors(A, v, power)
        if not any(power):
            break
        terms.append(tuple(c * Fraction(1, factorial(j)) for c in power))
    return TCurve(tuple(tuple(term[c] for term in terms) for c in range(A.dim)))


def projective_limit(c):
    """Limit of ``[c(t)]``: the vector of ``t^K`` coefficients, K the top degree."""
    K = c.degree
    return ProjectivePoint(tuple(poly[K] if len(poly) > K else ZERO for poly in c.coords))


def one_param_limit(p, v):
    """``[v^k]`` with ``k`` the nilpotency exponent of ``v``."""
    A = p.algebra
    v = _coords(v)
    if not any(v):
        raise ZeroElement("limit along the zero vector is undefined")
    if not contains(_allowed(p), v):
        raise NotInSubspace("direction vector is not in U")
    k = nilpotency_exponent(Element(A, v))
    power = v
    for _ in range(k - 1):
        power = mul_vectors(A, power, v)
    point = ProjectivePoint(power)
    assert point == projective_limit(curve_of(p, v)), "limit formula disagrees with the curve"
    return point


def limit_exponent(p, v):
    return nilpotency_exponent(Element(p.algebra, _coords(v)))


def limit_probe(p, v, t_values, a=None):
    """Exact points ``[exp(t v) a]`` at the given parameter values."""
    v = _coords(v)
    if not any(v):
        raise ZeroElement("probe along the zero vector")
    curve = curve_of(p, v, a)
    return [ProjectivePoint(curve.at(t)) for t in t_values]


# --- symbolic strata -------------------------------------------------------


def rational_sqrt(q):
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z):
    """An exact square root in Q(i), or None if there is none."""
    z = Scalar.coerce(z)
    if not z:
        return ZERO
    norm = rational_sqrt(z.re * z.re + z.im * z.im)
    if norm is None:
        return None
    u = rational_sqrt((z.re + norm) / 2)
    if u is None:
        return None
    if u:
        return Scalar(u, z.im / (2 * u))
    v = rational_sqrt(-z.re)
    return Scalar(0, v) if v is not None else None


def linear_root(q):
    """If ``q = c * l^e`` for a linear form ``l``, return the coefficients of l."""
    if not q or q.is_constant() or not q.is_homogeneous():
        return None
    e = q.degree()
    nvar = len(q.variables)
    pure = [q.coefficient(tuple(e if j == i else 0 for j in range(nvar))) for i in range(nvar)]
    lead = next((i for i in range(nvar) if pure[i]), None)
    if lead is None:
        return None
    c = pure[lead]
    coeffs = []
    for i in range(nvar):
        if i == lead:
            coeffs.append(ONE)
            continue
        ex = [0] * nvar
        ex[lead] = e - 1
        ex[i] += 1
        coeffs.append(q.coefficient(tuple(ex)) / (c * e))
    ell = MultiPoly.zero(q.variables)
    for i, a in enumerate(coeffs):
        if a:
            ell = ell + MultiPoly.var(q.variables[i], q.variables) * a
    if ell ** e * c != q:
        return None
    return tuple(coeffs)


def factor_binary_quadratic(q):
    """Split a quadratic form in two variables into two distinct linear forms over Q(i)."""
    if not q or q.degree() != 2 or not q.is_homogeneous():
        return None
    used = [j for j, v in enumerate(q.variables) if any(e[j] for e in q.terms)]
    if len(used) != 2:
        return None
    nvar = len(q.variables)
    a_idx, b_idx = used

    def mono(i, j):
        ex = [0] * nvar
        ex[i] += 1
        ex[j] += 1
        return tuple(ex)

    A = q.coefficient(mono(a_idx, a_idx))
    B = q.coefficient(mono(a_idx, b_idx))
    C = q.coefficient(mono(b_idx, b_idx))

    def form(ca, cb):
        out = [ZERO] * nvar
        out[a_idx] = Scalar.coerce(ca)
        out[b_idx] = Scalar.coerce(cb)
        return tuple(out)

    if not A:
        return (form(0, 1), form(B, C))
    disc = B * B - A * C * 4
    if not disc:
        return None
    r = gaussian_sqrt(disc)
    if r is None:
        return None
    # q = A (x - t1 y)(x - t2 y)
    t1 = (-B + r) / (A * 2)
    t2 = (-B - r) / (A * 2)
    return (form(1, -t1), form(1, -t2))


def _restrict(basis, form):
    """Basis of ``{sum c_j basis_j : form(c) = 0}``."""
    kernel = nullspace([form], len(basis))
    n = len(basis[0])
    return [lincomb(c, basis, n) for c in kernel]


def zero_locus(basis, polys_of, quadratic_factoring=False):
    """Common zero set of polynomials on the span of ``basis``.

    ``polys_of(b)`` returns the polynomials in parameters ``s1..`` for the
    parametrization ``sum s_j b_j``.  The result is a list of subspace bases
    whose union is the zero set, plus descriptions of branches that could not
    be reduced to linear conditions.
    """
    if not basis:
        return [], []
    polys = [q for q in polys_of(basis) if q]
    if not polys:
        return [list(basis)], []
    if any(q.is_constant() for q in polys):
        return [], []
    for q in polys:
        ell = linear_root(q)
        if ell is not None:
            return zero_locus(_restrict(basis, ell), polys_of, quadratic_factoring)
    if quadratic_factoring:
        for q in polys:
            factors = factor_binary_quadratic(q)
            if factors is not None:
                pieces, unresolved = [], []
                for ell in factors:
                    pc, un = zero_locus(_restrict(basis, ell), polys_of, quadratic_factoring)
                    pieces.extend(pc)
                    unresolved.extend(un)
                return _dedupe(pieces), unresolved
    return [], [" = 0, ".join(str(q) for q in polys) + " = 0"]


def _dedupe(pieces):
    out, seen = [], []
    for b in pieces:
        if not b:
            continue
        s = Subspace.span(b, len(b[0]))
        if s not in seen:
            seen.append(s)
            out.append(b)
    return out


def power_coords(basis, k, algebra):
    """Symbolic ``v^k`` for ``v = sum s_j basis_j``."""
    variables = s_variables(len(basis))
    v = symbolic_combination(basis, variables, variables)
    power = v
    for _ in range(k - 1):
        power = symbolic_mul(algebra, power, v, variables)
    return power


def constant_point(polys):
    """``[c]`` if every coordinate is ``c_i * g`` for one polynomial g, else None."""
    nonzero = [q for q in polys if q]
    if not nonzero:
        return None
    g = nonzero[0]
    g_lead = g.leading_term()
    coords = []
    for q in polys:
        if not q:
            coords.append(ZERO)
            continue
        e, c = q.leading_term()
        if e != g_lead[0]:
            return None
        ratio = c / g_lead[1]
        if q != g * ratio:
            return None
        coords.append(ratio)
    return ProjectivePoint(tuple(coords))


@dataclass
class LimitNode:
    """One stratum ``{sum s_j basis_j}`` of directions with a common limit formula.

    On the stratum, away from the children, the limit is ``[leading]`` where
    ``leading = v^k``.  ``conditions`` are the linear equations (in the
    root's parameters) cutting the stratum out of U.
    """

    basis: list
    k: int
    leading: list
    point: object
    conditions: list
    children: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)

    @property
    def variables(self):
        return s_variables(len(self.basis))

    def fully_resolved(self):
        return not self.unresolved and all(c.fully_resolved() for c in self.children)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def _conditions(root_basis, basis):
    if len(basis) == len(root_basis):
        return []
    coords = [solve(root_basis, b) for b in basis]
    ann = Subspace.span(coords, len(root_basis)).annihilator()
    names = s_variables(len(root_basis))
    out = []
    for form in ann:
        ell = MultiPoly.zero(names)
        for n, a in zip(names, form):
            if a:
                ell = ell + MultiPoly.var(n, names) * a
        out.append(f"{canonicalize(ell)} = 0")
    return out


def _node(algebra, basis, root_basis, quadratic_factoring):
    variables = s_variables(len(basis))
    v = symbolic_combination(basis, variables, variables)
    power = v
    k = 1
    while True:
        nxt = symbolic_mul(algebra, power, v, variables)
        if not any(nxt):
            break
        power = nxt
        k += 1
    pieces, unresolved = zero_locus(
        basis, lambda b: power_coords(b, k, algebra), quadratic_factoring
    )
    children = [
        _node(algebra, piece, root_basis, quadratic_factoring)
        for piece in pieces
        if Subspace.span(piece, algebra.dim).dim < len(basis)
    ]
    return LimitNode(
        basis=[tuple(b) for b in basis],
        k=k,
        leading=power,
        point=constant_point(power),
        conditions=_conditions(root_basis, basis),
        children=children,
        unresolved=unresolved,
    )


def generic_limit(p, quadratic_factoring=False):
    """Stratified symbolic limit of ``exp(t v) [1]`` over all ``v`` in U.

    The root uses the pair's stored basis of U (or the standard basis of m
    in projective-space mode).
    """
    A = p.algebra
    if p.projective_space:
        basis = [unit_vec(A.dim, i) for i in range(1, A.dim)]
    else:
        basis = list(p.basis)
    if not basis:
        raise ZeroElement("U is zero; there are no one-parameter subgroups")
    return _node(A, basis, basis, quadratic_factoring)
