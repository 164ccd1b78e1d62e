"""The hypersurface and the action: equations, membership, formulas, orbits."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Element, exp, mul_vectors, principal_ideal
from .errors import (
    DegeneratePairUnsupported,
    DegreeOneHyperplane,
    DimensionMismatch,
    NotInMaximalIdeal,
    NotInSubspace,
    ZeroElement,
)
from .exactlin import Scalar, Subspace, contains, unit_vec
from .hpair import HYPERSURFACE, is_nondegenerate, quiet_degree
from .poly import MultiPoly, canonicalize, s_variables, z_variables


def symbolic_mul(A, a, b, variables):
    return A.product_coords(a, b, zero=MultiPoly.zero(variables))


def symbolic_exp_times(A, v, z, variables):
    """``exp(v) * z`` for polynomial-valued coordinate lists ``v`` (in m) and ``z``."""
    total = list(z)
    term = list(z)
    j = 0
    while True:
        j += 1
        term = symbolic_mul(A, v, term, variables)
        if not any(term):
            return total
        c = Scalar(Fraction(1, factorial(j)))
        total = [t + x * c for t, x in zip(total, term)]


def symbolic_combination(basis, names, variables):
    """Coordinates of ``sum_j names[j] * basis[j]`` as polynomials."""
    n = len(basis[0]) if basis else 0
    out = [MultiPoly.zero(variables)] * n
    for name, b in zip(names, basis):
        s = MultiPoly.var(name, variables)
        out = [o + s * c if c else o for o, c in zip(out, b)]
    return out


def projection_functional(p):
    """A linear functional on A vanishing on ``span(1) + U``, nonzero on m."""
    A = p.algebra
    ann = Subspace.span(list(p.U.basis) + [unit_vec(A.dim, 0)], A.dim).annihilator()
    if len(ann) != 1:
        raise ValueError("U must have codimension 1 in the maximal ideal")
    return ann[0]


def equation(p, functional=None):
    """Canonical defining form of the orbit closure of ``[1]``.

    Expands ``z0^d * pi(log(1 + z/z0))`` with ``z = z1 e1 + ... + zn en``;
    only the terms ``z^i`` with ``i <= d`` survive ``pi``.
    """
    d = quiet_degree(p)
    if d == 1:
        raise DegreeOneHyperplane("degree-1 pair: the hypersurface is a hyperplane")
    A = p.algebra
    phi = projection_functional(p) if functional is None else tuple(functional)
    zs = z_variables(A.dim)
    zero = MultiPoly.zero(zs)
    zm = [zero] + [MultiPoly.var(v, zs) for v in zs[1:]]
    z0 = MultiPoly.var("z0", zs)
    F = zero
    power = zm
    for i in range(1, d + 1):
        if i > 1:
            power = symbolic_mul(A, power, zm, zs)
        proj = zero
        for c, x in zip(phi, power):
            if c and x:
                proj = proj + x * c
        F = F + proj * (z0 ** (d - i)) * Scalar(Fraction((-1) ** (i + 1), i))
    return canonicalize(F)


def contains_point(F, pt):
    coords = pt.coords if hasattr(pt, "coords") else tuple(pt)
    if len(coords) != len(F.variables):
        raise DimensionMismatch("point dimension differs from the number of variables")
    return not F.evaluate(coords)


def _coords(m):
    return tuple(m.coords) if isinstance(m, Element) else tuple(Scalar.coerce(c) for c in m)


def complement_test(p, m):
    """Whether ``[m]`` lies outside the open orbit: ``m^d`` in U."""
    A = p.algebra
    m = _coords(m)
    if m[0]:
        raise NotInMaximalIdeal("complement test expects an element of m")
    if not any(m):
        raise ZeroElement("complement test of the zero element")
    d = quiet_degree(p)
    power = m
    for _ in range(d - 1):
        power = mul_vectors(A, power, m)
    return contains(p.U, power)


def act(p, u, a):
    """``exp(u) * a`` for ``u`` in U."""
    A = p.algebra
    u = _coords(u)
    a = _coords(a)
    if not contains(p.U, u):
        raise NotInSubspace("acting vector is not in U")
    return exp(Element(A, u)) * Element(A, a)


@dataclass(frozen=True)
class ActionFormula:
    coordinate_polys: tuple
    variables: tuple

    def strings(self):
        return [str(c) for c in self.coordinate_polys]

    def __str__(self):
        return "[" + " : ".join(self.strings()) + "]"


def action_formula(p):
    """Coordinates of ``z -> exp(sum s_j u_j) z`` with u_j the stored basis of U."""
    A = p.algebra
    zs = z_variables(A.dim)
    ss = s_variables(len(p.basis))
    variables = zs + ss
    z = [MultiPoly.var(v, variables) for v in zs]
    v = symbolic_combination(p.basis, ss, variables) if p.basis else [MultiPoly.zero(variables)] * A.dim
    return ActionFormula(tuple(symbolic_exp_times(A, v, z, variables)), variables)


def same_orbit(p, m1, m2):
    """Associate test ``m1 A = m2 A``; exact for non-degenerate pairs."""
    if p.mode == HYPERSURFACE and not is_nondegenerate(p):
        raise DegeneratePairUnsupported("orbit equality is only implemented for non-degenerate pairs")
    m1, m2 = _coords(m1), _coords(m2)
    if not any(m1) or not any(m2):
        raise ZeroElement("orbit of the zero element")
    A = p.algebra
    return contains(principal_ideal(A, m2), m1) and contains(principal_ideal(A, m1), m2)


def orbit_dimension(p, m):
    """Dimension of the orbit of ``[m]``: ``dim(U m + span(m)) - 1``."""
    m = _coords(m)
    if not any(m):
        raise ZeroElement("orbit of the zero element")
    A = p.algebra
    vectors = [mul_vectors(A, u, m) for u in p.U.basis] + [m]
    return Subspace.span(vectors, A.dim).dim - 1


def orbit_table(p, extra=()):
    """Rows for ``1``, each basis vector of m, and any extra elements."""
    A = p.algebra
    reps = [unit_vec(A.dim, 0)] + [unit_vec(A.dim, i) for i in range(1, A.dim)]
    reps += [_coords(e) for e in extra]
    rows = []
    for m in reps:
        in_m = not m[0]
        rows.append({
            "element": m,
            "dimension": orbit_dimension(p, m),
            "boundary": bool(in_m and p.mode == HYPERSURFACE and complement_test(p, m)),
        })
    return rows


__all__ = [
    "ActionFormula",
    "act",
    "action_formula",
    "complement_test",
    "contains_point",
    "equation",
    "orbit_dimension",
    "orbit_table",
    "projection_functional",
    "same_orbit",
    "symbolic_combination",
    "symbolic_exp_times",
    "symbolic_mul",
]
