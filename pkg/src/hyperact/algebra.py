"""Local commutative associative unital algebras given by structure constants.

The basis is ``e0, ..., e_{dim-1}`` with ``e0 = 1`` implicit; the maximal
ideal is ``span(e1, ..., e_{dim-1})``.  Only products ``e_i e_j`` with
``1 <= i <= j`` are stored.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial

from .errors import (
    AlgebraMismatch,
    AlgebraValidationError,
    MalformedTable,
    NotAnIdeal,
    NotInMaximalIdeal,
    NotUnipotent,
    Violation,
    ZeroElement,
)
from .exactlin import (
    ONE,
    ZERO,
    Scalar,
    Subspace,
    contains,
    format_scalar,
    nullspace,
    pivot_columns,
    solve,
    subspace_sum,
    unit_vec,
    vec,
)


def mul_coords(products, a, b, zero):
    """Multiply coordinate sequences using sparse structure constants.

    Works for any coefficient type supporting ``+``, ``*`` and truthiness,
    which lets the same routine multiply symbolic elements whose
    coordinates are polynomials.
    """
    n = len(a)
    out = [zero] * n
    nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in nz_b:
            if i == 0:
                out[j] = out[j] + ai * bj
            elif j == 0:
                out[i] = out[i] + ai * bj
            else:
                entries = products[i][j]
                if entries:
                    ab = ai * bj
                    for k, c in entries:
                        out[k] = out[k] + ab * c
    return out


class LocalAlgebra:
    """A validated local algebra; build it with :func:`validate_algebra`."""

    def __init__(self, dim, table, basis_names=None, _validated=False):
        if not _validated:
            raise TypeError("use validate_algebra() to construct a LocalAlgebra")
        self.dim = dim
        self.table = dict(table)
        self.basis_names = tuple(basis_names) if basis_names else default_names(dim)
        self._products = _dense_products(dim, self.table)

    def __eq__(self, other):
        if not isinstance(other, LocalAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"LocalAlgebra(dim={self.dim}, nonzero_products={len(self.table)})"

    @property
    def max_ideal(self):
        return Subspace.span([unit_vec(self.dim, i) for i in range(1, self.dim)], self.dim)

    def product_coords(self, a, b, zero=ZERO):
        return mul_coords(self._products, a, b, zero)

    def basis_product(self, i, j):
        out = [ZERO] * self.dim
        if i == 0 or j == 0:
            out[max(i, j)] = ONE
            return tuple(out)
        for k, c in self._products[i][j]:
            out[k] = c
        return tuple(out)

    def element(self, *coords):
        return Element(self, vec(*coords))

    def unit(self):
        return Element(self, unit_vec(self.dim, 0))

    def zero(self):
        return Element(self, (ZERO,) * self.dim)

    def basis_element(self, i):
        return Element(self, unit_vec(self.dim, i))

    def mult_matrix(self, i):
        """Matrix (list of rows) of ``a -> a * e_i`` acting on column coordinates."""
        cols = [self.basis_product(j, i) for j in range(self.dim)]
        return [tuple(cols[j][r] for j in range(self.dim)) for r in range(self.dim)]

    @cached_property
    def _power_cache(self):
        return {1: self.max_ideal}


def default_names(dim):
    return ("1",) + tuple(f"e{i}" for i in range(1, dim))


def _dense_products(dim, table):
    prods = [[() for _ in range(dim)] for _ in range(dim)]
    for (i, j), v in table.items():
        entries = tuple((k, c) for k, c in enumerate(v) if c)
        prods[i][j] = entries
        prods[j][i] = entries
    return prods


@dataclass(frozen=True)
class Element:
    algebra: LocalAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError(
                f"element has {len(self.coords)} coordinates, algebra dimension is {self.algebra.dim}"
            )

    def _check(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.coerce(other)
            return Element(self.algebra, tuple(c * a for a in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        result = self.algebra.unit()
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self):
        return any(self.coords)

    def in_max_ideal(self):
        return not self.coords[0]

    def __str__(self):
        return "(" + ", ".join(format_scalar(a) for a in self.coords) + ")"


def validate_algebra(dim, table, basis_names=None):
    """Validate raw structure constants and return a :class:`LocalAlgebra`.

    ``table`` maps index pairs ``(i, j)`` with ``1 <= i, j <= dim-1`` to the
    product ``e_i e_j`` as a coordinate sequence of length ``dim``.  Every
    violated axiom is collected before raising.
    """
    if not isinstance(dim, int) or dim < 1:
        raise MalformedTable(f"dimension must be a positive integer, got {dim!r}")
    if basis_names is not None and len(basis_names) != dim:
        raise MalformedTable("basis_names length differs from dimension")
    norm = {}
    for key, value in dict(table).items():
        try:
            i, j = key
        except (TypeError, ValueError):
            raise MalformedTable(f"table key {key!r} is not an index pair") from None
        if not (isinstance(i, int) and isinstance(j, int)) or not (1 <= i < dim and 1 <= j < dim):
            raise MalformedTable(f"table indices ({i},{j}) out of range 1..{dim - 1}")
        v = vec(value)
        if len(v) != dim:
            raise MalformedTable(f"product e{i}*e{j} has {len(v)} coordinates, expected {dim}")
        k = (min(i, j), max(i, j))
        if k in norm and norm[k] != v:
            raise MalformedTable(f"conflicting entries for e{k[0]}*e{k[1]} (commutativity)")
        norm[k] = v
    norm = {k: v for k, v in norm.items() if any(v)}

    violations = []
    for (i, j), v in sorted(norm.items()):
        if v[0]:
            violations.append(Violation("NotClosedInMaxIdeal", (i, j), f"e{i}*e{j} has unit component {format_scalar(v[0])}"))
    prods = _dense_products(dim, norm)

    def prod(a, b):
        return tuple(mul_coords(prods, a, b, ZERO))

    def basis(i):
        return unit_vec(dim, i)

    for i in range(1, dim):
        for j in range(i, dim):
            eij = prod(basis(i), basis(j))
            for k in range(1, dim):
                left = prod(eij, basis(k))
                right = prod(basis(i), prod(basis(j), basis(k)))
                if left != right:
                    violations.append(Violation("NotAssociative", (i, j, k)))
    # m^dim = 0 is equivalent to m being nil for finite-dimensional commutative algebras
    if not any(v.kind == "NotClosedInMaxIdeal" for v in violations):
        power = [basis(i) for i in range(1, dim)]
        for _ in range(dim - 1):
            nxt = [prod(p, basis(i)) for p in power for i in range(1, dim)]
            power = list(Subspace.span(nxt, dim).basis) if nxt else []
        if power:
            violations.append(Violation("NotNilpotent", (), f"m^{dim} has dimension {len(power)}"))
    if violations:
        raise AlgebraValidationError(violations)
    return LocalAlgebra(dim, norm, basis_names, _validated=True)


def mul(a, b):
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatch("elements belong to different algebras")
    return Element(a.algebra, tuple(a.algebra.product_coords(a.coords, b.coords)))


def mul_vectors(A, u, v):
    return tuple(A.product_coords(u, v))


def product_space(A, s, t):
    """Span of all products of basis vectors of subspaces ``s`` and ``t``."""
    vectors = [mul_vectors(A, u, v) for u in s.basis for v in t.basis]
    return Subspace.span(vectors, A.dim)


def ideal_power_basis(A, k):
    """The subspace ``m^k``; ``m^1`` is the maximal ideal."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cache = A._power_cache
    top = max(cache)
    while top < k:
        prev = cache[top]
        cache[top + 1] = product_space(A, prev, A.max_ideal) if prev.basis else prev
        top += 1
    return cache[k]


def principal_ideal(A, m):
    """The subspace ``m * A``."""
    m = tuple(m.coords) if isinstance(m, Element) else tuple(m)
    return Subspace.span([mul_vectors(A, m, unit_vec(A.dim, i)) for i in range(A.dim)], A.dim)


def socle(A):
    """Annihilator of the maximal ideal, computed inside all of A."""
    rows = []
    for i in range(1, A.dim):
        rows.extend(A.mult_matrix(i))
    kernel = nullspace(rows, A.dim) if rows else [unit_vec(A.dim, i) for i in range(A.dim)]
    soc = Subspace.span(kernel, A.dim)
    if A.dim > 1:
        assert soc.issubset(A.max_ideal), "socle of a local algebra must lie in m"
    return soc


def _require_max_ideal(m):
    if m.coords[0]:
        raise NotInMaximalIdeal(f"element {m} has nonzero unit component")


def exp(m):
    """Truncated exponential series of a nilpotent element."""
    _require_max_ideal(m)
    A = m.algebra
    total = A.unit()
    term = A.unit()
    j = 0
    while True:
        j += 1
        term = term * m
        if not term:
            return total
        total = total + term * Fraction(1, factorial(j))


def log(u):
    """Inverse of :func:`exp` on ``1 + m`` (the series with sign ``(-1)^(j+1)``)."""
    if u.coords[0] != 1:
        raise NotUnipotent(f"element {u} does not have unit component 1")
    A = u.algebra
    m = u - A.unit()
    total = A.zero()
    power = A.unit()
    j = 0
    while True:
        j += 1
        power = power * m
        if not power:
            return total
        total = total + power * Fraction((-1) ** (j + 1), j)


def nilpotency_exponent(m):
    """Largest ``k`` with ``m^k != 0``."""
    _require_max_ideal(m)
    if not m:
        raise ZeroElement("nilpotency exponent of zero is undefined")
    k = 1
    power = m
    while True:
        nxt = power * m
        if not nxt:
            return k
        power = nxt
        k += 1


def is_ideal(A, W):
    if not W.issubset(A.max_ideal):
        return False
    for w in W.basis:
        for i in range(1, A.dim):
            if not contains(W, mul_vectors(A, w, unit_vec(A.dim, i))):
                return False
    return True


@dataclass(frozen=True)
class Projection:
    """Linear map ``A -> A/W`` onto the coordinates not pivoted by ``W``."""

    source_dim: int
    kept: tuple
    ideal: Subspace

    def __call__(self, v):
        v = tuple(v.coords) if isinstance(v, Element) else tuple(v)
        residual = list(v)
        for row in self.ideal.basis:
            p = next(j for j, a in enumerate(row) if a)
            c = residual[p]
            if c:
                residual = [x - c * y if y else x for x, y in zip(residual, row)]
        return tuple(residual[j] for j in self.kept)

    def subspace(self, s, target_dim):
        return Subspace.span([self(v) for v in s.basis], target_dim)

    def lift(self, w):
        """A preimage of quotient coordinates ``w`` (the standard section)."""
        out = [ZERO] * self.source_dim
        for j, c in zip(self.kept, w):
            out[j] = c
        return tuple(out)


def quotient_algebra(A, W):
    """Structure constants of ``A/W`` and the projection ``A -> A/W``."""
    if W.ambient_dim != A.dim:
        raise NotAnIdeal("subspace lives in a different ambient space")
    if not is_ideal(A, W):
        raise NotAnIdeal("subspace is not an ideal contained in the maximal ideal")
    piv = set(pivot_columns(W.basis))
    kept = tuple(j for j in range(A.dim) if j not in piv)
    proj = Projection(A.dim, kept, W)
    qdim = len(kept)
    table = {}
    for a in range(1, qdim):
        for b in range(a, qdim):
            v = proj(A.basis_product(kept[a], kept[b]))
            if any(v):
                table[(a, b)] = v
    names = tuple(A.basis_names[j] for j in kept)
    return validate_algebra(qdim, table, names), proj


def subalgebra_generated(A, S):
    """Unital subalgebra generated by a subspace ``S`` of the maximal ideal."""
    if not S.issubset(A.max_ideal):
        raise NotInMaximalIdeal("generating subspace must lie in the maximal ideal")
    V = subspace_sum(Subspace.span([unit_vec(A.dim, 0)], A.dim), S)
    while True:
        nxt = subspace_sum(V, product_space(A, V, S))
        if nxt == V:
            return V
        V = nxt


def restrict_to_subalgebra(A, basis):
    """Structure constants of a unital subalgebra in a given basis.

    ``basis[0]`` must be the unit and the remaining vectors must span the
    subalgebra's part of the maximal ideal.  Returns the new algebra and the
    list of basis vectors (its embedding into A).
    """
    basis = [tuple(b) for b in basis]
    if basis[0] != unit_vec(A.dim, 0):
        raise ValueError("first basis vector must be the unit")
    n = len(basis)
    table = {}
    for i in range(1, n):
        for j in range(i, n):
            p = mul_vectors(A, basis[i], basis[j])
            c = solve(basis, p)
            if c is None:
                raise ValueError("span is not closed under multiplication")
            if any(c):
                table[(i, j)] = c
    return validate_algebra(n, table), basis


def rescale_basis(A, factors):
    """Isomorphic copy of A in the basis ``e_i' = factors[i] * e_i`` (factors[0] = 1)."""
    f = [Scalar.coerce(x) for x in factors]
    if f[0] != 1 or not all(f):
        raise ValueError("factors must be nonzero with factors[0] == 1")
    table = {}
    for (i, j), v in A.table.items():
        # e_i' e_j' = f_i f_j sum_k c_k e_k = sum_k (f_i f_j c_k / f_k) e_k'
        table[(i, j)] = tuple(f[i] * f[j] * c / f[k] if c else c for k, c in enumerate(v))
    return validate_algebra(A.dim, table, A.basis_names)

