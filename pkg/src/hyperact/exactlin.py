"""Exact arithmetic over the Gaussian rationals Q(i) and exact linear algebra.

Vectors are plain tuples of :class:`Scalar`; matrices are tuples of such
rows.  Subspaces are kept in reduced row echelon form so that equality of
subspaces is structural equality of their basis matrices.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, ParseError


def _norm(a, b, d):
    """Reduce ``(a + b i) / d`` to lowest terms with ``d > 0``."""
    if d < 0:
        a, b, d = -a, -b, -d
    if d != 1:
        g = gcd(gcd(a, b), d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
    return a, b, d


class Scalar:
    """An element ``(a + b i) / d`` of Q(i), kept in lowest terms.

    ``re`` and ``im`` expose the two parts as Fractions; arithmetic works on
    the integer triple, which avoids normalizing two Fractions per step.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, a, b, d):
        a, b, d = _norm(a, b, d)
        obj = object.__new__(cls)
        object.__setattr__(obj, "_a", a)
        object.__setattr__(obj, "_b", b)
        object.__setattr__(obj, "_d", d)
        return obj

    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return Scalar._raw(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            raise TypeError("floating point complex values are not exact")
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __neg__(self):
        obj = object.__new__(Scalar)
        object.__setattr__(obj, "_a", -self._a)
        object.__setattr__(obj, "_b", -self._b)
        object.__setattr__(obj, "_d", self._d)
        return obj

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Scalar._raw(self._a + other._a, self._b + other._b, d1)
        return Scalar._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.coerce(other)
        a, b, c, e = self._a, self._b, other._a, other._b
        if not b and not e:
            return Scalar._raw(a * c, 0, self._d * other._d)
        return Scalar._raw(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero Scalar")
        # d / (a + b i) = d (a - b i) / (a^2 + b^2)
        a, b, d = self._a, self._b, self._d
        return Scalar._raw(d * a, -d * b, a * a + b * b)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            other = Scalar.coerce(other)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return Scalar._raw(self._a, -self._b, self._d)

    def is_real(self):
        return self._b == 0

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_FZERO = Fraction(0)
ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT}(?=[+-]|$))?(?:(?P<im>[+-]?(?:{_RAT}\*?)?)i)?$"
)


def parse_scalar(text):
    """Parse ``a/b``, ``a/b+c/d*i``, ``c/d*i`` and integer shorthands."""
    s = "".join(str(text).split())
    m = _SCALAR_RE.match(s)
    if not s or m is None or (m.group("re") is None and m.group("im") is None):
        raise ParseError(f"invalid scalar literal {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else _FZERO
    im_text = m.group("im")
    if im_text is None:
        im_part = _FZERO
    else:
        if m.group("re") and im_text[:1] not in "+-":
            raise ParseError(f"invalid scalar literal {text!r}")
        body = im_text.rstrip("*")
        if body in ("", "+"):
            im_part = Fraction(1)
        elif body == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(body)
    try:
        return Scalar(re_part, im_part)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def format_scalar(x):
    x = Scalar.coerce(x)
    if not x.im:
        return str(x.re)
    if x.im == 1:
        im = "i"
    elif x.im == -1:
        im = "-i"
    else:
        im = f"{x.im}*i"
    if not x.re:
        return im
    return f"{x.re}{'' if im.startswith('-') else '+'}{im}"


def vec(*entries):
    """Build a coordinate vector, coercing ints, Fractions and strings."""
    if len(entries) == 1 and isinstance(entries[0], (list, tuple)):
        entries = entries[0]
    return tuple(Scalar.coerce(e) for e in entries)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero_vec(v):
    return not any(v)


def _check_len(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)} differ")


def vadd(u, v):
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    _check_len(u, v)
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def lincomb(coeffs, vectors, n):
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for j, a in enumerate(v):
            if a:
                out[j] = out[j] + c * a
    return tuple(out)


def _rref_rows(rows, ncols):
    """Row-reduce a list of mutable rows in place; return (rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [a * inv if a else a for a in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rref(m):
    """Reduced row echelon form of ``m`` with zero rows dropped."""
    m = [tuple(Scalar.coerce(a) for a in row) for row in m]
    if not m:
        return ()
    ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
    rows, _ = _rref_rows(m, ncols)
    return tuple(rows)


def rank(m):
    return len(rref(m))


def pivot_columns(reduced):
    return [next(j for j, a in enumerate(row) if a) for row in reduced]


def nullspace(m, ncols=None):
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = [tuple(Scalar.coerce(a) for a in row) for row in m]
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    rows, pivots = _rref_rows(m, ncols) if m else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def transpose(m):
    if not m:
        return []
    return [tuple(row[j] for row in m) for j in range(len(m[0]))]


def solve(columns, target):
    """Coefficients ``c`` with ``sum c_j columns[j] == target`` or None."""
    n = len(target)
    k = len(columns)
    aug = [tuple(Scalar.coerce(columns[j][i]) for j in range(k)) + (Scalar.coerce(target[i]),) for i in range(n)]
    rows, pivots = _rref_rows(aug, k + 1)
    if k in pivots:
        return None
    x = [ZERO] * k
    for row, p in zip(rows, pivots):
        x[p] = row[k]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q(i)^n stored by its RREF basis."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        reduced = rref(self.basis) if self.basis else ()
        for row in reduced:
            if len(row) != self.ambient_dim:
                raise DimensionMismatch("basis vector length differs from ambient dimension")
        object.__setattr__(self, "basis", reduced)

    @classmethod
    def span(cls, vectors, ambient_dim):
        return cls(ambient_dim, tuple(tuple(v) for v in vectors))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, tuple(unit_vec(n, i) for i in range(n)))

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __contains__(self, v):
        return contains(self, v)

    def issubset(self, other):
        return all(contains(other, v) for v in self.basis)

    def annihilator(self):
        """Basis of the linear functionals vanishing on this subspace."""
        if not self.basis:
            return [unit_vec(self.ambient_dim, i) for i in range(self.ambient_dim)]
        return nullspace(self.basis, self.ambient_dim)

    def complement_units(self):
        """Indices of the standard unit vectors completing this subspace."""
        piv = set(pivot_columns(self.basis))
        return [j for j in range(self.ambient_dim) if j not in piv]

    def __str__(self):
        rows = ", ".join("(" + ", ".join(format_scalar(a) for a in r) + ")" for r in self.basis)
        return f"span[{rows}]"


def _same_ambient(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ"
        )


def subspace_sum(a, b):
    _same_ambient(a, b)
    return Subspace(a.ambient_dim, a.basis + b.basis)


def subspace_intersect(a, b):
    """Exact intersection via the kernel of ``x A - y B = 0``."""
    _same_ambient(a, b)
    if not a.basis or not b.basis:
        return Subspace.zero(a.ambient_dim)
    stacked = list(a.basis) + [vscale(-ONE, r) for r in b.basis]
    # left kernel of the stacked basis matrix
    kernel = nullspace(transpose(stacked), len(stacked))
    p = len(a.basis)
    vectors = [lincomb(c[:p], a.basis, a.ambient_dim) for c in kernel]
    return Subspace.span(vectors, a.ambient_dim)


def contains(s, v):
    v = tuple(Scalar.coerce(a) for a in v)
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(
            f"vector of length {len(v)} tested against ambient dimension {s.ambient_dim}"
        )
    if not any(v):
        return True
    residual = list(v)
    for row in s.basis:
        p = next(j for j, a in enumerate(row) if a)
        c = residual[p]
        if c:
            residual = [x - c * y if y else x for x, y in zip(residual, row)]
    return not any(residual)


def coordinates_in(s, v):
    """Coefficients of ``v`` with respect to the RREF basis of ``s``, or None."""
    if not contains(s, v):
        return None
    return tuple(v[p] for p in pivot_columns(s.basis))
