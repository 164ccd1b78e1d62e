"""Sparse multivariate polynomials over Q(i) and projective points.

Monomials are exponent tuples aligned with an ordered variable list.
Printing uses graded-lexicographic order (highest first), so the text form
of a polynomial is deterministic.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionMismatch,
    NotHomogeneous,
    ParseError,
    UnknownVariable,
    ZeroPolynomial,
)
from .exactlin import ONE, ZERO, Scalar, format_scalar, rank


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != len(variables):
                    raise DimensionMismatch("exponent vector length differs from variable count")
                c = Scalar.coerce(c)
                if c:
                    clean[e] = c
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, variables, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "variables", variables)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, c, variables):
        variables = tuple(variables)
        c = Scalar.coerce(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        try:
            idx = variables.index(name)
        except ValueError:
            raise UnknownVariable(name) from None
        e = tuple(1 if j == idx else 0 for j in range(len(variables)))
        return cls._raw(variables, {e: ONE})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise UnknownVariable(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return MultiPoly.const(other, self.variables)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self.terms == MultiPoly.const(other, self.variables).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.variables, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.coerce(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return MultiPoly._raw(self.variables, {e: a * c for e, a in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly._raw(self.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * Scalar.coerce(other).inverse()
        if isinstance(other, MultiPoly) and other.is_constant() and other:
            return self * other.constant_term().inverse()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), ZERO)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, names):
        idx = [self.variables.index(n) for n in names]
        if not self.terms:
            return -1
        return max(sum(e[j] for j in idx) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def used_variables(self):
        return tuple(v for j, v in enumerate(self.variables) if any(e[j] for e in self.terms))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), ZERO)

    def extend(self, variables):
        """Re-express this polynomial over a list of variables containing its own."""
        variables = tuple(variables)
        try:
            idx = [variables.index(v) for v in self.variables]
        except ValueError as exc:
            raise UnknownVariable(str(exc)) from None
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for j, k in zip(idx, e):
                ne[j] = k
            terms[tuple(ne)] = c
        return MultiPoly._raw(variables, terms)

    def derivative(self, name):
        try:
            j = self.variables.index(name)
        except ValueError:
            raise UnknownVariable(name) from None
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                ne = list(e)
                ne[j] -= 1
                terms[tuple(ne)] = c * e[j]
        return MultiPoly._raw(self.variables, terms)

    def substitute(self, mapping, variables=None):
        """Simultaneously replace variables by polynomials.

        ``mapping`` sends variable names to polynomials over ``variables``
        (defaults to this polynomial's variables); unmapped variables are
        kept and must exist in the target variable list.
        """
        target = tuple(variables) if variables is not None else self.variables
        for name in mapping:
            if name not in self.variables:
                raise UnknownVariable(name)
        images = []
        for name in self.variables:
            if name in mapping:
                img = mapping[name]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.const(img, target)
                elif img.variables != target:
                    img = img.extend(target)
                images.append(img)
            else:
                images.append(MultiPoly.var(name, target) if any(
                    e[self.variables.index(name)] for e in self.terms) else None)
        powers = [dict() for _ in images]

        def pw(j, k):
            cache = powers[j]
            if k not in cache:
                cache[k] = images[j] ** k
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target)
            for j, k in enumerate(e):
                if k:
                    term = term * pw(j, k)
            out = out + term
        return out

    def evaluate(self, values):
        """Exact value at a point given as a mapping or a sequence aligned with variables."""
        if isinstance(values, dict):
            vals = []
            for v in self.variables:
                if v in values:
                    vals.append(Scalar.coerce(values[v]))
                elif any(e[self.variables.index(v)] for e in self.terms):
                    raise UnknownVariable(f"no value for {v}")
                else:
                    vals.append(ZERO)
        else:
            vals = [Scalar.coerce(x) for x in values]
            if len(vals) != len(self.variables):
                raise DimensionMismatch("point dimension differs from variable count")
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, variables={self.variables})"


def _monomial_str(variables, e):
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p):
    if not p.terms:
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(p.variables, e)
        negative = c.is_real() and c.re < 0
        mag = -c if negative else c
        if c.is_real():
            coef = format_scalar(mag)
        else:
            coef = "(" + format_scalar(mag) + ")"
        if mono:
            body = mono if mag == 1 else f"{coef}*{mono}"
        else:
            body = coef
        if idx == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _var_sort_key(name):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", name)
    prefix, num = (m.group(1), m.group(2)) if m else (name, "")
    rank_ = {"z": 0, "s": 1, "r": 2, "t": 3}.get(prefix, 4)
    return (rank_, prefix, int(num) if num else -1)


def default_variable_order(names):
    return tuple(sorted(set(names), key=_var_sort_key))


def parse_poly(text, variables=None):
    """Parse text such as ``3*z0^2*z3 - 3*z0*z1*z2 + z1^3``.

    ``i`` denotes the imaginary unit.  Without an explicit variable list the
    identifiers found are ordered z-variables first, then s, r, t.
    """
    tokens = []
    pos = 0
    text = str(text)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character at position {pos}")
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("id", m.group(2), start))
        else:
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r} at position {start}")
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    if variables is None:
        variables = default_variable_order(t[1] for t in tokens if t[0] == "id" and t[1] != "i")
    variables = tuple(variables)
    if "i" in variables:
        raise ParseError("'i' is reserved for the imaginary unit")
    state = {"k": 0}

    def peek():
        k = state["k"]
        return tokens[k] if k < len(tokens) else ("end", None, len(text))

    def take():
        tok = peek()
        state["k"] += 1
        return tok

    def expect(op):
        tok = take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r} at position {tok[2]}")

    def expr():
        left = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            right = term()
            left = left + right if op == "+" else left - right
        return left

    def term():
        left = unary()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()
            right = unary()
            if op[1] == "*":
                left = left * right
            else:
                if not right.is_constant() or not right:
                    raise ParseError(f"division by non-constant or zero at position {op[2]}")
                left = left / right
        return left

    def unary():
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            take()
            inner = unary()
            return -inner if tok[1] == "-" else inner
        return power()

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            tok = take()
            if tok[0] != "num":
                raise ParseError(f"expected integer exponent at position {tok[2]}")
            return base ** tok[1]
        return base

    def atom():
        tok = take()
        if tok[0] == "num":
            return MultiPoly.const(tok[1], variables)
        if tok[0] == "id":
            if tok[1] == "i":
                return MultiPoly.const(Scalar(0, 1), variables)
            if tok[1] not in variables:
                raise UnknownVariable(f"unknown variable {tok[1]!r} at position {tok[2]}")
            return MultiPoly.var(tok[1], variables)
        if tok[0] == "op" and tok[1] == "(":
            inner = expr()
            expect(")")
            return inner
        raise ParseError(f"unexpected token at position {tok[2]}")

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input at position {peek()[2]}")
    return result


def _gauss_from_scalar(c):
    return (c.re.numerator, c.im.numerator)


def _gauss_divmod(x, y):
    a, b = x
    c, d = y
    n = c * c + d * d
    # x * conj(y) / n, rounded componentwise
    re_num = a * c + b * d
    im_num = b * c - a * d
    q = (_round_div(re_num, n), _round_div(im_num, n))
    r = (a - (q[0] * c - q[1] * d), b - (q[0] * d + q[1] * c))
    return q, r


def _round_div(p, q):
    return (2 * p + q) // (2 * q)


def gaussian_gcd(x, y):
    while y != (0, 0):
        _, r = _gauss_divmod(x, y)
        x, y = y, r
    return x


def canonicalize(p):
    """The unique associate of ``p`` with coprime Gaussian-integer coefficients.

    The leading coefficient (graded-lex) is rotated by a unit into the
    quadrant ``re > 0, im >= 0``.
    """
    if not p.terms:
        raise ZeroPolynomial("cannot canonicalize the zero polynomial")
    den = 1
    for c in p.terms.values():
        for part in (c.re, c.im):
            den = den * part.denominator // gcd(den, part.denominator)
    q = p * den
    g = (0, 0)
    for c in q.terms.values():
        g = gaussian_gcd(g, _gauss_from_scalar(c))
    q = q * Scalar(g[0], g[1]).inverse()
    lead = q.leading_term()[1]
    for unit in (Scalar(1), Scalar(0, -1), Scalar(-1), Scalar(0, 1)):
        z = lead * unit
        if z.re > 0 and z.im >= 0:
            return q * unit
    raise AssertionError("unit normalization failed")


def essential_variable_count(p):
    """Rank of the span of the first partial derivatives of a form."""
    if not p.terms:
        raise ZeroPolynomial("essential variable count of the zero polynomial")
    if not p.is_homogeneous():
        raise NotHomogeneous("essential variable count requires a homogeneous polynomial")
    partials = [p.derivative(v) for v in p.variables]
    monomials = sorted({e for d in partials for e in d.terms})
    if not monomials:
        return 0
    matrix = [[d.coefficient(e) for e in monomials] for d in partials]
    return rank(matrix)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of projective space; the first nonzero coordinate is 1."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(Scalar.coerce(c) for c in self.coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("projective point with all coordinates zero")
        inv = lead.inverse()
        object.__setattr__(self, "coords", tuple(c * inv if c else ZERO for c in coords))

    def __str__(self):
        return "[" + ":".join(format_scalar(c) for c in self.coords) + "]"

    def __len__(self):
        return len(self.coords)


def parse_point(text):
    s = "".join(str(text).split())
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"projective point must be bracketed: {text!r}")
    from .exactlin import parse_scalar

    return ProjectivePoint(tuple(parse_scalar(c) for c in s[1:-1].split(":")))


def z_variables(n_plus_one):
    return tuple(f"z{i}" for i in range(n_plus_one))


def s_variables(k):
    return tuple(f"s{i}" for i in range(1, k + 1))
