"""Named algebras and H-pairs, and the regression catalog.

Basis orders are fixed: the unit first, then generators, socle last.
Socle extensions append their new directions ``y1..yr`` after the base.
"""

import re
from dataclasses import dataclass

from .algebra import validate_algebra
from .errors import ParseError, UnknownModel
from .exactlin import ONE, ZERO, Scalar, unit_vec
from .hpair import HYPERSURFACE, PROJECTIVE_SPACE, validate_hpair

FAMILIES = {
    "pn_square_zero": ("n",),
    "chain": ("n",),
    "quadric_pair": ("n",),
    "cubic_pair": (),
    "socle_extension": ("base", "r"),
    "counterexample_pair": (),
}

RANGES = {
    "pn_square_zero": "n >= 1; projective-space pair over C[x1..xn]/(xi xj)",
    "chain": "n >= 2; algebra C[x]/(x^n)",
    "quadric_pair": "n >= 1; (C[x1..xn]/(xi xj, xi^2 - xj^2), <x1..xn>)",
    "cubic_pair": "no parameters; (C[x]/(x^4), <x, x^2>)",
    "socle_extension": "base a pair id, r >= 1; adjoins r square-zero socle lines to A and U",
    "counterexample_pair": "no parameters; (C[x]/(x^4), <x, x^3>)",
}


@dataclass(frozen=True)
class ModelId:
    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise UnknownModel(self.name)
        if len(self.params) != len(FAMILIES[self.name]):
            raise ValueError(f"{self.name} takes {len(FAMILIES[self.name])} parameter(s)")
        for key, value in zip(FAMILIES[self.name], self.params):
            if key == "base":
                if not isinstance(value, ModelId):
                    raise ValueError("socle_extension base must be a model id")
                if value.name == "chain":
                    raise ValueError("socle_extension base must be a hypersurface pair")
                continue
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{key} must be an integer")
            low = 2 if self.name == "chain" else 1
            if value < low:
                raise ValueError(f"{self.name}: {key} = {value} is out of range ({key} >= {low})")

    def __str__(self):
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(p) for p in self.params)})"

    def to_json(self):
        out = {"kind": "family", "name": self.name}
        if self.params:
            out["params"] = {
                k: (v.to_json() if isinstance(v, ModelId) else v)
                for k, v in zip(FAMILIES[self.name], self.params)
            }
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            return parse_model_id(obj)
        name = obj.get("name")
        if name not in FAMILIES:
            raise UnknownModel(str(name))
        raw = obj.get("params", {}) or {}
        extra = set(raw) - set(FAMILIES[name])
        if extra:
            raise ValueError(f"{name}: unexpected parameter(s) {sorted(extra)}")
        params = []
        for key in FAMILIES[name]:
            if key not in raw:
                raise ValueError(f"{name}: missing parameter {key}")
            v = raw[key]
            params.append(cls.from_json(v) if key == "base" else v)
        return cls(name, tuple(params))


_TOKEN = re.compile(r"\s*(?:([A-Za-z_]\w*)|(-?\d+)|(.))")


def parse_model_id(text):
    """Parse ids such as ``cubic_pair`` or ``socle_extension(quadric_pair(2),1)``."""
    tokens = []
    for m in _TOKEN.finditer(text.strip()):
        name, num, sym = m.groups()
        if name:
            tokens.append(("name", name))
        elif num:
            tokens.append(("int", int(num)))
        elif sym and not sym.isspace():
            tokens.append(("sym", sym))
    pos = 0

    def expect(kind, value=None):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != kind or (value is not None and tokens[pos][1] != value):
            found = tokens[pos][1] if pos < len(tokens) else "end of input"
            raise ParseError(f"model id {text!r}: unexpected {found!r}")
        pos += 1
        return tokens[pos - 1][1]

    def item():
        nonlocal pos
        if pos < len(tokens) and tokens[pos][0] == "int":
            pos += 1
            return tokens[pos - 1][1]
        name = expect("name")
        if name not in FAMILIES:
            raise UnknownModel(name)
        params = []
        if pos < len(tokens) and tokens[pos] == ("sym", "("):
            pos += 1
            params.append(item())
            while pos < len(tokens) and tokens[pos] == ("sym", ","):
                pos += 1
                params.append(item())
            expect("sym", ")")
        return ModelId(name, tuple(params))

    result = item()
    if pos != len(tokens):
        raise ParseError(f"model id {text!r}: trailing input")
    if not isinstance(result, ModelId):
        raise ParseError(f"model id {text!r}: expected a family name")
    return result


# --- builders ---------------------------------------------------------------


def chain_algebra(n):
    """``C[x]/(x^n)`` in the basis ``1, x, ..., x^(n-1)``."""
    if n < 2:
        raise ValueError("chain needs n >= 2")
    table = {}
    for i in range(1, n):
        for j in range(i, n):
            if i + j < n:
                table[(i, j)] = unit_vec(n, i + j)
    names = ["1", "x"] + [f"x^{k}" for k in range(2, n)]
    return validate_algebra(n, table, names)


def chain_pair(n, exponents=None):
    """Hypersurface pair on ``C[x]/(x^n)``; U defaults to ``<x, ..., x^(n-2)>``."""
    A = chain_algebra(n)
    exponents = range(1, n - 1) if exponents is None else exponents
    return validate_hpair(A, [unit_vec(n, e) for e in exponents])


def chain_pn(n):
    A = chain_algebra(n)
    return validate_hpair(A, [unit_vec(n, i) for i in range(1, n)], PROJECTIVE_SPACE)


def pn_square_zero(n):
    if n < 1:
        raise ValueError("pn_square_zero needs n >= 1")
    A = validate_algebra(n + 1, {}, ["1"] + [f"x{i}" for i in range(1, n + 1)])
    return validate_hpair(A, [unit_vec(n + 1, i) for i in range(1, n + 1)], PROJECTIVE_SPACE)


def quadric_gram(gram):
    """Pair with ``xi xj = gram[i][j] q`` on basis ``1, x1..xn, q``; U = <x1..xn>."""
    n = len(gram)
    dim = n + 2
    table = {}
    for i in range(n):
        if len(gram[i]) != n:
            raise ValueError("gram matrix must be square")
        for j in range(i, n):
            g = Scalar.coerce(gram[i][j])
            if g != Scalar.coerce(gram[j][i]):
                raise ValueError("gram matrix must be symmetric")
            if g:
                table[(i + 1, j + 1)] = tuple(g if k == dim - 1 else ZERO for k in range(dim))
    names = ["1"] + [f"x{i}" for i in range(1, n + 1)] + ["q"]
    A = validate_algebra(dim, table, names)
    return validate_hpair(A, [unit_vec(dim, i) for i in range(1, n + 1)])


def quadric_pair(n):
    if n < 1:
        raise ValueError("quadric_pair needs n >= 1")
    return quadric_gram([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def cubic_pair():
    return chain_pair(4, (1, 2))


def counterexample_pair():
    return chain_pair(4, (1, 3))


def socle_extension(base, r):
    """Adjoin ``y1..yr`` with ``y m = 0`` to the algebra and to U."""
    if r < 1:
        raise ValueError("socle_extension needs r >= 1")
    A = base.algebra
    n = A.dim
    dim = n + r
    pad = (ZERO,) * r
    table = {k: tuple(v) + pad for k, v in A.table.items()}
    names = list(A.basis_names) + [f"y{i}" for i in range(1, r + 1)]
    B = validate_algebra(dim, table, names)
    basis = [tuple(u) + pad for u in base.basis] + [unit_vec(dim, n + i) for i in range(r)]
    return validate_hpair(B, basis, base.mode)


def build(model):
    """Build the pair (or, for ``chain``, the algebra) named by ``model``."""
    if isinstance(model, str):
        model = parse_model_id(model)
    name, params = model.name, model.params
    if name == "chain":
        return chain_algebra(*params)
    if name == "pn_square_zero":
        return pn_square_zero(*params)
    if name == "quadric_pair":
        return quadric_pair(*params)
    if name == "cubic_pair":
        return cubic_pair()
    if name == "counterexample_pair":
        return counterexample_pair()
    if name == "socle_extension":
        base, r = params
        if base.name == "pn_square_zero":
            raise ValueError("socle_extension base must be a hypersurface pair")
        return socle_extension(build(base), r)
    raise UnknownModel(name)


# --- catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One pair with its certified verdict.

    ``paper_claim`` is set where the paper states a different outcome than
    the one that can be certified.
    """

    key: str
    expected: str
    certificate: str
    paper_claim: str = None

    def build(self):
        return CATALOG_BUILDERS[self.key]()


CATALOG_BUILDERS = {}


def _register(key, builder):
    CATALOG_BUILDERS[key] = builder
    return key


for _n in range(1, 5):
    _register(f"quadric_pair({_n})", lambda n=_n: quadric_pair(n))
_register("cubic_pair", cubic_pair)
_register("counterexample_pair", counterexample_pair)
_register("socle_extension(quadric_pair(2),1)", lambda: socle_extension(quadric_pair(2), 1))
for _r in (1, 2):
    _register(f"socle_extension(cubic_pair,{_r})", lambda r=_r: socle_extension(cubic_pair(), r))
_register("chain(5)[x,x^2,x^3]", lambda: chain_pair(5))
for _n in range(1, 4):
    _register(f"pn_square_zero({_n})", lambda n=_n: pn_square_zero(n))
_register("chain(3)[projective_space]", lambda: chain_pn(3))

CATALOG = (
    *(CatalogEntry(f"quadric_pair({n})", "yes", "CoreClassification") for n in range(1, 5)),
    CatalogEntry("cubic_pair", "yes", "CoreClassification"),
    CatalogEntry("socle_extension(quadric_pair(2),1)", "no", "SocleExtension", paper_claim="yes"),
    CatalogEntry("socle_extension(cubic_pair,1)", "no", "UnreachableOrbit", paper_claim="yes"),
    CatalogEntry("socle_extension(cubic_pair,2)", "no", "UnreachableOrbit", paper_claim="yes"),
    CatalogEntry("chain(5)[x,x^2,x^3]", "no", "DegreeGate"),
    CatalogEntry("counterexample_pair", "no", "UnreachableOrbit"),
    *(CatalogEntry(f"pn_square_zero({n})", "yes", "PnSquareZero") for n in range(1, 4)),
    CatalogEntry("chain(3)[projective_space]", "no", "PnNonSquareZero"),
)


def catalog_pairs():
    return [(e, e.build()) for e in CATALOG]


__all__ = [
    "CATALOG",
    "CatalogEntry",
    "FAMILIES",
    "HYPERSURFACE",
    "ModelId",
    "RANGES",
    "build",
    "catalog_pairs",
    "chain_algebra",
    "chain_pair",
    "chain_pn",
    "counterexample_pair",
    "cubic_pair",
    "parse_model_id",
    "pn_square_zero",
    "quadric_gram",
    "quadric_pair",
    "socle_extension",
]
