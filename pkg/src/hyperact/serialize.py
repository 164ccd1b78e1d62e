"""JSON forms of algebras, pairs and reports.

Output is deterministic: keys are sorted and scalars use the canonical
text syntax, so equal inputs give byte-identical documents.
"""

import json

from .algebra import validate_algebra
from .errors import MalformedTable, ParseError
from .exactlin import format_scalar, parse_scalar
from .hpair import HPair, HYPERSURFACE, MODES, PROJECTIVE_SPACE, validate_hpair
from .models import ModelId, build


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _scalar(value, where):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if isinstance(value, float) and not value.is_integer():
            raise ParseError(f"{where}: write non-integer scalars as strings such as \"1/2\"")
        value = str(int(value))
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a scalar string, got {value!r}")
    try:
        return parse_scalar(value)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _vector(values, where):
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected a list of scalars")
    return tuple(_scalar(v, f"{where}[{k}]") for k, v in enumerate(values))


def algebra_to_json(A):
    table = []
    for (i, j) in sorted(A.table):
        product = [[k, format_scalar(c)] for k, c in enumerate(A.table[(i, j)]) if c]
        table.append({"i": i, "j": j, "product": product})
    return {
        "kind": "structure_constants",
        "dim": A.dim,
        "basis_names": list(A.basis_names),
        "table": table,
    }


def algebra_from_json(obj, where="algebra"):
    """A LocalAlgebra, or an HPair when a family names a whole pair."""
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    kind = obj.get("kind")
    if kind == "family":
        return build(ModelId.from_json(obj))
    if kind != "structure_constants":
        raise ParseError(f"{where}: kind must be \"structure_constants\" or \"family\"")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ParseError(f"{where}.dim: expected an integer")
    names = obj.get("basis_names")
    entries = obj.get("table", [])
    if not isinstance(entries, list):
        raise ParseError(f"{where}.table: expected a list")
    table = {}
    for n, entry in enumerate(entries):
        at = f"{where}.table[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "product"} <= set(entry):
            raise ParseError(f"{at}: expected an object with i, j and product")
        i, j = entry["i"], entry["j"]
        out = [parse_scalar("0")] * dim
        for m, pair in enumerate(entry["product"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"{at}.product[{m}]: expected [index, scalar]")
            k = pair[0]
            if isinstance(k, str) and names and k in names:
                k = names.index(k)
            if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k < dim:
                raise MalformedTable(f"{at}.product[{m}]: basis index {k!r} out of range")
            out[k] = out[k] + _scalar(pair[1], f"{at}.product[{m}][1]")
        key = (i, j)
        if key in table and table[key] != tuple(out):
            raise MalformedTable(f"{at}: duplicate entry for ({i},{j})")
        table[key] = tuple(out)
    return validate_algebra(dim, table, names)


def pair_to_json(p):
    return {
        "algebra": algebra_to_json(p.algebra),
        "subspace": {"basis": [[format_scalar(c) for c in v] for v in p.basis]},
        "mode": p.mode,
    }


def pair_from_json(obj, where="pair"):
    """Read a pair object; a bare family id stands for the family's pair."""
    if isinstance(obj, dict) and obj.get("kind") == "family":
        obj = {"algebra": obj}
    if not isinstance(obj, dict) or "algebra" not in obj:
        raise ParseError(f"{where}: expected an object with an algebra")
    mode = obj.get("mode")
    if mode is not None and mode not in MODES:
        raise ParseError(f"{where}.mode: expected one of {', '.join(MODES)}")
    alg = algebra_from_json(obj["algebra"], f"{where}.algebra")
    sub = obj.get("subspace")
    if isinstance(alg, HPair):
        if sub is None and mode in (None, alg.mode):
            return alg
        alg = alg.algebra
    mode = mode or HYPERSURFACE
    if sub is None:
        if mode != PROJECTIVE_SPACE:
            raise ParseError(f"{where}.subspace: required in hypersurface mode")
        basis = [tuple(1 if k == i else 0 for k in range(alg.dim)) for i in range(1, alg.dim)]
        return validate_hpair(alg, [_vector([str(x) for x in b], where) for b in basis], mode)
    if not isinstance(sub, dict) or not isinstance(sub.get("basis"), list):
        raise ParseError(f"{where}.subspace: expected an object with a basis list")
    vectors = [_vector(v, f"{where}.subspace.basis[{k}]") for k, v in enumerate(sub["basis"])]
    for k, v in enumerate(vectors):
        if len(v) != alg.dim:
            raise ParseError(f"{where}.subspace.basis[{k}]: expected {alg.dim} coordinates")
    return validate_hpair(alg, vectors, mode)


def load_pair(text, source="<input>"):
    return pair_from_json(loads(text, source))


__all__ = [
    "algebra_from_json",
    "algebra_to_json",
    "dumps",
    "load_pair",
    "loads",
    "pair_from_json",
    "pair_to_json",
]
