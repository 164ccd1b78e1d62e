import json

import pytest
from hypothesis import given

from hyperact.errors import AlgebraValidationError, DoesNotGenerate, MalformedTable, ParseError
from hyperact.hpair import PROJECTIVE_SPACE
from hyperact.models import CATALOG, cubic_pair, pn_square_zero, quadric_pair
from hyperact.serialize import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    load_pair,
    loads,
    pair_from_json,
    pair_to_json,
)

from conftest import scalars


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.key)
def test_pair_roundtrip(entry):
    p = entry.build()
    text = dumps(pair_to_json(p))
    q = load_pair(text)
    assert q == p
    assert dumps(pair_to_json(q)) == text


def test_dumps_is_stable():
    text = dumps(pair_to_json(cubic_pair()))
    assert text.endswith("\n")
    assert text == dumps(json.loads(text))


def test_scalar_strings_roundtrip():
    p = quadric_pair(2)
    obj = pair_to_json(p)
    obj["subspace"]["basis"][1] = ["0", "1", "i", "0"]
    obj["subspace"]["basis"][0] = ["0", "1", "-i", "0"]
    q = pair_from_json(obj)
    assert q.U == p.U


@given(scalars())
def test_scalar_text_roundtrip(c):
    obj = pair_to_json(cubic_pair())
    obj["subspace"]["basis"][0] = ["0", "1", str(c), "0"]
    q = pair_from_json(json.loads(dumps(obj)))
    assert q.basis[0][2] == c


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        loads('{\n  "a": 1,\n}\n', "x.json")
    assert "line 3" in str(info.value) and "column 1" in str(info.value)


def test_family_forms():
    assert pair_from_json({"kind": "family", "name": "cubic_pair"}) == cubic_pair()
    assert pair_from_json({"algebra": {"kind": "family", "name": "quadric_pair", "params": {"n": 2}}}) == quadric_pair(2)


def test_projective_default_subspace():
    obj = {"algebra": algebra_to_json(pn_square_zero(2).algebra), "mode": PROJECTIVE_SPACE}
    assert pair_from_json(obj) == pn_square_zero(2)


def test_hypersurface_needs_subspace():
    with pytest.raises(ParseError):
        pair_from_json({"algebra": algebra_to_json(cubic_pair().algebra)})


def test_basis_names_as_indices():
    obj = algebra_to_json(cubic_pair().algebra)
    for entry in obj["table"]:
        entry["product"] = [[obj["basis_names"][k], c] for k, c in entry["product"]]
    assert algebra_from_json(obj) == cubic_pair().algebra


@pytest.mark.parametrize("mutate,exc,where", [
    (lambda o: o["subspace"]["basis"][1].__setitem__(2, "x"), ParseError, "subspace.basis[1]"),
    (lambda o: o["subspace"]["basis"][0].pop(), ParseError, "subspace.basis[0]"),
    (lambda o: o.__setitem__("mode", "plane"), ParseError, "mode"),
    (lambda o: o["algebra"]["table"][0]["product"].__setitem__(0, [9, "1"]), MalformedTable, "table[0]"),
    (lambda o: o["algebra"].__setitem__("kind", "matrix"), ParseError, "algebra"),
])
def test_error_paths(mutate, exc, where):
    obj = pair_to_json(cubic_pair())
    mutate(obj)
    with pytest.raises(exc) as info:
        pair_from_json(obj)
    assert where in str(info.value)


def test_validation_errors_surface():
    obj = pair_to_json(cubic_pair())
    obj["subspace"]["basis"] = [["0", "0", "1", "0"], ["0", "0", "0", "1"]]
    with pytest.raises(DoesNotGenerate):
        pair_from_json(obj)
    bad = {"kind": "structure_constants", "dim": 2, "table": [{"i": 1, "j": 1, "product": [[1, "1"]]}]}
    with pytest.raises(AlgebraValidationError):
        algebra_from_json(bad)
