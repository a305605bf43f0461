import json

import pytest

from setgrad_leibniz.services.exactlin import RATIONALS
from setgrad_leibniz.services.fileformat import (
    algebra_to_json,
    dump_algebra,
    input_digest,
    load_algebra,
    parse_algebra,
)
from setgrad_leibniz.utils.config import reset_settings
from setgrad_leibniz.utils.errors import AlgebraFileError

from conftest import GF7


def n2_document(**overrides):
    doc = {
        "field": "Q",
        "basis": [
            {"name": "x", "label": "a", "parity": 0},
            {"name": "y", "label": "b", "parity": 0},
        ],
        "products": [
            {"left": "x", "right": "x", "result": [{"basis": "y", "coeff": "1"}]},
        ],
        "distinguished": None,
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_n2(n2):
    alg = parse_algebra(n2_document())
    assert alg.field == RATIONALS
    assert alg == n2


def test_load_examples(examples_dir):
    hsd = load_algebra(examples_dir / "hsd_so3.json")
    assert hsd.field == GF7
    assert hsd.dim == 6
    assert load_algebra(examples_dir / "n2_distinguished.json").distinguished == "b"


@pytest.mark.parametrize("fixture", ["n2", "n2_o", "so3", "hsd", "cyclic"])
def test_round_trip(fixture, request, tmp_path):
    alg = request.getfixturevalue(fixture)
    assert parse_algebra(algebra_to_json(alg)) == alg
    path = dump_algebra(alg, tmp_path / "out" / f"{fixture}.json")
    assert load_algebra(path) == alg


def test_coefficients_accumulate():
    products = [{"left": "x", "right": "x", "result": [
        {"basis": "y", "coeff": "1/2"}, {"basis": "y", "coeff": "1/2"},
    ]}]
    alg = parse_algebra(n2_document(products=products))
    assert alg.products[(0, 0)][1] == 1


@pytest.mark.parametrize(
    "overrides, location",
    [
        ({"products": [{"left": "z", "right": "x", "result": []}]}, "products[0].left"),
        (
            {"products": [{"left": "x", "right": "x", "result": [{"basis": "y", "coeff": "1/0"}]}]},
            "products[0].result[0].coeff",
        ),
        (
            {"products": [{"left": "x", "right": "x", "result": [{"basis": "y", "coeff": "abc"}]}]},
            "products[0].result[0].coeff",
        ),
        ({"field": {"GF": 6}}, "field.GF"),
        ({"basis": [{"name": "x", "label": "a", "parity": 0},
                    {"name": "x", "label": "b", "parity": 0}]}, "basis[1].name"),
        ({"distinguished": "zz"}, "distinguished"),
        ({"extra": 1}, "extra"),
        ({"basis": [{"name": "x", "label": "a", "parity": 2},
                    {"name": "y", "label": "b", "parity": 0}]}, "basis[0].parity"),
    ],
)
def test_parse_errors_carry_location(overrides, location):
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(n2_document(**overrides))
    assert exc.value.location == location


def test_duplicate_product():
    product = {"left": "x", "right": "x", "result": [{"basis": "y", "coeff": "1"}]}
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(n2_document(products=[product, product]))
    assert exc.value.location == "products[1]"


def test_invalid_json():
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra("{not json")
    assert exc.value.location.startswith("line 1")


def test_missing_file(tmp_path):
    with pytest.raises(AlgebraFileError):
        load_algebra(tmp_path / "missing.json")


def test_max_dimension(monkeypatch):
    monkeypatch.setenv("MAX_DIMENSION", "1")
    reset_settings()
    with pytest.raises(AlgebraFileError) as exc:
        parse_algebra(n2_document())
    assert exc.value.location == "basis"


def test_input_digest(tmp_path):
    path = tmp_path / "n2.json"
    path.write_text(n2_document(), encoding="utf-8")
    digest = input_digest(path)
    assert digest.startswith("sha256:")
    assert len(digest) == len("sha256:") + 64
    assert input_digest(path) == digest
