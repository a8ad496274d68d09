import json
from fractions import Fraction as F

import pytest

from isopade.errors import ParseError
from isopade.exact import Poly, TruncatedSeries
from isopade.jets import LocalFraction, ParamJet
from isopade.serialize import (
    decode_matrix,
    decode_poly,
    decode_scalar,
    decode_series,
    encode,
    truncate_jets,
)


def through_json(x):
    return json.loads(json.dumps(encode(x)))


@pytest.mark.parametrize("x", [F(0), F(-7, 3), F(12)])
def test_scalar_roundtrip(x):
    assert decode_scalar(through_json(x)) == x


def test_series_roundtrip():
    s = TruncatedSeries([F(1), F(-1, 2), F(0), F(3, 7)], 5)
    assert decode_series(through_json(s), 5) == s


def test_poly_roundtrip():
    p = Poly([F(1, 3), 0, F(-2)])
    assert decode_poly(through_json(p)) == p
    assert encode(Poly()) == ["0"]


def test_jet_roundtrip():
    j = ParamJet(2, 4, {(0, 0): F(1, 2), (1, 2): -3, (0, 3): F(5, 9)})
    back = decode_scalar(through_json(j), 2, order=4)
    assert back == j and back.order == 4


def test_jet_poly_matrix_roundtrip():
    x = ParamJet.variable(1, 0, 3)
    M = [[Poly([1, x]), Poly([x * x])], [Poly(), Poly([F(2), 0, 1 + x])]]
    back = decode_matrix(through_json(M), lambda v, w: decode_poly(v, 1, w, 3))
    assert back == M


def test_local_fraction_encoding():
    x = ParamJet.variable(1, 0)
    regular = LocalFraction(x * (1 + x), {("x", 0): 1})
    assert encode(regular) == encode(1 + x)
    pole = LocalFraction(1 + x, {("x", 0): 2})
    enc = encode(pole)
    assert enc["denominator"] == [{"factor": "x1", "power": 2}]


def test_truncate_for_display():
    j = ParamJet(1, 9, {(k,): 1 for k in range(8)})
    t = truncate_jets([[Poly([j])]], 3)[0][0][0]
    assert t.order == 3 and t == j


@pytest.mark.parametrize("data, where", [
    (["1", "1/0"], "s[1]"),
    ("1/2", "s"),
    ([], "s"),
])
def test_series_errors_carry_location(data, where):
    with pytest.raises(ParseError, match=r"s"):
        decode_series(data, where="s")


def test_ragged_matrix():
    with pytest.raises(ParseError, match="ragged"):
        decode_matrix([["1"], ["1", "2"]], lambda v, w: decode_scalar(v, where=w))


def test_bad_jet_key():
    with pytest.raises(ParseError):
        decode_scalar({"(1,": "2"}, 1)


def test_encode_rejects_unknown():
    with pytest.raises(TypeError):
        encode(object())
