import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reglab import PadicField, RationalFunction
from reglab.checks import random_alog_prime
from reglab.fixtures import closed_fixture
from reglab.index import make_triple_data
from reglab.serialize import (
    ParseError,
    element_from_json,
    element_to_json,
    omega_from_json,
    padic_from_json,
    padic_to_json,
    ratfunc_from_json,
    ratfunc_to_json,
    series_from_json,
    series_to_json,
    triple_data_from_json,
    triple_data_to_json,
)

K7 = PadicField(7, 20)
z = RationalFunction.z()


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=100).filter(lambda x: x.denominator % 7 or x == 0))
def test_padic_round_trip(x):
    v = K7(x)
    doc = json.loads(json.dumps(padic_to_json(v)))
    assert padic_from_json(K7, doc) == v


def test_padic_literal_forms(K):
    assert padic_to_json(K(0)) == {"val": 20, "digits": [], "prec": 20}
    assert padic_to_json(K(50)) == {"val": 0, "digits": [1, 0, 1], "prec": 20}
    assert padic_from_json(K, "3/14") == K(3) / 14
    with pytest.raises(ParseError):
        padic_from_json(K, "three")
    with pytest.raises(ParseError):
        padic_from_json(K, True)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_series_and_triple_data_round_trip(seed):
    rng = random.Random(seed)
    F = random_alog_prime(rng, K7)
    assert series_from_json(K7, json.loads(json.dumps(series_to_json(F)))).agrees(F)
    d = make_triple_data(F, random_alog_prime(rng, K7), random_alog_prime(rng, K7))
    F2, G2, H2, over = triple_data_from_json(K7, json.loads(json.dumps(triple_data_to_json(d))))
    assert G2.agrees(d.G) and over["I_GdH"].agrees(d.I_GdH)


def test_rational_functions():
    f = 3 * (z - 2) ** 2 / (z * (z + 1))
    assert ratfunc_from_json(ratfunc_to_json(f)) == f
    assert ratfunc_from_json("3*(z-2)**2/(z*(z+1))") == f
    assert ratfunc_from_json({"lead": "3", "factors": [["2", 2], ["0", -1], ["-1", -1]]}) == f
    with pytest.raises(ParseError):
        ratfunc_from_json("z +* 1")


def test_elements_and_forms():
    tp, alpha, omega = closed_fixture(random.Random(4))
    back = element_from_json(json.loads(json.dumps(element_to_json(alpha))))
    assert back.terms == alpha.terms
    assert omega_from_json({"exact": "1/z"}).h == 1 / z
    assert omega_from_json({"form": "-1/z**2"}).h == 1 / z
    assert omega_from_json(0).is_zero()
    with pytest.raises(ParseError):
        element_from_json({"c": 1})
    with pytest.raises(ParseError):
        element_from_json([{"c": 1, "g": "1", "f": "z"}])
