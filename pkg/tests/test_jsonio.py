import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from operadkit import jsonio
from operadkit.jsonio import MalformedInput
from operadkit.transfer import ContractError, build_retract, random_complex, random_dg_as2, transfer

GOOD = {"degrees": {"0": ["x", "y"], "1": ["u"]}, "d": [["u", "y", "1/2"]]}


def test_complex_round_trip():
    A = jsonio.complex_from_data(GOOD)
    assert A.basis == ["x", "y", "u"]
    assert A.d[1, 2] == Fraction(1, 2)
    assert jsonio.complex_to_data(A) == {"degrees": GOOD["degrees"], "d": [["u", "y", "1/2"]]}


@pytest.mark.parametrize("bad, field", [
    ({"degrees": {"0": ["x"]}, "extra": 1}, "<top level>"),
    ({"degrees": {"zero": ["x"]}}, "degrees"),
    ({"degrees": {"0": ["x"]}, "d": [["x", "x", "0.5"]]}, "d/0/2"),
    ({"degrees": {"0": ["x"]}, "d": [["x", "x"]]}, "d/0"),
    ({"d": []}, "<top level>"),
])
def test_schema_errors_name_the_field(bad, field):
    with pytest.raises(MalformedInput) as exc:
        jsonio.complex_from_data(bad)
    assert f"bad field {field}" in str(exc.value)


def test_not_json_at_all():
    with pytest.raises(MalformedInput):
        jsonio.load_complex("{degrees: }")


def test_contract_errors():
    with pytest.raises(ContractError, match="unknown"):
        jsonio.complex_from_data({"degrees": {"0": ["x"]}, "d": [["z", "x", "1"]]})
    with pytest.raises(ContractError, match="twice"):
        jsonio.algebra_from_data(dict(GOOD, star=[["x", "x", []], ["x", "x", []]]))
    with pytest.raises(ContractError):  # not associative: (x*x)*x = y*x = 0 but x*(x*x) = x*y = x
        jsonio.algebra_from_data(dict(GOOD, star=[["x", "x", [["y", "1"]]], ["x", "y", [["x", "1"]]]]))


@pytest.mark.parametrize("seed", range(8))
def test_algebra_round_trip(seed):
    alg = random_dg_as2(seed, {0: 3, 1: 3})
    data = jsonio.algebra_to_data(alg)
    again = jsonio.algebra_from_data(json.loads(jsonio.dumps(data)))
    assert again.star == alg.star and again.bullet == alg.bullet and again.complex.d == alg.complex.d
    assert jsonio.dumps(jsonio.algebra_to_data(again)) == jsonio.dumps(data)


@pytest.mark.parametrize("seed", range(5))
def test_structure_round_trip(seed):
    alg = random_dg_as2(seed, {0: 3, 1: 3})
    r = build_retract(alg.complex)
    t = transfer(alg, r, 3)
    text = jsonio.dumps(jsonio.structure_to_data(t))
    V = jsonio.load_complex(jsonio.dumps(jsonio.complex_to_data(r.small)))
    back = jsonio.load_structure(text, V)
    assert {k: v for k, v in back.ops.items() if v} == {k: v for k, v in t.ops.items() if v}
    assert jsonio.dumps(jsonio.structure_to_data(back)) == text


def test_structure_contracts():
    V = jsonio.complex_from_data({"degrees": {"0": ["a"], "1": ["b"]}})
    with pytest.raises(ContractError, match="takes 3 inputs"):
        jsonio.structure_from_data({"(1,1)": [[["a", "a"], [["b", "1"]]]]}, V)
    with pytest.raises(ContractError, match="degree"):
        jsonio.structure_from_data({"(1,0)": [[["a", "a"], [["b", "1"]]]]}, V)
    with pytest.raises(ContractError, match="not an operation"):
        jsonio.structure_from_data({"(0,0)": []}, V)
    with pytest.raises(MalformedInput):
        jsonio.structure_from_data({"m10": []}, V)


@given(st.integers(0, 10**6))
def test_dumps_is_canonical(seed):
    A = random_complex(seed, {0: 2, 1: 2, 2: 1})
    data = jsonio.complex_to_data(A)
    shuffled = json.loads(json.dumps(dict(reversed(list(data.items())))))
    assert jsonio.dumps(shuffled) == jsonio.dumps(data)
    assert json.loads(jsonio.dumps(data)) == data
    assert jsonio.dumps({}) == "{}\n"
