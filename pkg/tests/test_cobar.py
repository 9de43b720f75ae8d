from collections import Counter
from itertools import product

import pytest
from hypothesis import given, strategies as st

from operadkit.cobar import (IDENTITY, CobarGenerator, TwoAsBasis, ainfty_slice_check, ainfty_table,
                             cobar_differential, d_squared, d_squared_check, delta1, derivation, gamma,
                             mirror, partial_compose, standard_sign)

basis_elements = st.builds(TwoAsBasis, st.integers(0, 3), st.integers(0, 3))


def test_gamma_adds_counts():
    out = gamma(TwoAsBasis(1, 0), [TwoAsBasis(0, 2), TwoAsBasis(1, 1)])
    assert out == TwoAsBasis(2, 3) and out.arity == 6
    with pytest.raises(ValueError):
        gamma(TwoAsBasis(1, 0), [IDENTITY])


@given(basis_elements, basis_elements, basis_elements, st.data())
def test_composition_is_associative(a, b, c, data):
    p = data.draw(st.integers(0, a.arity - 1))
    q = data.draw(st.integers(0, b.arity - 1))
    assert partial_compose(partial_compose(a, p, b), p + q, c) == partial_compose(a, p, partial_compose(b, q, c))


@given(basis_elements)
def test_identity_is_a_unit(a):
    assert gamma(a, [IDENTITY] * a.arity) == a
    assert gamma(IDENTITY, [a]) == a


@pytest.mark.parametrize("c,d", [(1, 0), (0, 1), (1, 1), (2, 1), (0, 3), (2, 2)])
def test_delta1_is_dual_to_partial_composition(c, d):
    # every (outer, slot, inner) with outer ∘_slot inner = μ_cd, neither factor the identity
    expected = []
    for i, j, k, l in product(range(c + 1), range(d + 1), range(c + 1), range(d + 1)):
        outer, inner = TwoAsBasis(i, j), TwoAsBasis(k, l)
        if outer.is_identity or inner.is_identity:
            continue
        for p in range(outer.arity):
            if partial_compose(outer, p, inner) == TwoAsBasis(c, d):
                expected.append((outer, p, inner))
    assert Counter(delta1(c, d)) == Counter(expected)


def test_low_differentials():
    assert len(cobar_differential(1, 0)) == 0 and len(cobar_differential(0, 1)) == 0
    d11 = cobar_differential(1, 1)
    assert d11.signs() == [1, -1, 1, -1]
    assert d11.render() == ("d m[1,1] = + m[1,0](m[0,1],1) - m[1,0](1,m[0,1]) "
                            "+ m[0,1](m[1,0],1) - m[0,1](1,m[1,0])")
    assert str(cobar_differential(1, 0)) == "d m[1,0] = 0"


def test_generator_degrees():
    assert CobarGenerator(2, 1).degree == 2 and CobarGenerator(2, 1).arity == 4
    with pytest.raises(ValueError):
        CobarGenerator(0, 0)


@pytest.mark.parametrize("i,j", [(1, 1), (2, 1), (1, 3), (3, 0), (2, 2)])
def test_term_count_matches_delta1(i, j):
    assert len(cobar_differential(i, j)) == len(delta1(i, j))


@pytest.mark.parametrize("i,j", [(2, 1), (1, 2), (3, 1), (0, 4)])
def test_mirror_symmetry(i, j):
    # swapping * and • maps ∂(m_ij) onto ∂(m_ji) term by term
    ours = Counter((t.coeff, t.outer, t.p, t.inner) for t in mirror(cobar_differential(i, j)))
    theirs = Counter((t.coeff, t.outer, t.p, t.inner) for t in cobar_differential(j, i))
    assert ours == theirs


def test_d_squared_vanishes():
    res = d_squared_check(6)
    assert res and res.checked == 20


def test_wrong_sign_is_caught():
    def bad(p, q, r):
        return -1 if p % 2 else 1

    res = d_squared_check(4, bad)
    assert not res
    assert res.witness["generator"].startswith("m[") and res.witness["coefficient"]


def test_derivation_of_a_corolla_is_the_differential():
    out = derivation(((1, 1), (None, None, None)))
    expected = {}
    for t in cobar_differential(1, 1):
        kids = [None] * t.outer.arity
        kids[t.p] = ((t.inner.i, t.inner.j), tuple([None] * t.inner.arity))
        expected[((t.outer.i, t.outer.j), tuple(kids))] = t.coeff
    assert out == expected


def test_d_squared_explicit_zero():
    assert d_squared(2, 1) == {}
    assert d_squared(2, 2) == {}


def test_ainfty_slice():
    assert ainfty_slice_check(5)
    assert ainfty_table(3) == {(2, 0, 2): 1, (2, 1, 2): -1}
    assert standard_sign(1, 2, 1) == -1
    with pytest.raises(ValueError):
        ainfty_slice_check(1)
