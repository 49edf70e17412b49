import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreath_states.perm import (
    Permutation,
    compose,
    from_cycles,
    omega,
    parse_perm,
    sigma,
    transposition,
)

perms = st.permutations(list(range(1, 7))).map(lambda img: Permutation({i + 1: v for i, v in enumerate(img)}))


@given(perms, perms, perms)
def test_composition_is_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(perms, st.integers(1, 8))
def test_inverse_undoes(a, i):
    assert a.inverse()(a(i)) == i
    assert compose(a, a.inverse()).is_identity()


@given(perms)
def test_str_round_trips(a):
    assert parse_perm(str(a)) == a


@given(perms, perms)
def test_sign_is_multiplicative(a, b):
    assert compose(a, b).sign() == a.sign() * b.sign()


def test_compose_applies_right_factor_first():
    a, b = transposition(1, 2), transposition(2, 3)
    assert compose(a, b)(3) == a(b(3)) == 1


def test_cycles_start_at_minimum_and_sorted():
    p = parse_perm("(5 3 4)(2 1)")
    assert p.cycles() == [[1, 2], [3, 4, 5]]
    assert str(p) == "(1 2)(3 4 5)"
    assert p.cycle_type() == [3, 2]


def test_named_permutations():
    assert sigma(4) == parse_perm("(1 2 3 4)")
    assert sigma(1).is_identity()
    assert omega(2) == parse_perm("(1 3)(2 4)")


def test_identity_text():
    assert parse_perm("()").is_identity()
    assert str(Permutation()) == "()"


def test_restrict_to_orbit():
    p = parse_perm("(1 2)(3 4 5)")
    assert p.restrict_to([3, 4, 5]) == parse_perm("(3 4 5)")


def test_to_array_is_zero_based():
    assert parse_perm("(1 3)").to_array(3) == [2, 1, 0]
    with pytest.raises(ValueError):
        parse_perm("(1 5)").to_array(3)


@pytest.mark.parametrize("text", ["", "(1 2", "(1 x)", "(1 2)(2 3)", "(0 1)", "abc", "(1 2) junk"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_perm(text)


def test_mapping_must_be_bijection():
    with pytest.raises(ValueError):
        Permutation({1: 2, 2: 2})


def test_sign_matches_inversion_count():
    for img in itertools.permutations(range(1, 5)):
        p = Permutation({i + 1: v for i, v in enumerate(img)})
        inv = sum(1 for i, j in itertools.combinations(range(4), 2) if img[i] > img[j])
        assert p.sign() == (-1) ** inv


def test_from_cycles_ignores_singletons():
    assert from_cycles([[1], [2, 3]]) == transposition(2, 3)
