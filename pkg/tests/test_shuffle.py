from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from canonform import combinatorics as cb
from canonform import trees as tr
from canonform.shuffle import (
    DualVector,
    free_bracket,
    free_commutator_word,
    j_of,
    one,
    residue_dual,
    residue_sign,
    star_dual,
    star_power,
    word_of,
)


def ind(J, r=2):
    return DualVector.indicator(J, r)


def test_word_of_reverses():
    assert word_of((1, 2, 2)) == (2, 2, 1)
    assert j_of(word_of((1, 2, 1, 3))) == (1, 2, 1, 3)


def test_star_of_generators():
    x = star_dual(ind((1,)), ind((2,)))
    assert dict(x) == {(1, 2): 1, (2, 1): 1}


def test_star_square_has_multiplicity():
    assert star_dual(ind((1,), 1), ind((1,), 1)) == ind((1, 1), 1) * 2


def test_star_with_zero_and_one():
    x = ind((1, 2))
    assert star_dual(x, DualVector.zero((1, 0))) == DualVector.zero((2, 1))
    assert star_dual(x, one(2)) == x
    assert star_power(x, 0) == one(2)


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        star_dual(ind((1,), 1), ind((1,), 2))


def test_residue_dual_against_tree_route():
    # z -> t -> s has coordinate 1 at J = (1, 2); contracting z - t leaves z -> s
    x = ind((1, 2))
    assert residue_dual(x, 1) == DualVector.indicator((2,), 2)
    assert residue_dual(x, 2) == DualVector.zero((1, 0))
    T = tr.str_tree((1, 1), [(1, 1), (2, 1)])
    assert tr.to_dual(tr.residue(T, 1, 1)) == residue_dual(tr.to_dual(T), 1)


def test_residue_dual_needs_colour():
    with pytest.raises(ValueError):
        residue_dual(ind((1, 1)), 2)


def test_json_round_trip():
    x = ind((1, 2, 1)) * Fraction(-3, 7) + ind((2, 1, 1))
    assert DualVector.from_json(x.to_json()) == x
    assert x.to_json()["coords"][0]["c"] == "-3/7"


def test_free_commutator_word():
    assert free_commutator_word((2, 1)) == {(2, 1): 1, (1, 2): -1}
    a = {(1,): Fraction(1)}
    assert free_bracket(a, a) == {}


def test_pairing_with_free_elements():
    x = ind((1, 2))  # dual of the monomial f~_2 f~_1
    assert x.pair_word((2, 1)) == 1
    assert x.pair_free(free_commutator_word((2, 1))) == 1


def duals(k):
    Js = cb.enumerate_multiindices(k)
    return st.dictionaries(st.sampled_from(Js), st.integers(-3, 3), max_size=4).map(lambda d: DualVector(k, d))


@settings(max_examples=40, deadline=None)
@given(duals((1, 1)), duals((1, 0)), duals((0, 2)))
def test_star_commutative_associative(x, y, z):
    assert star_dual(x, y) == star_dual(y, x)
    assert star_dual(star_dual(x, y), z) == star_dual(x, star_dual(y, z))


def unsigned_residue(x, i):
    return residue_dual(x, i) * residue_sign(x.k, i)


@settings(max_examples=40, deadline=None)
@given(duals((2, 1)), duals((1, 1)), st.sampled_from([1, 2]))
def test_unsigned_residue_is_a_derivation(x, y, i):
    lhs = unsigned_residue(star_dual(x, y), i)
    rhs = star_dual(unsigned_residue(x, i), y) + star_dual(x, unsigned_residue(y, i))
    assert lhs == rhs
