from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from canonform import combinatorics as cb

degrees = st.lists(st.integers(0, 3), min_size=1, max_size=3).filter(lambda k: 0 < sum(k) <= 6)


def test_sign_pinned_example():
    assert cb.sign((2, 1, 1)) == 1
    assert cb.sign((2, 1)) == -1
    assert cb.sign((1, 2, 1)) == -1


def test_cmap_counts_per_colour():
    assert cb.cmap((2, 1, 2, 1, 1)) == (1, 1, 2, 2, 3)


def test_multidegree_validation():
    with pytest.raises(ValueError):
        cb.multidegree(())
    with pytest.raises(ValueError):
        cb.multidegree((1, -1))
    with pytest.raises(ValueError):
        cb.sub((1, 0), (0, 1))
    with pytest.raises(ValueError):
        cb.unit(2, 3)


def test_degrees_up_to_ordered_by_total():
    ks = list(cb.degrees_up_to(2, 3))
    assert [sum(k) for k in ks] == sorted(sum(k) for k in ks)
    assert len(ks) == 2 + 3 + 4


@given(degrees)
def test_multiindex_count_is_multinomial(k):
    Js = cb.enumerate_multiindices(k)
    assert len(Js) == cb.multinomial(k)
    assert len(set(Js)) == len(Js)
    assert Js == sorted(Js)
    assert all(cb.degree_of(J, len(k)) == tuple(k) for J in Js)


@given(degrees)
def test_group_order_and_signs(k):
    elems = list(cb.group_elements(k))
    assert len(elems) == cb.group_order(k)
    assert sum(s for _, s in elems) == (cb.group_order(k) if max(k) <= 1 else 0)


@given(st.lists(st.integers(1, 3), max_size=4), st.lists(st.integers(1, 3), max_size=4))
def test_shuffle_count(J1, J2):
    sh = cb.shuffles(J1, J2)
    assert len(sh) == comb(len(J1) + len(J2), len(J1))
    for J in sh:
        assert sorted(J) == sorted(J1 + J2)


@given(st.permutations(range(6)))
def test_perm_sign_multiplicative_with_transposition(p):
    q = list(p)
    q[0], q[1] = q[1], q[0]
    assert cb.perm_sign(q) == -cb.perm_sign(p)


def test_multinomial_small():
    assert cb.multinomial((2, 1)) == 3
    assert cb.multinomial((3, 2)) == factorial(5) // (factorial(3) * factorial(2))
