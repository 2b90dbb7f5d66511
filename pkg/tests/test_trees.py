import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from canonform import combinatorics as cb
from canonform import trees as tr
from canonform.shuffle import DualVector

Z = tr.ROOT
T_, S_ = (1, 1), (2, 1)
seeds = st.integers(0, 10**6)
small_k = st.sampled_from([(1, 1), (2, 1), (1, 2), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1)])


def test_vertices_in_canonical_order():
    assert tr.vertices_of((2, 1)) == [(1, 1), (1, 2), (2, 1)]


def test_orientation_and_validation():
    T = tr.OrderedTree((1, 1), [(S_, T_), (T_, Z)])
    assert T.edges == ((T_, S_), (Z, T_))  # numbering kept, orientation away from z
    with pytest.raises(ValueError):
        tr.OrderedTree((1, 1), [(Z, T_)])
    with pytest.raises(ValueError):
        tr.OrderedTree((1, 1), [(Z, T_), ((3, 1), T_)])
    with pytest.raises(ValueError):
        tr.OrderedTree((1, 1, 1), [(Z, T_), (S_, (3, 1)), ((3, 1), S_)])


def test_epsilon():
    assert tr.epsilon(tr.str_tree((1, 1), [T_, S_])) == 1
    assert tr.epsilon(tr.str_tree((1, 1), [S_, T_])) == -1


def test_pair_string_examples():
    zts = tr.str_tree((1, 1), [T_, S_])
    assert tr.pair((1, 2), zts) == 1
    assert tr.pair((2, 1), zts) == 0
    with pytest.raises(ValueError):
        tr.pair((1, 1), zts)


def test_pair_fast_rule_matches_residue_iteration(rng):
    for _ in range(100):
        k = rng.choice([(1, 1, 1), (2, 1), (2, 2), (1, 2, 1)])
        T = tr.random_tree(k, rng)
        for J in cb.enumerate_multiindices(k):
            assert tr.pair_tree(J, T) == tr.pair_by_residues(J, T)


def test_star_of_two_edges():
    x = tr.star_trees(tr.str_tree((1, 0), [T_]), tr.str_tree((0, 1), [S_]))
    want = tr.TreeCombination((1, 1), {tr.str_tree((1, 1), [T_, S_]): 1, tr.str_tree((1, 1), [S_, T_]): -1})
    assert tr.to_dual(x) == tr.to_dual(want)


def test_star_square_pairs_to_two():
    e = tr.str_tree((1,), [(1, 1)])
    assert tr.pair((1, 1), tr.star_trees(e, e)) == 2


def test_residue_relabels_down():
    T = tr.OrderedTree((2,), [(Z, (1, 1)), (Z, (1, 2))])
    res = tr.residue(T, 1, 1)
    ((S, c),) = list(res)
    assert S.k == (1,) and S.edges == ((Z, (1, 1)),)
    assert c == 1  # contracted edge number 1: sign (-1)^0; z - t2 becomes z - t1
    assert list(tr.residue(T, 1, 2)) == [(tr.str_tree((1,), [(1, 1)]), -1)]
    with pytest.raises(IndexError):
        tr.residue(T, 2, 1)


def test_json_round_trip(rng):
    T = tr.random_tree((2, 1, 1), rng)
    assert tr.OrderedTree.from_json(T.to_json()) == T
    x = tr.asym(T) * Fraction(1, 3)
    assert tr.to_dual(tr.TreeCombination.from_json(x.to_json())) == tr.to_dual(x)


@settings(max_examples=40, deadline=None)
@given(small_k, seeds)
def test_r1_and_r2_vanish_in_pairing(k, seed):
    rng = random.Random(seed)
    T, a, b = tr.random_r2(k, rng)
    assert not tr.to_dual(tr.r2_relation(T, a, b))
    assert not tr.to_dual(tr.r1_relation(T, a, b))


@settings(max_examples=30, deadline=None)
@given(small_k, seeds)
def test_dual_round_trip(k, seed):
    rng = random.Random(seed)
    x = tr.to_dual(tr.asym(tr.random_tree(k, rng)))
    assert tr.to_dual(tr.from_dual(x)) == x


@settings(max_examples=30, deadline=None)
@given(small_k, seeds)
def test_asym_is_skew(k, seed):
    rng = random.Random(seed)
    T = tr.random_tree(k, rng)
    a = tr.to_dual(tr.asym(T))
    for pi, s in cb.group_elements(k):
        assert tr.to_dual(tr.asym(T.act(pi))) == a * s


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([((1, 0), (0, 1)), ((1, 1), (1, 0)), ((2, 0), (0, 1)), ((1, 1), (0, 1))]), seeds)
def test_star_commutative_on_trees(kl, seed):
    rng = random.Random(seed)
    T1, T2 = tr.random_tree(kl[0], rng), tr.random_tree(kl[1], rng)
    assert tr.to_dual(tr.star_trees(T1, T2)) == tr.to_dual(tr.star_trees(T2, T1))


def test_dual_basis_is_dual(rng):
    k = (2, 1, 1)
    for J in cb.enumerate_multiindices(k):
        assert tr.to_dual(tr.dual_basis_element(J, 3)) == DualVector.indicator(J, 3)
