from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from canonform.lie import (
    SymPowerModule,
    build_root_system,
    cartan_matrix,
    commutator,
    mat_mul,
    root_system_by_name,
    serre_relators,
)

NAMES = ["A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4"]


@pytest.mark.parametrize("name,count", [("A2", 3), ("A3", 6), ("B2", 4), ("B3", 9), ("C3", 9), ("D3", 6), ("D4", 12)])
def test_number_of_positive_roots(name, count):
    assert root_system_by_name(name).m == count


def test_names_and_rank_conventions():
    assert build_root_system("A", 3).name == "A2"
    assert root_system_by_name("B3").rank == 3
    with pytest.raises(ValueError):
        build_root_system("E", 6)
    with pytest.raises(ValueError):
        build_root_system("A", 1)


def test_cartan_matrices():
    assert cartan_matrix(root_system_by_name("A2")) == [[2, -1], [-1, 2]]
    B2 = cartan_matrix(root_system_by_name("B2"))
    C2 = cartan_matrix(root_system_by_name("C2"))
    assert sorted(B2[0] + B2[1]) == sorted(C2[0] + C2[1]) == [-2, -1, 2, 2]
    assert B2 != C2


@pytest.mark.parametrize("name", NAMES)
def test_serre_relators_vanish_in_matrices(name):
    rs = root_system_by_name(name)
    for I in serre_relators(rs):
        assert commutator(rs.realization.generators, I) == {}


@pytest.mark.parametrize("name", NAMES)
def test_root_vectors_have_their_weight(name):
    rs = root_system_by_name(name)
    for b, F in zip(rs.roots, rs.F):
        assert F
        assert rs.realization.in_algebra(F)
        assert rs.realization.root_of(F) == tuple(-x for x in b.vector)


def test_sl3_q_map():
    rs = root_system_by_name("A2")
    assert rs.q_map((1, 2)) == {(1, 0, 1): 1}
    assert rs.q_map((2, 1)) == {(0, 1, 0): 1, (1, 0, 1): 1}


def test_monomials_of_degree():
    rs = root_system_by_name("A2")
    assert rs.monomials_of_degree((1, 1)) == [(0, 1, 0), (1, 0, 1)]
    assert rs.monomials_of_degree((2, 1)) == [(1, 1, 0), (2, 0, 1)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_straightening_matches_matrix_products(name, data):
    rs = root_system_by_name(name)
    word = data.draw(st.lists(st.integers(1, rs.rank), min_size=1, max_size=5))
    want = {(a, a): Fraction(1) for a in range(rs.realization.dim)}
    for i in word:
        want = mat_mul(want, rs.realization.generators[i - 1])
    assert rs.pbw_matrix(rs.q_map(word)) == want


def test_multiply_by_generator_is_q_of_appended_word():
    rs = root_system_by_name("B2")
    x = rs.q_map((2, 1))
    assert rs.multiply_by_generator(x, 2) == rs.q_map((2, 1, 2))


def test_sym_power_module():
    mod = SymPowerModule(2, 3)
    v = mod.highest_weight_vector()
    assert v == {(3, 0, 0): 1}
    assert len(mod.basis()) == 10
    assert mod.apply_generator(1, v) == {(2, 1, 0): 3}
    assert mod.apply_word((2, 1), v) == {(2, 0, 1): 3}
    assert mod.weight((3, 0, 0)) == (2, 1)
