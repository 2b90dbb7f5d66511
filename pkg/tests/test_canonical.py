from fractions import Fraction

import pytest

from canonform import canonical as C
from canonform import combinatorics as cb
from canonform import trees as tr
from canonform.lie import root_system_by_name
from canonform.shuffle import DualVector, word_of

Z = tr.ROOT


def test_omega_free_is_identity():
    k = (2, 1)
    for J, x in C.omega_free(k).items():
        assert x == DualVector.indicator(J, 2)
        assert tr.to_dual(C.omega_free_trees(k)[J]) == x


def test_expansion_shape_and_json():
    rs = root_system_by_name("A2")
    exp = C.omega_g((2, 1), rs)
    assert [p for p, _ in exp] == [(1, 1, 0), (2, 0, 1)]
    assert len(exp) == 2
    assert exp[(0, 0, 0)] == DualVector.zero((2, 1))
    data = exp.to_json()
    assert data["algebra"] == "A2" and data["k"] == [2, 1]
    with pytest.raises(ValueError):
        C.omega_g((1, 1, 1), rs)


def test_sl3_etas():
    rs = root_system_by_name("A2")
    t, s = (1, 1), (2, 1)
    assert C.etas(rs) == [
        tr.to_dual(tr.str_tree((1, 0), [t])),
        tr.to_dual(tr.str_tree((1, 1), [t, s])),
        tr.to_dual(tr.str_tree((0, 1), [s])),
    ]


def test_sl3_coefficient_equals_star_product():
    # T_(1,0,1) = (z - t) * (z - s)
    rs = root_system_by_name("A2")
    x = tr.star_trees(tr.str_tree((1, 0), [(1, 1)]), tr.str_tree((0, 1), [(2, 1)]))
    assert C.omega_g((1, 1), rs)[(1, 0, 1)] == tr.to_dual(x)


@pytest.mark.parametrize("name", ["A2", "B2", "C2"])
def test_coefficients_sum_back_to_free_element(name):
    # sum_p T_p coeff(F^p, q(f~_J)) over all p recovers the J coordinate
    rs = root_system_by_name(name)
    k = (2, 2)
    exp = C.omega_g(k, rs)
    for J in cb.enumerate_multiindices(k):
        q = rs.q_map(word_of(J))
        for p, T in exp:
            assert T[J] == q.get(p, Fraction(0))


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4"])
def test_product_formula_degree_three(name):
    rs = root_system_by_name(name)
    for k in cb.degrees_up_to(rs.rank, 3):
        assert C.verify_product_formula(k, rs)["pass"]


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D3", "D4"])
def test_corollary_and_residue_pattern(name):
    rs = root_system_by_name(name)
    assert C.verify_corollary_coeffs(rs)["pass"]
    rep = C.residue_pattern(rs)
    assert rep["pass"]
    assert {c["sign"] for c in rep["cases"]} <= {"+", "-", "0"}


def test_residue_pattern_sign_is_not_always_plus():
    rep = C.residue_pattern(root_system_by_name("B3"))
    assert "-" in {c["sign"] for c in rep["cases"]}


def test_type_a_lists_match_as_printed():
    rs = root_system_by_name("A4")
    assert C.verify_eta_closed_forms(rs)["pass"]


@pytest.mark.parametrize("name", ["B4", "C4", "D4"])
def test_sign_corrected_lists_rank_four(name):
    assert C.verify_eta_closed_forms(root_system_by_name(name), corrected=True)["pass"]


def test_literal_discrepancies_are_signs_except_d():
    for name in ["B3", "C3"]:
        rep = C.verify_eta_closed_forms(root_system_by_name(name))
        assert {c.get("relation") for c in rep["cases"] if not c["pass"]} == {"negated"}
    rep = C.verify_eta_closed_forms(root_system_by_name("D3"))
    assert {c.get("relation") for c in rep["cases"] if not c["pass"]} == {"different"}


def test_printed_d3_entry_breaks_serre_vanishing():
    rs = root_system_by_name("D3")
    assert C.serre_vanishing(rs)["pass"]
    assert not C.serre_vanishing(rs, use_closed_forms=True)["pass"]


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "D3"])
def test_every_coefficient_kills_the_serre_ideal(name):
    rs = root_system_by_name(name)
    for k in cb.degrees_up_to(rs.rank, 4):
        elems = C.serre_ideal_slice(rs, k)
        for p, T in C.omega_g(k, rs):
            assert all(T.pair_free(x) == 0 for x in elems)


def test_eta_sign_correction_trivial_for_type_a():
    rs = root_system_by_name("A3")
    assert all(C.eta_sign_correction(rs, j) == 1 for j in range(rs.m))
