import random

import pytest

from canonform import checks
from canonform import cm
from canonform import theta as th
from canonform import trees as tr


def test_degree_and_forest():
    assert cm.cm_degree(2, 1) == (2, 1)
    assert cm.cm_degree(3, 2) == (6, 4, 2)
    forest = cm.cm_forest(2, 1)
    assert forest == [[(1, 1)], [(1, 2), (2, 1)]]
    # every vertex of T(k) is used exactly once
    for r, p in [(1, 2), (2, 2), (3, 1)]:
        used = sorted(v for chain in cm.cm_forest(r, p) for v in chain)
        assert used == tr.vertices_of(cm.cm_degree(r, p))


@pytest.mark.parametrize("r,p", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_single_survivor(r, p):
    surv = cm.cm_survivors(r, p)
    assert list(surv) == [cm.expected_survivor(r, p)]


def test_survivor_pattern_sl3():
    assert cm.expected_survivor(2, 1) == (1, 1, 0)
    _, info = cm.cm_via_pbw(2, 1, [0.1, 0.2, -0.3], [0.0, 0.1, 0.2],
                            {(1, 1): 0.1 + 0.2j, (1, 2): -0.2 + 0.3j, (2, 1): 0.3 + 0.1j},
                            th.ThetaContext(1j), details=True)
    assert info["survivor"] == [1, 1, 0]
    assert info["module_scalar"] != "0"


@pytest.mark.parametrize("r,p", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_two_routes_agree(r, p):
    rng = random.Random(r * 10 + p)
    for _ in range(3):
        lam, xi, roots, ctx = checks.cm_sample(r, p, rng)
        a = cm.cm_eigenfunction_direct(r, p, lam, xi, roots, ctx)
        b = cm.cm_via_pbw(r, p, lam, xi, roots, ctx)
        assert abs(a - b) <= 1e-9 * abs(a)


def test_input_lengths_checked():
    with pytest.raises(ValueError):
        cm.cm_eigenfunction_direct(1, 1, [0.1], [0.0, 0.0], {(1, 1): 0.2j}, th.ThetaContext(1j))


def test_hamiltonian_diagnostic_spread_at_random_roots():
    # negative control: random roots are not Bethe roots, so the ratio is far from constant
    rng = random.Random(4)
    lam, xi, roots, ctx = checks.cm_sample(1, 1, rng)
    probes = [[x + complex(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)) for x in lam] for _ in range(4)]
    out = cm.cm_hamiltonian_residual(1, 1, probes, xi, roots, ctx)
    assert len(out["ratios"]) == 4
    assert out["spread"] > 1e-2
