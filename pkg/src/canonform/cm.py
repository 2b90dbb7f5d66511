"""Calogero-Moser eigenfunction formula for sl_{r+1}, two ways.

The direct formula symmetrizes a product of sigma factors over G_k with
k = (rp, ..., 2p, p).  The second route takes T_p from the PBW expansion of
the canonical element, keeps the single p with F^p v_Lambda != 0 in
Sym^{p(r+1)} C^{r+1}, and evaluates phi_theta(T_p).  The variables
t^{(0)}_j are the constant z = 0.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import combinatorics as cb
from . import theta as th
from . import trees as tr
from .canonical import omega_g
from .forms import POLE_GUARD, PointAssignment, PoleError, alpha_values, lattice_distance, phi_theta
from .lie import SymPowerModule, build_root_system


def cm_degree(r: int, p: int) -> tuple[int, ...]:
    return tuple((r + 1 - i) * p for i in range(1, r + 1))


def cm_forest(r: int, p: int) -> list[list[tuple[int, int]]]:
    """The strings z -> t^{(1)}_{(j-1)p+l} -> ... -> t^{(j)}_l of the product."""
    out = []
    for l in range(1, p + 1):
        for j in range(1, r + 1):
            out.append([(i, (j - i) * p + l) for i in range(1, j + 1)])
    return out


def _prefactor(lam: Sequence[complex], xi: Sequence[complex]) -> complex:
    return cmath.exp(2j * math.pi * sum(complex(a) * complex(b) for a, b in zip(lam, xi)))


def _check(r: int, lam, xi) -> None:
    if len(lam) != r + 1 or len(xi) != r + 1:
        raise ValueError(f"lambda and xi need {r + 1} entries")


def cm_eigenfunction_direct(
    r: int, p: int, lam: Sequence[complex], xi: Sequence[complex],
    roots: Mapping[tuple[int, int], complex], ctx: th.ThetaContext,
) -> complex:
    """e^{2 pi i lambda.xi} sym_k prod_{l, i<=j} sigma_{(alpha_i+..+alpha_j)(lambda)}(t^{(i)} - t^{(i-1)})."""
    _check(r, lam, xi)
    k = cm_degree(r, p)
    rs = build_root_system("A", r + 1)
    a = alpha_values(rs, lam)
    verts = tr.vertices_of(k)
    index = {v: n for n, v in enumerate(verts)}
    vals = np.array([complex(roots[v]) for v in verts] + [0j])  # last slot is z = 0
    heads, tails, wts = [], [], []
    for chain in cm_forest(r, p):
        j = len(chain)
        prev = len(verts)
        for i, v in enumerate(chain, start=1):
            heads.append(index[v])
            tails.append(prev)
            wts.append(sum(a[i - 1 : j]))
            prev = index[v]
    offsets = [sum(k[:i]) for i in range(r)]
    perms = np.array(
        [[offsets[i - 1] + pi[i - 1][j - 1] - 1 for i, j in verts] + [len(verts)] for pi, _ in cb.group_elements(k)],
        dtype=np.intp,
    )
    h = vals[perms[:, heads]]
    t = vals[perms[:, tails]]
    diff = h - t
    for d in diff.ravel():
        if _near_lattice(d, ctx.tau):
            raise PoleError("an edge difference", d)
    s = th.sigma_array(np.broadcast_to(np.array(wts), diff.shape), diff, ctx)
    return _prefactor(lam, xi) * complex(np.sum(np.prod(s, axis=1)))


def _near_lattice(x: complex, tau: complex) -> bool:
    return lattice_distance(complex(x), tau) < POLE_GUARD


def cm_survivors(r: int, p: int) -> dict:
    """PBW monomials of degree k whose action on v_Lambda is nonzero."""
    k = cm_degree(r, p)
    module = SymPowerModule(r, p * (r + 1))
    rs = module.rs
    v = module.highest_weight_vector()
    out = {}
    for q in rs.monomials_of_degree(k):
        w = module.apply_pbw({q: Fraction(1)}, v)
        if w:
            out[q] = w
    return out


def expected_survivor(r: int, p: int) -> tuple[int, ...]:
    """p on the roots e_1 - e_{j+1} (the first r roots in the A ordering), 0 elsewhere."""
    rs = build_root_system("A", r + 1)
    return tuple(p if b.label.startswith("e1-") else 0 for b in rs.roots)


def cm_via_pbw(
    r: int, p: int, lam: Sequence[complex], xi: Sequence[complex],
    roots: Mapping[tuple[int, int], complex], ctx: th.ThetaContext,
    details: bool = False,
):
    """e^{2 pi i lambda.xi} (p!)^r phi_theta(T_{p*}) for the unique surviving p*.

    ``details=True`` also returns the survivor, its module vector and the
    scalar of F^{p*} v_Lambda on (x_1 ... x_{r+1})^p.
    """
    _check(r, lam, xi)
    k = cm_degree(r, p)
    surv = cm_survivors(r, p)
    if len(surv) != 1:
        raise RuntimeError(f"expected one surviving PBW term, found {sorted(surv)}")
    (pstar, vec), = surv.items()
    if pstar != expected_survivor(r, p):
        raise RuntimeError(f"surviving term {pstar} is not the e_1 - e_j pattern")
    rs = build_root_system("A", r + 1)
    T = omega_g(k, rs)[pstar]
    pt = PointAssignment.from_lambda(k, rs, lam, roots, 0j)
    value = _prefactor(lam, xi) * math.factorial(p) ** r * phi_theta(T, pt, ctx)
    if not details:
        return value
    mono = (p,) * (r + 1)
    return value, {
        "survivor": list(pstar),
        "module_vector": {str(list(m)): str(c) for m, c in sorted(vec.items())},
        "module_scalar": str(vec.get(mono, Fraction(0))),
    }


def cm_hamiltonian_residual(
    r: int, p: int, probes: Sequence[Sequence[complex]], xi: Sequence[complex],
    roots: Mapping[tuple[int, int], complex], ctx: th.ThetaContext, h: float = 1e-3,
) -> dict:
    """H psi / psi at each lambda probe, by central second differences.

    H = -sum d^2/d lambda_i^2 - 2p(p+1) sum_{i<j} rho'(lambda_i - lambda_j).
    A small spread of the ratios indicates an eigenfunction; random roots
    give a spread of order one.
    """
    n = r + 1
    ratios = []
    for lam in probes:
        lam = [complex(x) for x in lam]
        psi = lambda l: cm_eigenfunction_direct(r, p, l, xi, roots, ctx)  # noqa: E731
        f0 = psi(lam)
        if abs(f0) < 1e-300:
            raise ZeroDivisionError("psi vanishes at a probe point")
        lap = 0j
        for i in range(n):
            up = list(lam)
            dn = list(lam)
            up[i] += h
            dn[i] -= h
            lap += (psi(up) - 2 * f0 + psi(dn)) / h**2
        pot = sum(th.rho_prime(lam[i] - lam[j], ctx) for i in range(n) for j in range(i + 1, n))
        ratios.append(complex((-lap - 2 * p * (p + 1) * pot * f0) / f0))
    mean = sum(ratios) / len(ratios)
    return {
        "ratios": ratios,
        "eigenvalue": mean,
        "spread": max(abs(x - mean) for x in ratios),
    }
