"""Rational and theta representations of A(k), evaluated at points.

A value is the coefficient of dt^{(1)}_1 ^ ... ^ dt^{(r)}_{k_r} (z held fixed):
for a tree T the wedge of d(h(e) - t(e)) over edges equals eps(T) times that
volume element, so phi(T) = eps(T) prod_e kernel(h(e) - t(e)).
"""
from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from . import combinatorics as cb
from . import theta as th
from . import trees as tr
from .canonical import CanonicalExpansion
from .lie import RootSystem
from .shuffle import DualVector

POLE_GUARD = 1e-6

TreeLike = Union[tr.OrderedTree, tr.TreeCombination, DualVector]


class PoleError(ValueError):
    """Raised when an evaluation point is too close to a pole."""

    def __init__(self, what: str, value: complex):
        super().__init__(f"{what} = {value} is within {POLE_GUARD} of a pole")
        self.what = what
        self.value = value


def threads() -> int:
    """Worker cap from CANONFORM_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("CANONFORM_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class PointAssignment:
    """Values of the t-variables and z, and the weight of every t-variable."""

    k: tuple[int, ...]
    values: dict[tuple[int, int], complex]
    z: complex = 0j
    weights: dict[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        self.k = cb.multidegree(self.k)
        self.values = {tuple(v): complex(c) for v, c in self.values.items()}
        self.weights = {tuple(v): complex(c) for v, c in self.weights.items()}
        self.z = complex(self.z)
        missing = [v for v in tr.vertices_of(self.k) if v not in self.values]
        if missing:
            raise ValueError(f"no value for {', '.join(tr._vname(v) for v in missing)}")

    @classmethod
    def from_lambda(cls, k, rs: RootSystem, lam: Sequence[complex], values, z=0j) -> "PointAssignment":
        """Weights w^{(i)}_j = alpha_i(lambda), alpha_i paired with lambda in the e-basis."""
        a = alpha_values(rs, lam)
        k = cb.multidegree(k)
        return cls(k, values, z, {v: a[v[0] - 1] for v in tr.vertices_of(k)})

    def value(self, v) -> complex:
        return self.z if v == tr.ROOT else self.values[v]

    def weight(self, v) -> complex:
        return self.weights.get(v, 0j)

    def shifted(self, v, dz: complex) -> "PointAssignment":
        vals = dict(self.values)
        vals[v] = vals[v] + dz
        return PointAssignment(self.k, vals, self.z, self.weights)

    def restricted(self, k) -> "PointAssignment":
        """Same point on a smaller vertex set."""
        keep = set(tr.vertices_of(k))
        return PointAssignment(
            k,
            {v: c for v, c in self.values.items() if v in keep},
            self.z,
            {v: c for v, c in self.weights.items() if v in keep},
        )


def alpha_values(rs: RootSystem, lam: Sequence[complex]) -> list[complex]:
    """alpha_i(lambda) for the simple roots (A: lambda_i - lambda_{i+1})."""
    lam = [complex(x) for x in lam]
    if len(lam) != len(rs.simple[0]):
        raise ValueError(f"{rs.name} needs lambda of length {len(rs.simple[0])}")
    return [sum(c * x for c, x in zip(a, lam)) for a in rs.simple]


# ---------------------------------------------------------------- guards


def lattice_distance(x: complex, tau: complex) -> float:
    """Distance from x to Z + Z tau."""
    n0 = round(x.imag / tau.imag)
    best = math.inf
    for n in (n0 - 1, n0, n0 + 1):
        y = x - n * tau
        best = min(best, abs(y - round(y.real)))
    return best


def _guard_theta(what: str, x: complex, tau: complex) -> None:
    if lattice_distance(x, tau) < POLE_GUARD:
        raise PoleError(what, x)


def _edge_name(h, t) -> str:
    return f"{tr._vname(h)} - {tr._vname(t)}"


# ---------------------------------------------------------------- single trees


def loads(T: tr.OrderedTree, pt: PointAssignment) -> dict:
    """L(v): total weight of the branch of v."""
    children: dict = {}
    for t, h in T.edges:
        children.setdefault(t, []).append(h)
    out: dict = {}

    def rec(v) -> complex:
        s = pt.weight(v) + sum(rec(c) for c in children.get(v, ()))
        out[v] = s
        return s

    rec(tr.ROOT)
    return out


def phi_rat_tree(T: tr.OrderedTree, pt: PointAssignment) -> complex:
    val = complex(tr.epsilon(T))
    for t, h in T.edges:
        d = pt.value(h) - pt.value(t)
        if abs(d) < POLE_GUARD:
            raise PoleError(_edge_name(h, t), d)
        val /= d
    return val


def phi_theta_tree(T: tr.OrderedTree, pt: PointAssignment, ctx: th.ThetaContext, kernel=None) -> complex:
    """eps(T) prod_e sigma_{L(h(e))}(h(e) - t(e)); ``kernel`` overrides sigma."""
    L = loads(T, pt)
    val = complex(tr.epsilon(T))
    for t, h in T.edges:
        d = pt.value(h) - pt.value(t)
        if kernel is None:
            _guard_theta(_edge_name(h, t), d, ctx.tau)
            _guard_theta(f"load of {tr._vname(h)}", L[h], ctx.tau)
            val *= th.sigma(L[h], d, ctx)
        else:
            val *= kernel(L[h], d)
    return val


def phi_trig_tree(T: tr.OrderedTree, pt: PointAssignment) -> complex:
    """The tau -> i infinity degeneration of phi_theta."""
    return phi_theta_tree(T, pt, None, kernel=th.sigma_trig)  # type: ignore[arg-type]


# ---------------------------------------------------------------- combinations


def _on_combination(f: Callable[[tr.OrderedTree], complex], x: tr.TreeCombination) -> complex:
    return sum((complex(c) * f(T) for T, c in x), 0j)


def phi_rat(x: TreeLike, pt: PointAssignment) -> complex:
    if isinstance(x, DualVector):
        return _phi_dual(x, pt, None, rational=True)
    if isinstance(x, tr.OrderedTree):
        return phi_rat_tree(x, pt)
    return _on_combination(lambda T: phi_rat_tree(T, pt), x)


def phi_theta(x: TreeLike, pt: PointAssignment, ctx: th.ThetaContext) -> complex:
    if isinstance(x, DualVector):
        return _phi_dual(x, pt, ctx)
    if isinstance(x, tr.OrderedTree):
        return phi_theta_tree(x, pt, ctx)
    return _on_combination(lambda T: phi_theta_tree(T, pt, ctx), x)


def phi_trig(x: TreeLike, pt: PointAssignment) -> complex:
    if isinstance(x, DualVector):
        x = tr.from_dual(x)
    if isinstance(x, tr.OrderedTree):
        return phi_trig_tree(x, pt)
    return _on_combination(lambda T: phi_trig_tree(T, pt), x)


# ---------------------------------------------------------------- vectorized dual path


def _string_paths(x: DualVector):
    """All permuted string paths of sum_J x_J sgn(J) asym(str_J).

    Returns (coefficients, paths) where ``paths[a]`` lists canonical vertex
    indices of a string z -> u_1 -> ... -> u_n.  For pi in G_k,
    sgn(pi) eps(pi str_J) = eps(str_J), so every permuted copy of str_J carries
    the coefficient x_J sgn(J) eps(str_J) times the plain product of kernels.
    """
    k = x.k
    verts = tr.vertices_of(k)
    index = {v: a for a, v in enumerate(verts)}
    offsets = [sum(k[:i]) for i in range(len(k))]
    perms = []
    for pi, _ in cb.group_elements(k):
        perms.append([offsets[i - 1] + pi[i - 1][j - 1] - 1 for i, j in verts])
    perms = np.array(perms, dtype=np.intp).reshape(len(perms), len(verts))
    coefs, paths = [], []
    for J, c in x:
        path = [index[(col, occ)] for col, occ in zip(J, cb.cmap(J))]
        s = cb.sign(J) * cb.perm_sign(path)
        coefs.append(float(c) * s)
        paths.append(perms[:, path])
    if not paths:
        return np.zeros(0), np.zeros((0, len(verts)), dtype=np.intp), verts
    coef = np.repeat(np.array(coefs), perms.shape[0])
    return coef, np.concatenate(paths, axis=0), verts


def _phi_dual(x: DualVector, pt: PointAssignment, ctx, rational: bool = False) -> complex:
    if not x:
        return 0j
    coef, paths, verts = _string_paths(x)
    if paths.shape[1] == 0:
        return complex(coef.sum())
    vals = np.array([pt.value(v) for v in verts], dtype=complex)
    wts = np.array([pt.weight(v) for v in verts], dtype=complex)
    heads = vals[paths]
    tails = np.concatenate([np.full((paths.shape[0], 1), pt.z), heads[:, :-1]], axis=1)
    diff = heads - tails
    _check_array_poles(diff, paths, verts, ctx, rational)
    if rational:
        return complex(np.sum(coef * np.prod(1 / diff, axis=1)))
    # load of u_m on a string = weights of u_m, ..., u_n
    L = np.cumsum(wts[paths][:, ::-1], axis=1)[:, ::-1]
    _check_load_poles(L, ctx)
    nthreads = threads()
    if nthreads > 1 and diff.shape[0] >= 4096:
        chunks = np.array_split(np.arange(diff.shape[0]), nthreads)
        with ThreadPoolExecutor(nthreads) as ex:
            parts = ex.map(lambda ix: np.sum(coef[ix] * np.prod(th.sigma_array(L[ix], diff[ix], ctx), axis=1)), chunks)
            return complex(sum(parts))
    return complex(np.sum(coef * np.prod(th.sigma_array(L, diff, ctx), axis=1)))


def _check_array_poles(diff, paths, verts, ctx, rational: bool) -> None:
    if rational:
        dist = np.abs(diff)
    else:
        tau = ctx.tau
        n = np.round(diff.imag / tau.imag)
        y = diff - n * tau
        dist = np.abs(y - np.round(y.real))
        for s in (-1, 1):
            y2 = diff - (n + s) * tau
            dist = np.minimum(dist, np.abs(y2 - np.round(y2.real)))
    bad = np.argwhere(dist < POLE_GUARD)
    if bad.size:
        a, m = bad[0]
        h = verts[paths[a, m]]
        t = tr.ROOT if m == 0 else verts[paths[a, m - 1]]
        raise PoleError(_edge_name(h, t), complex(diff[a, m]))


def _check_load_poles(L, ctx) -> None:
    for val in np.unique(np.round(L.ravel(), 12)):
        _guard_theta("a vertex load", complex(val), ctx.tau)


# ---------------------------------------------------------------- canonical forms


def theta_canonical_value(
    expansion: CanonicalExpansion,
    lam: Sequence[complex],
    values: Mapping,
    ctx: th.ThetaContext,
    z: complex = 0j,
) -> dict[tuple[int, ...], complex]:
    """p -> phi_theta(T_p) with weights alpha_i(lambda): the coefficients of Theta^g_k."""
    pt = PointAssignment.from_lambda(expansion.k, expansion.rs, lam, values, z)
    return {p: phi_theta(T, pt, ctx) for p, T in expansion}


def rational_canonical_value(expansion: CanonicalExpansion, values: Mapping, z: complex = 0j):
    pt = PointAssignment(expansion.k, values, z)
    return {p: phi_rat(T, pt) for p, T in expansion}


# ---------------------------------------------------------------- the tau-dependent form omega


def omega_form(w: complex, t: complex, ctx: th.ThetaContext) -> tuple[complex, complex]:
    """(dt-coefficient, dtau-coefficient) of omega_w(t)."""
    _guard_theta("t", t, ctx.tau)
    return th.sigma(w, t, ctx), -th.dsigma_dw(w, t, ctx) / (2j * math.pi)


def closedness_residual(w: complex, t: complex, ctx: th.ThetaContext, h: float = 1e-4) -> complex:
    """(d_tau + (1/2 pi i) d_t d_w) sigma_w(t), d_tau by central differences."""
    return th.dsigma_dtau(w, t, ctx, h) + th.d2sigma_dt_dw(w, t, ctx) / (2j * math.pi)


def _wedge(a: Sequence[complex], b: Sequence[complex]) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    return np.outer(a, b) - np.outer(b, a)


def omega_one_form(w: complex, x: complex, dx: Sequence[float], ctx: th.ThetaContext) -> np.ndarray:
    """omega_w(x) in the basis (dt, ds, du, dtau) when dx is the differential of x."""
    a, b = omega_form(w, x, ctx)
    return np.array(list(np.asarray(dx) * a) + [b])


def omega_three_term(w1, w2, t, s, u, ctx: th.ThetaContext) -> np.ndarray:
    """The six 2-form components (dt^ds, ..., du^dtau) of the omega relation."""
    dt, ds, du = np.eye(3)
    o = lambda w, x, d: omega_one_form(w, x, d, ctx)  # noqa: E731
    total = (
        _wedge(o(w1 + w2, t - u, dt - du), o(w2, s - t, ds - dt))
        + _wedge(o(w2, s - u, ds - du), o(w1, t - u, dt - du))
        + _wedge(o(w1, t - s, dt - ds), o(w1 + w2, s - u, ds - du))
    )
    return total[np.triu_indices(4, 1)]


def sigma_three_term(w1, w2, t, s, u, ctx: th.ThetaContext) -> complex:
    sg = lambda w, x: th.sigma(w, x, ctx)  # noqa: E731
    return sg(w1 + w2, t - u) * sg(w2, s - t) - sg(w2, s - u) * sg(w1, t - u) + sg(w1, t - s) * sg(w1 + w2, s - u)


# ---------------------------------------------------------------- appendix checks


def residue_probe(f: Callable[[complex], complex], radius: float = 1e-4) -> complex:
    """lim_{t->0} t f(t) from the mean of t f(t) on four points of a small circle.

    The mean kills the first three Taylor terms, so the error is O(radius^4).
    """
    pts = [radius * 1j**m for m in range(4)]
    return sum(p * f(p) for p in pts) / 4


def appendix_periodicity_check(T: tr.OrderedTree, j: int, pt: PointAssignment, ctx: th.ThetaContext) -> dict:
    """Conditions (1)-(2) in t_j and the residue compatibility at t_j = 0.

    Requires k = (1, ..., 1) and z = 0; ``j`` is 1-based.
    """
    if any(x != 1 for x in T.k) or pt.z != 0:
        raise ValueError("the periodicity check needs k = (1, ..., 1) and z = 0")
    v = (j, 1)
    w = pt.weight(v)
    base = phi_theta(T, pt, ctx)
    shift1 = phi_theta(T, pt.shifted(v, 1), ctx)
    shift_tau = phi_theta(T, pt.shifted(v, ctx.tau), ctx)
    scale = max(abs(base), 1e-300)
    out = {
        "tree": T.to_json(),
        "j": j,
        "period_1": abs(shift1 - base) / scale,
        "period_tau": abs(shift_tau - cmath.exp(2j * math.pi * w) * base) / scale,
    }
    a = T.edge_number(tr.ROOT, v)
    if a is not None:
        # the residue of f dt_1..dt_r along t_j = 0 is (-1)^(j-1) (t_j f)|_{t_j=0}
        def f(x):
            vals = dict(pt.values)
            vals[v] = x
            return phi_theta(T, PointAssignment(pt.k, vals, pt.z, pt.weights), ctx)

        lhs = (-1) ** (j - 1) * residue_probe(f)
        res_tree = tr.residue(T, j, 1)
        k1 = cb.sub(T.k, cb.unit(len(T.k), j))
        rhs = phi_theta(res_tree, pt.restricted(k1), ctx)
        out["residue"] = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    return out
