"""The first Jacobi theta function and the sigma kernel built from it.

theta(z) = 2 q^(1/8) sin(pi z) prod_{n>=1} (1-q^n)(1-q^n x)(1-q^n/x) with
q = e^(2 pi i tau), x = e^(2 pi i z); this is the same function as
i e^(pi i (tau/4 - z)) (x;q)(q/x;q)(q;q).

Scalar evaluations are plain ``cmath``.  Array evaluations go through a batch
kernel: the compiled ``_theta_kernel`` when it was built, otherwise the numpy
version in ``_theta_py``.  Setting ``CANONFORM_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import _theta_py

if os.environ.get("CANONFORM_PURE", "") not in ("", "0"):
    _kernel = _theta_py
else:
    try:
        from . import _theta_kernel as _kernel  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _kernel = _theta_py

KERNEL = _kernel.BACKEND
TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class ThetaContext:
    """Modular parameter and truncation control.

    ``N`` is the base number of product factors; it is raised per argument so
    that |q|^N max(|x|, 1/|x|) stays below ``tol * 1e-3``.
    """

    tau: complex
    tol: float = 1e-14
    N: int = field(default=0)

    def __post_init__(self):
        tau = complex(self.tau)
        if tau.imag <= 0:
            raise ValueError(f"tau must lie in the upper half plane, got {tau}")
        object.__setattr__(self, "tau", tau)
        if self.N <= 0:
            object.__setattr__(self, "N", self.terms_for(0.0))

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)

    @property
    def q8(self) -> complex:
        """q^(1/8) = e^(pi i tau / 4)."""
        return cmath.exp(0.25j * math.pi * self.tau)

    def terms_for(self, imag: float) -> int:
        target = math.log(self.tol * 1e-3)
        n = (2 * math.pi * abs(imag) - target) / (2 * math.pi * self.tau.imag)
        base = self.N if self.N > 0 else 1
        return max(base, int(math.ceil(n)) + 1)

    def doubled(self) -> "ThetaContext":
        return ThetaContext(self.tau, self.tol, 2 * self.N)


def _factors(z: complex, ctx: ThetaContext):
    q = ctx.q
    x = cmath.exp(TWO_PI_I * z)
    xi = 1 / x
    qn = 1.0 + 0j
    for _ in range(ctx.terms_for(z.imag)):
        qn *= q
        yield qn, qn * x, qn * xi


def theta(z: complex, ctx: ThetaContext) -> complex:
    z = complex(z)
    prod = 1.0 + 0j
    for qn, u, v in _factors(z, ctx):
        prod *= (1 - qn) * (1 - u) * (1 - v)
    return 2 * ctx.q8 * cmath.sin(math.pi * z) * prod


def _log_derivative_tail(z: complex, ctx: ThetaContext) -> complex:
    s = 0j
    for _, u, v in _factors(z, ctx):
        s += -TWO_PI_I * u / (1 - u) + TWO_PI_I * v / (1 - v)
    return s


def theta_prime(z: complex, ctx: ThetaContext) -> complex:
    """d/dz theta by the product rule; finite at the zeros of sin(pi z)."""
    z = complex(z)
    prod = 1.0 + 0j
    for qn, u, v in _factors(z, ctx):
        prod *= (1 - qn) * (1 - u) * (1 - v)
    s = cmath.sin(math.pi * z)
    c = cmath.cos(math.pi * z)
    return 2 * ctx.q8 * prod * (math.pi * c + s * _log_derivative_tail(z, ctx))


def theta_prime0(ctx: ThetaContext) -> complex:
    """theta'(0) = 2 pi q^(1/8) prod (1 - q^n)^3."""
    p = 1.0 + 0j
    q = ctx.q
    qn = 1.0 + 0j
    for _ in range(ctx.N):
        qn *= q
        p *= (1 - qn) ** 3
    return 2 * math.pi * ctx.q8 * p


def rho(z: complex, ctx: ThetaContext) -> complex:
    """theta'/theta = pi cot(pi z) + sum of the factor log-derivatives."""
    z = complex(z)
    return math.pi / cmath.tan(math.pi * z) + _log_derivative_tail(z, ctx)


def rho_prime(z: complex, ctx: ThetaContext) -> complex:
    z = complex(z)
    s = 0j
    for _, u, v in _factors(z, ctx):
        s += u / (1 - u) ** 2 + v / (1 - v) ** 2
    return -math.pi**2 / cmath.sin(math.pi * z) ** 2 + 4 * math.pi**2 * s


def sigma(w: complex, t: complex, ctx: ThetaContext) -> complex:
    """sigma_w(t) = theta(w - t) theta'(0) / (theta(w) theta(t))."""
    return theta(w - t, ctx) * theta_prime0(ctx) / (theta(w, ctx) * theta(t, ctx))


def dsigma_dw(w: complex, t: complex, ctx: ThetaContext) -> complex:
    return sigma(w, t, ctx) * (rho(w - t, ctx) - rho(w, ctx))


def dsigma_dt(w: complex, t: complex, ctx: ThetaContext) -> complex:
    return sigma(w, t, ctx) * (-rho(w - t, ctx) - rho(t, ctx))


def d2sigma_dt_dw(w: complex, t: complex, ctx: ThetaContext) -> complex:
    s = sigma(w, t, ctx)
    a = rho(w - t, ctx)
    return s * (-(a + rho(t, ctx)) * (a - rho(w, ctx)) - rho_prime(w - t, ctx))


def dsigma_dtau(w: complex, t: complex, ctx: ThetaContext, h: float = 1e-4) -> complex:
    """Central finite difference in tau (used only for the closedness check)."""
    up = ThetaContext(ctx.tau + h, ctx.tol)
    dn = ThetaContext(ctx.tau - h, ctx.tol)
    return (sigma(w, t, up) - sigma(w, t, dn)) / (2 * h)


def sigma_trig(w: complex, t: complex) -> complex:
    """The tau -> i infinity limit pi sin(pi(w - t)) / (sin(pi w) sin(pi t))."""
    return math.pi * cmath.sin(math.pi * (w - t)) / (cmath.sin(math.pi * w) * cmath.sin(math.pi * t))


def theta_array(z, ctx: ThetaContext) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    n = ctx.terms_for(float(np.max(np.abs(z.imag), initial=0.0)))
    return _kernel.theta_batch(z, ctx.tau, n)


def sigma_array(w, t, ctx: ThetaContext) -> np.ndarray:
    """Elementwise sigma_w(t) for broadcastable arrays, via the batch kernel."""
    w = np.asarray(w, dtype=complex)
    t = np.asarray(t, dtype=complex)
    worst = max(
        float(np.max(np.abs(w.imag), initial=0.0)) + float(np.max(np.abs(t.imag), initial=0.0)),
        0.0,
    )
    return _kernel.sigma_batch(w, t, ctx.tau, ctx.terms_for(worst))
