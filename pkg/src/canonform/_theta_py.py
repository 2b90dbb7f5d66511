"""Numpy batch kernel for theta and sigma (fallback for the compiled core)."""
from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def theta_batch(z, tau: complex, N: int) -> np.ndarray:
    """2 q^(1/8) sin(pi z) prod_{n<=N} (1-q^n)(1-q^n x)(1-q^n/x), elementwise."""
    z = np.asarray(z, dtype=complex)
    q = np.exp(2j * np.pi * tau)
    x = np.exp(2j * np.pi * z)
    xi = 1 / x
    prod = np.ones_like(z)
    qn = 1.0 + 0j
    for _ in range(N):
        qn = qn * q
        prod *= (1 - qn) * (1 - qn * x) * (1 - qn * xi)
    return 2 * np.exp(0.25j * np.pi * tau) * np.sin(np.pi * z) * prod


def theta_prime0(tau: complex, N: int) -> complex:
    q = np.exp(2j * np.pi * tau)
    p = 1.0 + 0j
    qn = 1.0 + 0j
    for _ in range(N):
        qn *= q
        p *= (1 - qn) ** 3
    return complex(2 * np.pi * np.exp(0.25j * np.pi * tau) * p)


def sigma_batch(w, t, tau: complex, N: int) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    t = np.asarray(t, dtype=complex)
    num = theta_batch(w - t, tau, N)
    den = theta_batch(w, tau, N) * theta_batch(t, tau, N)
    return num * theta_prime0(tau, N) / den
