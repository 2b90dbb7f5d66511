import cmath
import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from canonform import _theta_py
from canonform import theta as th

ctxs = st.builds(
    lambda a, b: th.ThetaContext(complex(a, b)),
    st.floats(-0.5, 0.5), st.floats(0.5, 2.0),
)
small = st.builds(complex, st.floats(-0.45, 0.45), st.floats(-0.45, 0.45))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_context_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        th.ThetaContext(0.5 - 1j)


def test_truncation_grows_with_argument():
    ctx = th.ThetaContext(1j)
    assert ctx.terms_for(2.0) > ctx.terms_for(0.0) == ctx.N
    assert ctx.doubled().N == 2 * ctx.N


def test_theta_is_odd_and_matches_product_form():
    ctx = th.ThetaContext(0.1 + 0.8j)
    z = 0.23 - 0.11j
    assert rel(th.theta(-z, ctx), -th.theta(z, ctx)) < 1e-13
    # i e^{pi i (tau/4 - z)} (x; q)(q/x; q)(q; q)
    q, x = ctx.q, cmath.exp(2j * math.pi * z)
    prod = 1 - x
    for n in range(1, 80):
        prod *= (1 - q**n) * (1 - q**n * x) * (1 - q**n / x)
    alt = 1j * cmath.exp(1j * math.pi * (ctx.tau / 4 - z)) * prod
    assert rel(th.theta(z, ctx), alt) < 1e-12


@settings(max_examples=50, deadline=None)
@given(ctxs, small)
def test_quasi_periodicity(ctx, z):
    t0 = th.theta(z, ctx)
    assume(abs(t0) >= 1e-3)
    assert rel(th.theta(z + 1, ctx), -t0) < 1e-11
    factor = -cmath.exp(-1j * math.pi * ctx.tau - 2j * math.pi * z)
    assert rel(th.theta(z + ctx.tau, ctx), factor * t0) < 1e-10


@settings(max_examples=30, deadline=None)
@given(ctxs, small)
def test_derivatives_against_differences(ctx, z):
    assume(min(abs(z), abs(th.theta(z, ctx))) >= 0.05)
    h = 1e-5
    fd = (th.theta(z + h, ctx) - th.theta(z - h, ctx)) / (2 * h)
    assert rel(th.theta_prime(z, ctx), fd) < 1e-7
    rho_fd = (th.rho(z + h, ctx) - th.rho(z - h, ctx)) / (2 * h)
    assert rel(th.rho_prime(z, ctx), rho_fd) < 1e-6
    assert rel(th.rho(z, ctx), th.theta_prime(z, ctx) / th.theta(z, ctx)) < 1e-10


def test_theta_prime_at_zero():
    ctx = th.ThetaContext(0.3 + 1.1j)
    assert rel(th.theta_prime(0, ctx), th.theta_prime0(ctx)) < 1e-13


def test_sigma_derivatives():
    ctx = th.ThetaContext(-0.2 + 0.9j)
    w, t, h = 0.31 + 0.07j, -0.18 + 0.12j, 1e-5
    dw = (th.sigma(w + h, t, ctx) - th.sigma(w - h, t, ctx)) / (2 * h)
    dt = (th.sigma(w, t + h, ctx) - th.sigma(w, t - h, ctx)) / (2 * h)
    dtw = (th.dsigma_dw(w, t + h, ctx) - th.dsigma_dw(w, t - h, ctx)) / (2 * h)
    assert rel(th.dsigma_dw(w, t, ctx), dw) < 1e-8
    assert rel(th.dsigma_dt(w, t, ctx), dt) < 1e-8
    assert rel(th.d2sigma_dt_dw(w, t, ctx), dtw) < 1e-7


def test_sigma_pole_residue_is_one():
    ctx = th.ThetaContext(0.5j + 0.1)
    w = 0.2 + 0.1j
    err = [abs(t * th.sigma(w, t, ctx) - 1) for t in (1e-3, 1e-4)]
    assert 8 <= err[0] / err[1] <= 12


def test_trig_limit():
    ctx = th.ThetaContext(30j)
    w, t = 0.3 + 0.2j, -0.1 + 0.05j
    assert rel(th.sigma(w, t, ctx), th.sigma_trig(w, t)) < 1e-12


@pytest.mark.parametrize("kernel", ["active", "numpy"])
def test_batch_kernels_match_scalar(kernel):
    mod = _theta_py if kernel == "numpy" else th._kernel
    ctx = th.ThetaContext(0.15 + 1.3j)
    rng = np.random.default_rng(7)
    w = rng.uniform(-0.4, 0.4, 50) + 1j * rng.uniform(-0.4, 0.4, 50)
    t = rng.uniform(-0.4, 0.4, 50) + 1j * rng.uniform(-0.4, 0.4, 50)
    N = ctx.terms_for(0.8)
    got = mod.sigma_batch(w.reshape(5, 10), t.reshape(5, 10), ctx.tau, N)
    assert got.shape == (5, 10)
    want = np.array([th.sigma(a, b, ctx) for a, b in zip(w, t)]).reshape(5, 10)
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-12
    z = w[:7]
    assert np.allclose(mod.theta_batch(z, ctx.tau, N), [th.theta(x, ctx) for x in z], rtol=1e-13, atol=0)


def test_sigma_array_broadcasts():
    ctx = th.ThetaContext(1j)
    out = th.sigma_array(0.25, np.array([0.1, 0.2j]), ctx)
    assert out.shape == (2,)
    assert rel(out[1], th.sigma(0.25, 0.2j, ctx)) < 1e-13


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, CANONFORM_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import canonform.theta as t; print(t.KERNEL)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_compiled_kernel_loaded_when_built():
    try:
        import canonform._theta_kernel  # noqa: F401
    except ImportError:
        pytest.skip("compiled kernel not built")
    if os.environ.get("CANONFORM_PURE", "") in ("", "0"):
        assert th.KERNEL == "cython"
