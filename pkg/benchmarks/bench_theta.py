"""Compare the compiled and numpy sigma kernels, plus a full Theta evaluation.

    python benchmarks/bench_theta.py [--sizes 1000,10000,100000] [--repeat 5]
"""
import argparse
import random
import timeit

import numpy as np

from canonform import _theta_py
from canonform import canonical as C
from canonform import forms as F
from canonform import theta as th
from canonform.lie import root_system_by_name

try:
    from canonform import _theta_kernel
except ImportError:
    _theta_kernel = None


def sample(n, seed=0):
    rng = np.random.default_rng(seed)
    w = rng.uniform(-0.4, 0.4, n) + 1j * rng.uniform(-0.3, 0.3, n)
    t = rng.uniform(-0.4, 0.4, n) + 1j * rng.uniform(-0.3, 0.3, n)
    return w, t


def bench_kernels(sizes, repeat, tau=0.1 + 1.1j):
    ctx = th.ThetaContext(tau)
    N = ctx.terms_for(0.6)
    kernels = [("numpy", _theta_py)]
    if _theta_kernel is not None:
        kernels.append(("cython", _theta_kernel))
    print(f"sigma_batch, tau={tau}, N={N}")
    for n in sizes:
        w, t = sample(n)
        ref = _theta_py.sigma_batch(w, t, tau, N)
        row = [f"  n={n:>7}"]
        for name, mod in kernels:
            secs = min(timeit.repeat(lambda: mod.sigma_batch(w, t, tau, N), number=1, repeat=repeat))
            err = float(np.max(np.abs(mod.sigma_batch(w, t, tau, N) - ref) / np.abs(ref)))
            row.append(f"{name} {secs * 1e3:8.2f} ms (rel dev {err:.1e})")
        print("  ".join(row))


def bench_form(repeat, k=(4, 3)):
    rs = root_system_by_name("A2")
    exp = C.omega_g(k, rs)
    rng = random.Random(1)
    vals = {(i + 1, j + 1): complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.3, 0.3))
            for i in range(2) for j in range(k[i])}
    ctx = th.ThetaContext(1.1j)
    secs = min(timeit.repeat(lambda: F.theta_canonical_value(exp, [0.3, -0.1, 0.05], vals, ctx, 0.02j),
                             number=1, repeat=repeat))
    print(f"Theta_g for A2 k={k} with kernel {th.KERNEL}: {secs * 1e3:.1f} ms")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    bench_kernels([int(x) for x in args.sizes.split(",")], args.repeat)
    bench_form(args.repeat)


if __name__ == "__main__":
    main()
