"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel: best time for each backend and the speedup.
"""
import argparse
import timeit

import numpy as np

from hardy_interp import kernels
from hardy_interp.quadrature import graded_circle_rule


def cases():
    rng = np.random.default_rng(0)
    rule = graded_circle_rule([0.0, 1.0, -2.0], base_anchors=64)
    v = rng.standard_normal(rule.anchor.size)
    vc = v + 1j * rng.standard_normal(v.size)
    tz = rng.uniform(-np.pi, np.pi, 64)
    r = rng.uniform(0.0, 0.999, 64)
    pts = 1.0 - 0.5 ** np.arange(1, 41)
    nodes = rng.uniform(-0.6, 0.6, 12) + 1j * rng.uniform(-0.6, 0.6, 12)
    gammas = 0.9 * np.exp(2j * np.pi * rng.random(12))
    z = 0.99 * np.exp(2j * np.pi * rng.random(4096))
    lc = np.log(rng.random(200)) + 0j
    ln = np.log(1.0 - 0.5 ** np.arange(1, 201) + 0j)
    return {
        "herglotz_sum": (rule.anchor, rule.offset, rule.weight, vc, tz, r, 1.0 - r),
        "poisson_sum": (rule.anchor, rule.offset, rule.weight, v, tz, r, 1.0 - r),
        "conjugate_sum": (rule.anchor, rule.offset, rule.weight, v, tz, rng.standard_normal(64)),
        "log_separation_products": (pts,),
        "schur_eval": (nodes, gammas, 0.3, z),
        "blaschke_eval": (list(nodes), z),
        "log_power_sums": (lc, ln, np.geomspace(1e2, 1e4, 200)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'kernel':26s}" + "".join(f"{name:>12s}" for name in impls) + "     speedup")
    for name, call_args in cases().items():
        best = {}
        for backend, mod in impls.items():
            fn = getattr(mod, name)
            n = max(1, int(0.2 / max(1e-6, timeit.timeit(lambda: fn(*call_args), number=1))))
            best[backend] = min(timeit.repeat(lambda: fn(*call_args), number=n, repeat=args.repeat)) / n
        line = f"{name:26s}" + "".join(f"{best[b] * 1e3:10.3f}ms" for b in impls)
        if "cython" in best:
            line += f"  {best['python'] / best['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
