import os
import subprocess
import sys

import numpy as np
import pytest

from hardy_interp import kernels
from hardy_interp.quadrature import graded_circle_rule

BACKENDS = kernels.backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


def kernel_cases():
    rng = np.random.default_rng(11)
    rule = graded_circle_rule([0.0, 2.0], base_anchors=16)
    v = rng.standard_normal(rule.anchor.size)
    vc = v + 1j * rng.standard_normal(v.size)
    tz = rng.uniform(-np.pi, np.pi, 17)
    r = rng.uniform(0.0, 0.99, 17)
    nodes = rng.uniform(-0.6, 0.6, 7) + 1j * rng.uniform(-0.6, 0.6, 7)
    gammas = 0.9 * np.exp(2j * np.pi * rng.random(7))
    z = 0.98 * np.sqrt(rng.random(300)) * np.exp(2j * np.pi * rng.random(300))
    lc = np.log(rng.random(30)) + 1j * rng.uniform(-3, 3, 30)
    lc[[3, 7]] = -1e300
    ln = np.log(1.0 - 0.5 ** np.arange(1, 31) + 0j)
    return {
        "herglotz_sum": (rule.anchor, rule.offset, rule.weight, vc, tz, r, 1.0 - r),
        "poisson_sum": (rule.anchor, rule.offset, rule.weight, v, tz, r, 1.0 - r),
        "conjugate_sum": (rule.anchor, rule.offset, rule.weight, v, tz + 1e-3, rng.standard_normal(17)),
        "log_separation_products": (1.0 - 0.5 ** np.arange(1, 25),),
        "schur_eval": (nodes, gammas, 0.3 - 0.2j, z),
        "blaschke_eval": (list(nodes) + [0.0], z),
        "log_power_sums": (lc, ln, np.geomspace(1, 1e4, 50)),
    }


@compiled
@pytest.mark.parametrize("name", list(kernel_cases()))
def test_backends_agree(name):
    args = kernel_cases()[name]
    a = np.asarray(getattr(BACKENDS["python"], name)(*args))
    b = np.asarray(getattr(BACKENDS["cython"], name)(*args))
    assert a.shape == b.shape
    scale = max(1.0, float(np.max(np.abs(a))))
    assert np.max(np.abs(a - b)) <= 1e-12 * scale


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_blaschke_and_schur_against_direct_formulas(backend):
    mod = BACKENDS[backend]
    rng = np.random.default_rng(2)
    zeros = [0.3, -0.5j, 0.0]
    z = 0.9 * np.sqrt(rng.random(50)) * np.exp(2j * np.pi * rng.random(50))
    # factors |a|/a (a - z)/(1 - conj(a) z), and z for the zero at the origin
    want = z
    for a in (0.3, -0.5j):
        want = want * (abs(a) / a) * (a - z) / (1 - np.conj(a) * z)
    assert np.allclose(mod.blaschke_eval(zeros, z), want, atol=1e-14)
    # one Schur step: f = (g + b t) / (1 + conj(g) b t) with b the factor at the node
    node, g, t = 0.4 + 0.1j, 0.5j, 0.2
    b = (z - node) / (1 - np.conj(node) * z)
    assert np.allclose(mod.schur_eval([node], [g], t, z), (g + b * t) / (1 + np.conj(g) * b * t), atol=1e-14)


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_log_separation_and_power_sums(backend):
    mod = BACKENDS[backend]
    pts = np.array([0.1, 0.5j, -0.3 + 0.2j])
    want = []
    for i, p in enumerate(pts):
        others = np.delete(pts, i)
        want.append(np.sum(np.log(np.abs(others - p) / np.abs(1 - np.conj(others) * p))))
    assert np.allclose(mod.log_separation_products(pts), want, rtol=1e-13)
    c = np.array([0.5, -0.25 + 0.1j, 2.0])
    lam = np.array([0.9, 0.5j, -0.7])
    powers = np.array([0.0, 1.0, 5.0, 40.0])
    direct = np.array([np.sum(c * lam ** int(n)) for n in powers])
    got = mod.log_power_sums(np.log(c), np.log(lam), powers)
    assert np.allclose(np.exp(got), direct, rtol=1e-12)
    # the -1e300 sentinel stands for a zero coefficient
    assert np.exp(mod.log_power_sums(np.array([-1e300 + 0j]), np.array([np.log(0.5) + 0j]), [2.0])[0]) == 0


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, HARDY_INTERP_PURE="1")
    code = "import hardy_interp; print(hardy_interp.BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert res.returncode == 0 and res.stdout.strip() == "python"


@compiled
def test_compiled_backend_is_default():
    env = {k: v for k, v in os.environ.items() if k != "HARDY_INTERP_PURE"}
    code = "import hardy_interp; print(hardy_interp.BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert res.stdout.strip() == "cython"


def test_pure_backend_end_to_end():
    env = dict(os.environ, HARDY_INTERP_PURE="1")
    code = (
        "import numpy as np\n"
        "from hardy_interp import PointSequence, outer_interpolate_bounded_below\n"
        "seq = PointSequence.exponential(0.5, 6)\n"
        "w = np.linspace(0.5, 2.0, 6)\n"
        "f, cert = outer_interpolate_bounded_below(seq, w)\n"
        "print(cert.max_residual_rel < 1e-6)\n"
    )
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert res.returncode == 0 and res.stdout.strip() == "True", res.stderr
