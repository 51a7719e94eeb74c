"""Acceptance criteria 1-13.

Each test prints one ``criterion N: PASS|FAIL`` line; the lines are repeated
in the pytest terminal summary. Run directly with
``python3 tests/test_acceptance.py`` to get only the criterion lines.
"""
import functools
import json
import os
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

from _oracles import pick_min_eig, projection_oracle, random_contraction, random_infeasible
from hardy_interp.boundary_calculus import (
    LOWER_CONSTANT,
    UPPER_CONSTANT,
    BoundaryFunction,
    WeightProfile,
    a_h,
    hl_pairing_check,
    poisson_eval,
)
from hardy_interp.disk_geometry import PointSequence
from hardy_interp.errors import InfeasibleError
from hardy_interp.hardy_functions import CERTIFIED, ClosedForm, boundary_mean_log, outer_deficit
from hardy_interp.interpolation import (
    TargetSequence,
    exact_decay_interpolate,
    growth_interpolate,
    growth_ratios,
    outer_interpolate_bounded_below,
    schur_interpolate,
)
from hardy_interp.model_space import CoefficientSequence, fourier_decay_fit, toeplitz_apply
from hardy_interp.obstructions import (
    BLASCHKE_FORCED,
    INNER_FORCED,
    classify_decay,
    mtone_envelope,
    radial_outer_decay_check,
)
from hardy_interp.quadrature import uniform_grid

ROOT = Path(__file__).resolve().parent.parent
PROFILES = {"power(0.5)": WeightProfile.power(0.5), "log_power(100,3)": WeightProfile.log_power(100, 3)}
RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                ok, detail = fn(*args, **kwargs)
            except Exception as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
                _record(number, title, ok, detail)
                raise
            _record(number, title, ok, detail)
            assert ok, detail
        return run
    return wrap


def _record(number, title, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title} ({detail})"
    RESULTS[number] = line
    print(line)


# ---------------------------------------------------------------------------


@criterion(1, "Poisson normalization")
def test_criterion_01_poisson_normalization():
    one = BoundaryFunction.constant(1.0)
    errs = [abs(poisson_eval(one, z) - 1.0) for z in (0.0, 0.5, 0.9j, 0.99)]
    return max(errs) <= 1e-10, f"max error {max(errs):.2e}"


@criterion(2, "singular inner example exp(-2/(1-z))")
def test_criterion_02_singular_inner():
    f = ClosedForm.exp_neg_c_power(2.0, 1.0)
    mean = boundary_mean_log(f)
    log0 = float(np.real(f.log(0.0)))
    deficit = outer_deficit(f).deficit
    radial = radial_outer_decay_check(f)
    dev = float(np.max(np.abs(radial.values + 2.0)))
    ok = abs(mean + 1) <= 1e-8 and log0 == -2.0 and abs(deficit - 1) <= 1e-6 and not radial.passed and dev <= 1e-6
    return ok, f"mean {mean:.12f}, log|f(0)| {log0}, deficit {deficit:.10f}, radial fails {not radial.passed}, max |s+2| {dev:.1e}"


@criterion(3, "A_h sandwich")
def test_criterion_03_a_h_sandwich():
    profiles = {f"power({a})": WeightProfile.power(a) for a in (0.3, 0.5, 0.7)}
    profiles["log_power(100,3)"] = WeightProfile.log_power(100, 3)
    margins = []
    for h in profiles.values():
        for r in (0.9, 0.99, 0.999):
            res = a_h(r, h, check=False)
            margins.append(min(res.ratio - LOWER_CONSTANT, UPPER_CONSTANT - res.ratio))
    return min(margins) >= 0.0, f"smallest margin {min(margins):.4f} over 12 cases"


@criterion(4, "Hardy-Littlewood rearrangement")
def test_criterion_04_hardy_littlewood():
    rng = np.random.default_rng(4)
    worst = -np.inf
    ok = True
    for _ in range(1000):
        # half the trials use sparse f (random zeros) to exercise ties
        f = rng.random(256) * (rng.random(256) < rng.choice([0.3, 1.0]))
        g = rng.exponential(size=256)
        res = hl_pairing_check(BoundaryFunction.from_values(f), BoundaryFunction.from_values(g))
        # oracle: pair sorted values (rearrangement inequality on the grid)
        rhs = float(np.mean(np.sort(f) * np.sort(g)) * 2 * np.pi)
        ok &= res.lhs <= res.rhs + 1e-12 and abs(res.rhs - rhs) <= 1e-12 * max(1.0, rhs)
        worst = max(worst, res.lhs - res.rhs)
    return bool(ok), f"1000 trials, max lhs - rhs {worst:.3e}"


@criterion(5, "Schur/Pick solver")
def test_criterion_05_schur_pick():
    rng = np.random.default_rng(5)
    grid = uniform_grid(1 << 14)
    worst_res, worst_sup, rejected = 0.0, 0.0, 0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        z = PointSequence.exponential(0.5, n).points
        w = random_contraction(rng)(z)
        f, _ = schur_interpolate(z, w)
        worst_res = max(worst_res, float(np.max(np.abs(f(z) - w) / np.abs(w))))
        worst_sup = max(worst_sup, float(np.max(np.abs(f.boundary(grid)))))
    for _ in range(100):
        n = int(rng.integers(2, 9))
        z = PointSequence.exponential(0.5, n).points
        w = random_infeasible(rng, z)
        assert pick_min_eig(z, w) < -1e-6
        try:
            schur_interpolate(z, w)
        except InfeasibleError:
            rejected += 1
    ok = worst_res <= 1e-8 and worst_sup <= 1 + 1e-6 and rejected == 100
    return ok, f"max rel residual {worst_res:.1e}, max boundary sup {worst_sup:.9f}, infeasible rejected {rejected}/100"


@criterion(6, "bounded-below outer interpolation end to end")
def test_criterion_06_bounded_below():
    rng = np.random.default_rng(6)
    seq = PointSequence.exponential(0.5, 12)
    worst_res, worst_def, min_pos, certified = 0.0, 0.0, np.inf, 0
    t0 = time.perf_counter()
    for _ in range(50):
        w = rng.uniform(0.5, 2.0, 12) * np.exp(2j * np.pi * rng.random(12))
        f, cert = outer_interpolate_bounded_below(seq, w)
        worst_res = max(worst_res, float(np.max(np.abs(np.expm1(f.log(seq.points) - np.log(w))))))
        worst_def = max(worst_def, abs(outer_deficit(f).deficit))
        min_pos = min(min_pos, cert.positivity)
        certified += cert.outer_status == CERTIFIED
    ok = worst_res <= 1e-6 and worst_def <= 1e-6 and min_pos > 0 and certified == 50
    return ok, (f"max rel residual {worst_res:.1e}, max deficit {worst_def:.1e}, min Re g {min_pos:.3f}, "
                f"certified {certified}/50, {time.perf_counter() - t0:.1f}s")


@criterion(7, "obstruction classification")
def test_criterion_07_obstructions():
    seq = PointSequence.exponential(0.5, 12)
    inner = classify_decay(seq, TargetSequence.from_generator(seq, {"kind": "exp_neg_c_over_gap", "c": 1.0}))
    bl = classify_decay(seq, TargetSequence.from_generator(seq, {"kind": "exp_neg_c_over_gap_sq", "c": 1.0}))
    dev = float(np.max(np.abs(inner.s_values + 1.0)))
    ok = inner.classification == INNER_FORCED and dev <= 1e-12 and bl.classification == BLASCHKE_FORCED
    return ok, f"{inner.classification} with max |s+1| {dev:.1e}; {bl.classification}"


def _growth(h):
    seq = PointSequence.exponential(0.5, 10)
    psi, report, _ = growth_interpolate(seq, h)
    return seq, psi, report


@criterion(8, "growth interpolant")
def test_criterion_08_growth():
    parts, ok = [], True
    for name, h in PROFILES.items():
        seq, psi, report = _growth(h)
        _, logs, _ = growth_ratios(seq, h)
        inside = np.all(report.ratios >= LOWER_CONSTANT - 1e-8) and np.all(report.ratios <= UPPER_CONSTANT + 1e-8)
        rel = float(np.max(np.abs(np.expm1(np.real(psi.log(seq.points.real)) - logs))))
        ok &= bool(inside) and rel <= 1e-6
        parts.append(f"{name}: ratios [{report.ratios.min():.4f}, {report.ratios.max():.4f}], residual {rel:.1e}")
    return ok, "; ".join(parts)


@criterion(9, "bounded outer closed form exp(-(1-z)^-1/2)")
def test_criterion_09_bounded_outer_example():
    alpha = 0.5
    f = ClosedForm.exp_neg_c_power(1.0, alpha)
    th = uniform_grid(1 << 16)
    th = th[th != 0.0]
    sup = float(np.max(np.abs(f.boundary(th))))
    bound = float(np.exp(-(2.0 ** -alpha) * np.cos(np.pi * alpha / 2)))
    deficit = outer_deficit(f).deficit
    return sup <= bound + 1e-8 and abs(deficit) <= 1e-6, f"sup {sup:.6f} <= {bound:.6f}, deficit {deficit:.1e}"


@criterion(10, "exact-decay construction f = phi^psi")
def test_criterion_10_exact_decay():
    parts, ok = [], True
    seq = PointSequence.exponential(0.5, 12)
    for name, h in PROFILES.items():
        f, cert = exact_decay_interpolate(seq, h)
        d = np.asarray(cert.details["d"])
        inside = d.min() >= LOWER_CONSTANT - 1e-8 and d.max() <= UPPER_CONSTANT + 1e-8
        ok &= bool(inside) and cert.max_residual_rel <= 1e-6 and cert.positivity > 0
        parts.append(f"{name}: d in [{d.min():.4f}, {d.max():.4f}], residual {cert.max_residual_rel:.1e}, "
                     f"min Re psi {cert.positivity:.3f}")
    return ok, "; ".join(parts)


@criterion(11, "rearrangement envelope margins")
def test_criterion_11_envelope():
    parts, ok = [], True
    for name, h in PROFILES.items():
        seq, psi, _ = _growth(h)
        targets = np.abs(psi(seq.points))
        env = mtone_envelope(seq, targets, psi)
        ok &= env.min_margin >= -1e-8
        parts.append(f"{name}: min margin {env.min_margin:.3e}")
    return ok, "; ".join(parts)


@criterion(12, "model space Toeplitz action and Fourier decay")
def test_criterion_12_model_space():
    t0 = time.perf_counter()
    rng = np.random.default_rng(12)
    seq5 = PointSequence.exponential(0.5, 5)
    a = rng.normal(size=5) + 1j * rng.normal(size=5)
    worst = 0.0
    for phi, bnd in ((ClosedForm.mobius(1, 2, 0, 1), lambda x: x + 2), (ClosedForm.one_minus_z(), lambda x: 1 - x)):
        got = toeplitz_apply(phi, a, seq5).values
        want = projection_oracle(seq5.points, a, bnd)
        worst = max(worst, float(np.max(np.abs(got - want)) / np.max(np.abs(want))))
    seq = PointSequence.exponential(0.5, 10)
    fit = fourier_decay_fit(seq, CoefficientSequence.from_generator(seq, {"kind": "exp_neg_c_over_gap", "c": 3.0}))
    below = bool(np.all(fit.log_abs <= -np.sqrt(fit.N)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and below and fit.slope_sqrt < 0 and fit.r2_sqrt >= 0.9 and elapsed <= 60
    return ok, (f"Toeplitz vs projection {worst:.1e}, |f_hat(N)| <= exp(-sqrt N) {below}, "
                f"slope {fit.slope_sqrt:.3f}, R^2 {fit.r2_sqrt:.4f}, {elapsed:.1f}s")


@criterion(13, "determinism of result bundles")
def test_criterion_13_determinism():
    problems = sorted((ROOT / "problems").glob("*.json"))
    runs = []
    with tempfile.TemporaryDirectory() as tmp:
        for k in range(2):
            out = {}
            for path in problems:
                d = os.path.join(tmp, f"{k}_{path.stem}")
                subprocess.run([sys.executable, "-m", "hardy_interp", "--input", str(path), "--out", d],
                               capture_output=True, check=False)
                out[path.stem] = Path(d, "bundle.json").read_bytes()
            runs.append(out)
    same = [name for name in runs[0] if runs[0][name] == runs[1][name]]
    return len(same) == len(problems) and len(problems) > 0, f"{len(same)}/{len(problems)} bundles byte-identical"


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)
