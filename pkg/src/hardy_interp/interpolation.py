"""Interpolation pipelines.

* finite Nevanlinna-Pick test and the Schur-Nevanlinna recursion;
* interpolation inside a disk D(a, r) by an affine image of a Schur
  interpolant, which stays in a half-plane and is therefore outer;
* bounded-below targets via principal k-th roots that cluster near 1;
* ratio transfer, growth-profile interpolants and the exact-decay
  construction f = phi0^psi.

Feasibility is always decided per instance by a Pick test; the seed
delta^2/4 only starts the ladder of working indices.
"""
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .boundary_calculus import LOWER_CONSTANT, UPPER_CONSTANT, WeightProfile
from .disk_geometry import PointSequence, as_point_sequence, carleson_seed, separation_delta
from .errors import ContractError, DomainError, InfeasibleError, SandwichError
from .hardy_functions import (
    CERTIFIED,
    CONSISTENT,
    HAS_INNER,
    Affine,
    Cayley,
    ClosedForm,
    Constant,
    HardyFunction,
    Power,
    Product,
    SchurInterpolant,
    outer_deficit,
    outer_from_log_modulus,
    power_fn,
)
from .quadrature import uniform_grid

PSD_FLOOR = 1e-10
STRICT_FLOOR = 1e-10
MAX_HALVINGS = 20
MAX_ROOT = 1 << 16
MODULUS_SPAN = 1e12
SANDWICH_TOL = 1e-8
SUP_GRID = 1 << 14


# ---------------------------------------------------------------------------
# targets


GENERATORS = ("exp_neg_c_over_gap", "exp_neg_c_over_gap_sq", "gap_power", "profile_decay", "bounded")


def _generator_logs(points: PointSequence, gen: dict):
    kind = gen["kind"]
    gap = points.gaps
    n = len(points)
    if kind == "exp_neg_c_over_gap":
        out = -float(gen["c"]) / gap
    elif kind == "exp_neg_c_over_gap_sq":
        out = -float(gen["c"]) / gap ** 2
    elif kind == "gap_power":
        d = np.broadcast_to(np.asarray(gen["d"], dtype=float), (n,))
        out = d * np.log(gap)
    elif kind == "profile_decay":
        h = WeightProfile.from_dict(gen["profile"])
        out = -h.integral(gap) / gap
    elif kind == "bounded":
        rng = np.random.default_rng(int(gen.get("seed", 0)))
        lo, hi = float(gen["m"]), float(gen["M"])
        if not 0.0 < lo <= hi:
            raise DomainError("bounded generator needs 0 < m <= M")
        mod = lo + (hi - lo) * rng.random(n)
        phase = np.pi * (2.0 * rng.random(n) - 1.0)
        out = np.log(mod) + 1j * phase
    else:
        raise DomainError(f"unknown target generator {kind!r}")
    out = np.asarray(out, dtype=complex)
    if "scale" in gen:
        s = gen["scale"]
        s = complex(*s) if isinstance(s, (list, tuple)) else complex(s)
        if s == 0:
            raise DomainError("scale must be nonzero")
        out = out + np.log(s)
    return out


@dataclass(frozen=True)
class TargetSequence:
    """Targets w_n. ``log_values`` (principal branch for explicit data) are
    authoritative: generator targets such as exp(-1/(1 - l)^2) underflow long
    before their logarithms lose accuracy."""

    values: np.ndarray
    log_values: np.ndarray
    generator: Optional[dict] = field(default=None, compare=False)

    @classmethod
    def explicit(cls, values):
        v = np.atleast_1d(np.asarray(values, dtype=complex))
        with np.errstate(divide="ignore"):
            lv = np.log(v)
        return cls(v, lv)

    @classmethod
    def from_logs(cls, log_values, generator=None):
        lv = np.atleast_1d(np.asarray(log_values, dtype=complex))
        return cls(np.exp(lv), lv, generator)

    @classmethod
    def from_generator(cls, points, generator: dict):
        points = as_point_sequence(points)
        return cls.from_logs(_generator_logs(points, generator), dict(generator))

    def __len__(self):
        return self.values.size

    @property
    def log_abs(self):
        return np.real(self.log_values)

    @property
    def m(self):
        return float(np.exp(np.min(self.log_abs)))

    @property
    def M(self):
        return float(np.exp(np.max(self.log_abs)))

    @property
    def has_zero(self):
        return bool(np.any(np.isneginf(self.log_abs)))

    def scaled(self, c):
        c = complex(c)
        g = None
        if self.generator is not None:
            g = dict(self.generator)
            old = g.get("scale", 1.0)
            old = complex(*old) if isinstance(old, (list, tuple)) else complex(old)
            new = old * c
            g["scale"] = [new.real, new.imag] if new.imag else new.real
        return TargetSequence(self.values * c, self.log_values + np.log(c), g)

    def to_dict(self):
        if self.generator is not None:
            return {"generator": self.generator}
        return {"values": [[v.real, v.imag] for v in self.values]}


def as_targets(targets, points=None):
    if isinstance(targets, TargetSequence):
        return targets
    if isinstance(targets, dict):
        return TargetSequence.from_generator(points, targets)
    return TargetSequence.explicit(targets)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class InterpolationCertificate:
    residual_abs: np.ndarray
    residual_rel: np.ndarray
    sup_bound: Optional[float]
    outer_status: str
    positivity: Optional[float] = None
    details: dict = field(default_factory=dict)

    @property
    def max_residual_rel(self):
        return float(np.max(self.residual_rel)) if self.residual_rel.size else 0.0

    def to_dict(self):
        return {
            "residual_abs": [float(x) for x in self.residual_abs],
            "residual_rel": [float(x) for x in self.residual_rel],
            "max_residual_rel": self.max_residual_rel,
            "sup_bound": self.sup_bound,
            "outer_status": self.outer_status,
            "positivity": self.positivity,
            "details": _plain(self.details),
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def residuals(f: HardyFunction, points, targets: TargetSequence, use_log=False):
    """Absolute and relative interpolation residuals.

    With ``use_log`` the relative residual is |exp(log f - log w) - 1|, which
    stays meaningful when w underflows.
    """
    z = as_point_sequence(points).points
    if use_log:
        lf = f.log(z)
        rel = np.abs(np.expm1(lf - targets.log_values))
        return rel * np.abs(targets.values), rel
    v = f.eval(z)
    err = np.abs(v - targets.values)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = err / np.abs(targets.values)
    return err, rel


# ---------------------------------------------------------------------------
# Pick / Schur


@dataclass(frozen=True)
class PickResult:
    matrix: np.ndarray
    min_eigenvalue: float
    norm: float
    psd: bool

    @property
    def strictly_positive(self):
        return self.min_eigenvalue > STRICT_FLOOR * max(self.norm, 1.0)

    def to_dict(self):
        return {"min_eigenvalue": self.min_eigenvalue, "norm": self.norm, "psd": self.psd,
                "matrix_re": self.matrix.real.tolist(), "matrix_im": self.matrix.imag.tolist()}


def pick_matrix(points, targets, floor=PSD_FLOOR) -> PickResult:
    """P_ij = (1 - w_i conj(w_j)) / (1 - l_i conj(l_j)); PSD up to -floor*||P||."""
    z = as_point_sequence(points).points
    w = as_targets(targets, points).values
    if z.size != w.size:
        raise ContractError(f"{z.size} points but {w.size} targets")
    if z.size == 0:
        raise ContractError("empty interpolation problem")
    P = (1.0 - w[:, None] * np.conj(w[None, :])) / (1.0 - z[:, None] * np.conj(z[None, :]))
    P = 0.5 * (P + P.conj().T)
    eig = np.linalg.eigvalsh(P)
    norm = float(np.max(np.abs(eig)))
    lo = float(eig[0])
    return PickResult(P, lo, norm, lo >= -floor * norm)


def _schur_coefficients(z, w, tol=1e-12):
    n = z.size
    cur = w.astype(complex).copy()
    gammas = []
    for j in range(n):
        g = cur[j]
        if abs(g) >= 1.0 - tol:
            rest = cur[j:]
            if abs(abs(g) - 1.0) <= 1e-9 and np.all(np.abs(rest - g) <= 1e-9):
                return np.asarray(gammas, dtype=complex), g / abs(g), z[:j]
            raise InfeasibleError(f"Schur parameter |gamma_{j}| = {abs(g):.12g} >= 1")
        gammas.append(g)
        zk = z[j + 1:]
        b = (zk - z[j]) / (1.0 - np.conj(z[j]) * zk)
        cur[j + 1:] = (cur[j + 1:] - g) / (1.0 - np.conj(g) * cur[j + 1:]) / b
    return np.asarray(gammas, dtype=complex), 0.0, z


def schur_interpolate(points, targets, check=True):
    """Rational f with ||f||_inf <= 1 and f(l_n) = w_n, or InfeasibleError."""
    seq = as_point_sequence(points)
    tg = as_targets(targets, seq)
    pick = pick_matrix(seq, tg)
    if not pick.psd:
        raise InfeasibleError(f"Pick matrix is not PSD (min eigenvalue {pick.min_eigenvalue:.3e})")
    if not pick.strictly_positive:
        warnings.warn(f"Pick matrix is near singular (min eigenvalue {pick.min_eigenvalue:.3e})",
                      RuntimeWarning, stacklevel=2)
    gammas, tail, nodes = _schur_coefficients(seq.points, tg.values)
    f = SchurInterpolant(nodes, gammas, tail)
    err, rel = residuals(f, seq, tg)
    sup = f.sup_on_grid(SUP_GRID)
    cert = InterpolationCertificate(err, rel, sup, f.status, None,
                                    {"pick_min_eigenvalue": pick.min_eigenvalue, "degree": int(nodes.size)})
    return f, cert


# ---------------------------------------------------------------------------
# circle path


@dataclass(frozen=True)
class LadderAttempt:
    c_eff: float
    min_eigenvalue: float
    accepted: bool

    def to_dict(self):
        return {"c_eff": self.c_eff, "min_eigenvalue": self.min_eigenvalue, "accepted": self.accepted}


def _pick_ok(seq, t):
    p = pick_matrix(seq, TargetSequence.explicit(t))
    return p, p.strictly_positive and np.all(np.abs(t) < 1.0)


def circle_interpolate(points, targets, a, r, c_eff=None, alpha=None, grow=True):
    """phi = a + (r / C) g with g Schur-interpolating t_n = C (w_n - a) / r.

    C starts at the seed delta^2/4 (or ``c_eff``). If the scaled Pick matrix is
    strictly positive C is doubled while it stays so (a larger C shrinks the
    disk a + (r/C) D and improves the half-plane margin); otherwise C is
    halved up to 20 times. The result is certified outer when
    Re(e^{-i alpha} phi) > 0 on the boundary grid.
    """
    seq = as_point_sequence(points)
    tg = as_targets(targets, seq)
    a = complex(a)
    r = float(r)
    if a == 0:
        raise DomainError("center a must be nonzero")
    if not r >= 0.0:
        raise DomainError("radius must be nonnegative")
    if r > 0 and r / abs(a) >= 1.0:
        raise ContractError(f"r/|a| = {r / abs(a):.6g} >= 1: the disk D(a, r) meets 0")
    dist = np.abs(tg.values - a)
    if np.any(dist > r * (1.0 + 1e-12) + 1e-300):
        raise ContractError("targets leave the disk D(a, r)")
    alpha = float(np.angle(a)) if alpha is None else float(alpha)
    if r == 0.0:
        f = Affine(a, 0.0, Constant(0.0), alpha=alpha)
        err, rel = residuals(f, seq, tg)
        return f, InterpolationCertificate(err, rel, abs(a), f.status, f.positivity, {"c_eff": None, "ladder": []})
    c = carleson_seed(separation_delta(seq).delta) if c_eff is None else float(c_eff)
    attempts = []
    base = (tg.values - a) / r
    pick, ok = _pick_ok(seq, c * base)
    attempts.append(LadderAttempt(c, pick.min_eigenvalue, ok))
    if ok:
        while grow and 2.0 * c < 1.0:
            p2, ok2 = _pick_ok(seq, 2.0 * c * base)
            attempts.append(LadderAttempt(2.0 * c, p2.min_eigenvalue, ok2))
            if not ok2:
                break
            c *= 2.0
    else:
        for _ in range(MAX_HALVINGS):
            c *= 0.5
            pick, ok = _pick_ok(seq, c * base)
            attempts.append(LadderAttempt(c, pick.min_eigenvalue, ok))
            if ok:
                break
        if not ok:
            raise InfeasibleError("scaled Pick matrix not positive on the whole ladder",
                                  [x.to_dict() for x in attempts])
    g, gcert = schur_interpolate(seq, TargetSequence.explicit(c * base))
    f = Affine(a, r / c, g, alpha=alpha)
    err, rel = residuals(f, seq, tg)
    sup = f.sup_on_grid(SUP_GRID)
    g_re = np.real(np.exp(-1j * alpha) * g.boundary(uniform_grid(SUP_GRID)))
    details = {"c_eff": c, "ladder": [x.to_dict() for x in attempts], "a": a, "r": r, "alpha": alpha,
               "g_sup": gcert.sup_bound, "g_min_re": float(np.min(g_re))}
    return f, InterpolationCertificate(err, rel, sup, f.status, f.positivity, details)


# ---------------------------------------------------------------------------
# bounded-below targets


def _smallest_root(log_w, r, kmax=MAX_ROOT):
    """Smallest k <= kmax with max |exp(log_w / k) - 1| <= r, or None."""
    step = 4096
    for start in range(1, kmax + 1, step):
        k = np.arange(start, min(start + step, kmax + 1), dtype=float)
        dev = np.max(np.abs(np.expm1(log_w[None, :] / k[:, None])), axis=1)
        hit = np.flatnonzero(dev <= r)
        if hit.size:
            return int(k[hit[0]])
    return None


def _cayley_interpolate(seq, tg, ladder=None):
    """Right half-plane interpolant s (1 + g)/(1 - g) with g Schur-interpolating
    (w_n - s)/(w_n + s). For finite data this exists exactly when the matrix
    (w_i + conj(w_j)) / (1 - l_i conj(l_j)) is positive definite."""
    s = float(np.sqrt(tg.m * tg.M))
    t = (tg.values - s) / (tg.values + s)
    pick, ok = _pick_ok(seq, t)
    if not ok:
        raise InfeasibleError(
            f"no interpolant with positive real part (half-plane Pick eigenvalue {pick.min_eigenvalue:.3e})",
            list(ladder or []) + [{"path": "cayley", "min_eigenvalue": pick.min_eigenvalue, "accepted": False}])
    g, gcert = schur_interpolate(seq, TargetSequence.explicit(t))
    f = Cayley(g, s)
    if f.status != CERTIFIED:
        raise InfeasibleError("half-plane interpolant touches the imaginary axis on the grid",
                              list(ladder or []) + [{"path": "cayley", "g_sup": f.g_sup, "accepted": False}])
    err, rel = residuals(f, seq, tg)
    return f, InterpolationCertificate(err, rel, f.sup_on_grid(SUP_GRID), CERTIFIED, f.positivity, {
        "k": 1, "path": "cayley", "s": s, "g_sup": f.g_sup, "pick_min_eigenvalue": pick.min_eigenvalue,
        "circle_ladder": ladder})


def outer_interpolate_bounded_below(points, targets, positive_real_part=False):
    """Bounded outer phi with phi(l_n) = w_n for 0 < m <= |w_n| <= M.

    Default path: pick C on a ladder starting from the seed (doubling while
    the scaled Pick test passes, halving when it fails), set r = C/2, take the smallest k with all principal roots w_n^{1/k} in
    D(1, r), interpolate those roots by 1 + (r/C) g (real part >= 1/2) and
    return its k-th power.

    With ``positive_real_part`` the targets must lie in the right half-plane
    and are interpolated directly (k = 1), first on the disk centered at
    (min Re w + M)/2 and, if that disk is too large for the working index,
    through the Cayley transform of a Schur function. The result has positive
    real part; InfeasibleError when no such interpolant exists.
    """
    seq = as_point_sequence(points)
    tg = as_targets(targets, seq)
    if len(tg) == 0:
        raise ContractError("empty interpolation problem")
    if tg.has_zero:
        raise DomainError("targets must be nonzero")
    m, M = tg.m, tg.M
    if M / m > MODULUS_SPAN:
        raise ContractError(f"target moduli span {M / m:.3g} > {MODULUS_SPAN:.0e}")
    if positive_real_part:
        w = tg.values
        if np.any(np.real(w) <= 0.0):
            raise ContractError("positive_real_part path needs Re w_n > 0")
        a = 0.5 * (np.min(np.real(w)) + np.max(np.abs(w)))
        r = float(np.max(np.abs(w - a)))
        f, cert = circle_interpolate(seq, tg, a, r, alpha=0.0)
        if f.status == CERTIFIED:
            cert.details["k"] = 1
            cert.details["path"] = "half-plane"
            cert.outer_status = CERTIFIED
            return f, cert
        return _cayley_interpolate(seq, tg, cert.details.get("ladder"))
    attempts = []

    def rung(c):
        r = 0.5 * c
        k = _smallest_root(tg.log_values, r)
        if k is None:
            attempts.append({"c_eff": c, "r": r, "k": None, "accepted": False})
            return None
        pick, ok = _pick_ok(seq, c * np.expm1(tg.log_values / k) / r)
        attempts.append({"c_eff": c, "r": r, "k": k, "min_eigenvalue": pick.min_eigenvalue,
                         "accepted": bool(ok)})
        return (c, r, k) if ok else None

    # climb from the seed while the Pick test passes: larger C allows a
    # smaller k; rungs too low for any k <= 2^16 are skipped on the way up
    c = carleson_seed(separation_delta(seq).delta)
    best = rung(c)
    while 2.0 * c < 1.0 and (best is not None or attempts[-1]["k"] is None):
        nxt = rung(2.0 * c)
        c *= 2.0
        if nxt is None:
            if attempts[-1]["k"] is None:
                continue
            break
        best = nxt
    if best is None and attempts[0]["k"] is not None:
        c = attempts[0]["c_eff"]
        for _ in range(MAX_HALVINGS):
            c *= 0.5
            best = rung(c)
            if best is not None or attempts[-1]["k"] is None:
                break
    if best is None:
        last = attempts[-1]
        raise InfeasibleError(f"ladder exhausted at r={last['r']:.3g}, k={last['k']}", attempts)
    c, r, k = best
    roots_t = TargetSequence.from_logs(tg.log_values / k)
    g_out, _ = circle_interpolate(seq, roots_t, 1.0, r, c_eff=c, alpha=0.0, grow=False)
    phi = Power(g_out, k) if k > 1 else g_out
    err, rel = residuals(phi, seq, tg, use_log=True)
    deficit = outer_deficit(phi)
    status = CERTIFIED if (g_out.status == CERTIFIED and deficit.certified_outer) else CONSISTENT
    cert = InterpolationCertificate(err, rel, phi.sup_on_grid(SUP_GRID), status, g_out.positivity,
                                    {"k": k, "r": r, "c_eff": c, "ladder": attempts, "path": "kth-root",
                                     "deficit": deficit.to_dict()})
    return phi, cert


def transfer_ratio(points, from_targets, to_targets, base: HardyFunction):
    """base * F where F interpolates the ratios to/from (bounded above and below)."""
    seq = as_point_sequence(points)
    src = as_targets(from_targets, seq)
    dst = as_targets(to_targets, seq)
    if len(src) != len(dst):
        raise ContractError("target lengths differ")
    ratio = TargetSequence.from_logs(dst.log_values - src.log_values)
    if ratio.has_zero or not np.all(np.isfinite(ratio.log_abs)):
        raise DomainError("ratios must be finite and nonzero")
    F, fcert = outer_interpolate_bounded_below(seq, ratio)
    out = Product([base, F])
    err, rel = residuals(out, seq, dst, use_log=out.zero_free)
    status = base.status if base.status != CERTIFIED else fcert.outer_status
    return out, InterpolationCertificate(err, rel, None, status, fcert.positivity,
                                         {"ratio": fcert.to_dict()})


# ---------------------------------------------------------------------------
# growth profiles


def _require_real_increasing(seq):
    if not seq.is_real_increasing:
        raise ContractError("points must be real, in (0, 1) and strictly increasing")


def _node_logs(phi0, seq):
    z = seq.points.real
    lv = phi0.log(z)
    if np.max(np.abs(lv.imag)) > 1e-10 * max(1.0, np.max(np.abs(lv.real))):
        raise ContractError("phi0 is not real on the real axis; boundary data must be symmetric")
    return lv.real


@dataclass
class GrowthReport:
    ratios: np.ndarray
    lower: float = LOWER_CONSTANT
    upper: float = UPPER_CONSTANT

    @property
    def margins(self):
        return np.minimum(self.ratios - self.lower, self.upper - self.ratios)

    def to_dict(self):
        return {"ratios": self.ratios.tolist(), "lower": self.lower, "upper": self.upper,
                "min_margin": float(np.min(self.margins))}


def growth_ratios(points, h: WeightProfile, phi0=None):
    """r_n = -(1 - l_n) log phi0(l_n) / int_0^{1 - l_n} h and the outer phi0."""
    seq = as_point_sequence(points)
    _require_real_increasing(seq)
    phi0 = outer_from_log_modulus(h) if phi0 is None else phi0
    logs = _node_logs(phi0, seq)
    gap = seq.gaps
    ratios = -gap * logs / h.integral(gap)
    return phi0, logs, GrowthReport(ratios)


def growth_interpolate(points, h: WeightProfile, targets=None, tol=SANDWICH_TOL):
    """Outer phi0 with log|phi0| = -h(|t|), its node growth ratios, and psi = phi0 F
    interpolating ``targets`` (default |phi0(l_n)|) by ratio transfer."""
    seq = as_point_sequence(points)
    phi0, logs, report = growth_ratios(seq, h)
    if np.min(report.margins) < -tol:
        bad = int(np.argmin(report.margins))
        raise SandwichError(f"growth ratio r_{bad} = {report.ratios[bad]:.12g} escaped the sandwich")
    base_t = TargetSequence.from_logs(logs)
    tg = base_t if targets is None else as_targets(targets, seq)
    psi, cert = transfer_ratio(seq, base_t, tg, phi0)
    cert.details["growth"] = report.to_dict()
    return psi, report, cert


def _exponent_interpolant(seq, values):
    """Bounded outer psi with psi(l_n) = values, with Re psi > 0 when the finite
    data allow it and the k-th root path otherwise."""
    tg = TargetSequence.explicit(values)
    try:
        return outer_interpolate_bounded_below(seq, tg, positive_real_part=True)
    except InfeasibleError as exc:
        psi, cert = outer_interpolate_bounded_below(seq, tg)
        cert.details["half_plane_failure"] = str(exc)
        return psi, cert


def exact_decay_interpolate(points, h: WeightProfile, targets=None, tol=SANDWICH_TOL):
    """f = phi0^psi with f(l_n) = w_n for the decay w_n = exp(-(1/g_n) int_0^{g_n} h).

    d_n = log phi0(l_n) / log w_n is the node growth ratio, so it lies in
    [1/(2 pi), (2 + pi)/pi]; psi is a bounded outer function with
    psi(l_n) = 1/d_n, with positive real part whenever the data admit one
    (then f is bounded when arg phi0 is).
    """
    seq = as_point_sequence(points)
    _require_real_increasing(seq)
    if targets is None:
        tg = TargetSequence.from_generator(seq, {"kind": "profile_decay", "profile": h.to_dict()})
    else:
        tg = as_targets(targets, seq)
    phi0 = outer_from_log_modulus(h)
    logs = _node_logs(phi0, seq)
    lw = tg.log_values
    if np.any(lw.real >= 0.0):
        raise DomainError("targets must satisfy |w_n| < 1")
    d = logs / lw
    if np.max(np.abs(d.imag)) > 1e-12:
        raise ContractError("exact-decay targets must be positive")
    d = d.real
    lo, hi = LOWER_CONSTANT, UPPER_CONSTANT
    if np.any(d < lo - tol) or np.any(d > hi + tol):
        raise SandwichError(f"d_n range [{d.min():.12g}, {d.max():.12g}] escaped [{lo:.6g}, {hi:.6g}]")
    psi, pcert = _exponent_interpolant(seq, 1.0 / d)
    f = power_fn(phi0, psi)
    err, rel = residuals(f, seq, tg, use_log=True)
    status = CERTIFIED if f.certificate != "uncertified" else CONSISTENT
    cert = InterpolationCertificate(err, rel, None, status, f.re_psi_min, {
        "d": d.tolist(),
        "certificate": f.certificate,
        "bounded": f.certificate == "bounded outer",
        "zygmund_flag": h.zygmund_flag,
        "conjugate_bounded_flag": h.conjugate_bounded_flag,
        "psi": pcert.to_dict(),
    })
    return f, cert


def gap_power_interpolate(points, d):
    """f = (1 - z)^psi with psi(l_n) = d_n, so f(l_n) = (1 - l_n)^{d_n}."""
    seq = as_point_sequence(points)
    _require_real_increasing(seq)
    d = np.broadcast_to(np.asarray(d, dtype=float), (len(seq),)).copy()
    if np.any(d <= 0.0):
        raise DomainError("exponents d_n must be positive")
    tg = TargetSequence.from_generator(seq, {"kind": "gap_power", "d": d.tolist()})
    psi, pcert = _exponent_interpolant(seq, d)
    phi = ClosedForm.one_minus_z()
    f = power_fn(phi, psi)
    # node values use the exact gaps: log(1 - l_n) from the generator
    err, rel = residuals(f, seq, tg, use_log=True)
    status = CERTIFIED if f.certificate != "uncertified" else CONSISTENT
    return f, InterpolationCertificate(err, rel, None, status, f.re_psi_min,
                                       {"certificate": f.certificate, "psi": pcert.to_dict()})
