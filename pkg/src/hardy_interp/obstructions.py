"""Necessary conditions and negative diagnostics.

* classify_decay: the tail of s_n = (1 - |l_n|) log|w_n| decides whether an
  interpolating N+ function can be outer, must carry an inner factor, or must
  carry a Blaschke factor. Limits are read off generators symbolically; raw
  finite data are reported as inconclusive.
* radial checks of (1 - r) log|f(r e^{i theta})| for outer and zero-free models;
* the liminf of an inner factor along the nodes;
* the rearrangement envelope h built from an interpolant psi.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .boundary_calculus import (
    UPPER_CONSTANT,
    BoundaryFunction,
    WeightProfile,
    max_grid,
    rearrange_weighted,
)
from .disk_geometry import as_point_sequence
from .errors import ContractError, DomainError
from .hardy_functions import (
    HardyFunction,
    InnerFunction,
    OuterFunction,
    PowerFn,
    Product,
    Power,
    Affine,
)
from .interpolation import TargetSequence, as_targets
from .quadrature import TWO_PI, graded_circle_rule

TOL_DECAY = 1e-2
MARGIN_TOL = 1e-8
J_CLOSED = 40

OUTER_POSSIBLE = "outer-possible"
INNER_FORCED = "inner-forced"
BLASCHKE_FORCED = "blaschke-forced"
INCONCLUSIVE = "inconclusive"

# tail behaviour of s_n for each generator: (classification, limit or None)
_GENERATOR_TAILS = {
    "exp_neg_c_over_gap": INNER_FORCED,
    "exp_neg_c_over_gap_sq": BLASCHKE_FORCED,
    "gap_power": OUTER_POSSIBLE,
    "profile_decay": OUTER_POSSIBLE,
    "bounded": OUTER_POSSIBLE,
}


@dataclass
class DecayReport:
    s_values: np.ndarray
    tail_estimate: float
    classification: str
    limit: Optional[float] = None
    reason: str = ""

    def to_dict(self):
        return {"s_values": [float(s) for s in self.s_values], "tail_estimate": self.tail_estimate,
                "classification": self.classification, "limit": self.limit, "reason": self.reason}


def classify_decay(points, targets) -> DecayReport:
    seq = as_point_sequence(points)
    tg = as_targets(targets, seq)
    if len(tg) != len(seq):
        raise ContractError("points and targets differ in length")
    if tg.has_zero:
        raise DomainError("zero target: the N+ question is about zero-free data")
    s = seq.gaps * tg.log_abs
    q = max(1, len(s) // 4)
    tail = float(np.max(np.abs(s[-q:])))
    gen = tg.generator
    if gen is None:
        return DecayReport(s, tail, INCONCLUSIVE, None,
                           "finite data without a generator cannot decide a limit")
    kind = gen["kind"]
    if kind not in _GENERATOR_TAILS:
        return DecayReport(s, tail, INCONCLUSIVE, None, f"generator {kind!r} has no catalog tail")
    cls = _GENERATOR_TAILS[kind]
    # a constant factor c adds (1 - |l|) log|c| -> 0 and never changes the limit
    if cls == INNER_FORCED:
        limit = -float(gen["c"])
        reason = "s_n -> -c != 0"
    elif cls == BLASCHKE_FORCED:
        limit = -np.inf
        reason = "|s_n| = c/(1 - |l_n|) -> infinity"
    else:
        limit = 0.0
        reason = "s_n -> 0"
    return DecayReport(s, tail, cls, limit, reason)


# ---------------------------------------------------------------------------
# radial checks


def _has_grid_outer(f):
    if isinstance(f, OuterFunction):
        return not f.W.is_singular
    for attr in ("f", "phi", "psi"):
        if hasattr(f, attr) and isinstance(getattr(f, attr), HardyFunction) and _has_grid_outer(getattr(f, attr)):
            return True
    if isinstance(f, Product):
        return any(_has_grid_outer(g) for g in f.factors)
    return False


def radial_depth(f: HardyFunction, kappa=4.0):
    """Largest j with r = 1 - 2^-j reachable for f (adaptive grid cap for grid data)."""
    if _has_grid_outer(f):
        return max(1, int(np.floor(np.log2(max_grid() / (kappa * TWO_PI)))))
    return J_CLOSED


def _log_abs_on_ray(f, r, theta):
    z = r * np.exp(1j * theta)
    if f.zero_free:
        try:
            return np.real(f.log(z))
        except ContractError:
            pass
    with np.errstate(divide="ignore"):
        return np.log(np.abs(f.eval(z)))


@dataclass
class RadialSeries:
    j: np.ndarray
    r: np.ndarray
    values: np.ndarray
    passed: bool
    bound: Optional[float] = None
    theta: float = 0.0

    def rows(self):
        return [(int(a), float(b), float(c)) for a, b, c in zip(self.j, self.r, self.values)]

    def to_dict(self):
        return {"j": self.j.tolist(), "r": self.r.tolist(), "values": self.values.tolist(),
                "passed": self.passed, "bound": self.bound, "theta": self.theta}


def _schedule(f, J):
    J = radial_depth(f) if J is None else min(int(J), radial_depth(f))
    j = np.arange(1, J + 1)
    gap = 2.0 ** (-j.astype(float))
    return j, 1.0 - gap, gap


def _shrinking(tail, noise):
    diffs = np.diff(np.abs(tail))
    run = 0
    best = 0
    for d in diffs:
        run = run + 1 if d <= noise else 0
        best = max(best, run)
    return best >= 3


def radial_outer_decay_check(f: HardyFunction, theta=0.0, J=None, tol=TOL_DECAY) -> RadialSeries:
    """(1 - r) log|f(r e^{i theta})| on r = 1 - 2^-j; passes when the last five
    values are within ``tol`` of 0 and shrink for three consecutive steps."""
    j, r, gap = _schedule(f, J)
    vals = np.array([gap[i] * float(_log_abs_on_ray(f, r[i], theta)) for i in range(j.size)])
    tail = vals[-5:]
    noise = 1e-12 * max(1.0, float(np.max(np.abs(tail))))
    passed = bool(np.max(np.abs(tail)) <= tol and _shrinking(tail, noise))
    return RadialSeries(j, r, vals, passed, None, float(theta))


def zero_free_envelope_check(f: HardyFunction, theta=0.0, J=None, tol=TOL_DECAY) -> RadialSeries:
    """(1 - r)|log|f(r e^{i theta})|| <= 2 mu_total + eps_j with eps_j -> 0.

    eps_j is the excess over 2 mu_total; the check passes when the excess over
    the last five radii is at most ``tol`` and never grows.
    """
    spec = f.inner
    if spec.blaschke_zeros:
        raise ContractError("zero_free_envelope_check needs a zero-free model")
    mu = spec.singular_mass
    j, r, gap = _schedule(f, J)
    vals = np.array([gap[i] * abs(float(_log_abs_on_ray(f, r[i], theta))) for i in range(j.size)])
    excess = np.maximum(0.0, vals - 2.0 * mu)
    tail = excess[-5:]
    noise = 1e-12 * max(1.0, 2.0 * mu)
    passed = bool(np.max(tail) <= tol and np.all(np.diff(tail) <= noise))
    return RadialSeries(j, r, vals, passed, 2.0 * mu, float(theta))


@dataclass
class LiminfReport:
    moduli_log: np.ndarray
    window_minima: np.ndarray
    estimate: float
    decreasing: bool

    def to_dict(self):
        return {"log_moduli": self.moduli_log.tolist(), "window_minima": self.window_minima.tolist(),
                "estimate": self.estimate, "decreasing": self.decreasing}


def inner_liminf_check(points, f: HardyFunction, windows=4) -> LiminfReport:
    """|I(l_n)| for the declared inner factor I of f, with minima over tail windows."""
    spec = f.inner
    if spec.is_trivial:
        raise ContractError("no inner part declared")
    seq = as_point_sequence(points)
    inner = InnerFunction(spec)
    z = seq.points
    logs = np.zeros(z.size)
    for a in spec.blaschke_zeros:
        with np.errstate(divide="ignore"):
            logs += np.log(np.abs(z - a) / np.abs(1.0 - np.conj(a) * z))
    logs += np.real(inner._atoms_log(z))
    chunks = np.array_split(logs, min(windows, z.size))
    minima = np.array([float(np.min(np.exp(c))) for c in chunks])
    return LiminfReport(logs, minima, float(minima[-1]), bool(np.all(np.diff(minima) <= 0.0)))


# ---------------------------------------------------------------------------
# rearrangement envelope


@dataclass
class EnvelopeResult:
    edges: np.ndarray  # h = levels[k] on [edges[k], edges[k+1]) inside [0, 1]
    levels: np.ndarray
    margins: np.ndarray
    k_mean: float
    log_M: float

    @property
    def h_samples(self):
        return self.levels

    def integral(self, x):
        """int_0^x h for the step envelope."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        widths = np.diff(self.edges)
        cum = np.concatenate([[0.0], np.cumsum(widths * self.levels)])
        idx = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.levels.size - 1)
        part = cum[idx] + self.levels[idx] * np.clip(x - self.edges[idx], 0.0, None)
        return np.where(x >= self.edges[-1], cum[-1], part)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = np.clip(np.searchsorted(self.edges, t, side="right") - 1, 0, self.levels.size - 1)
        return np.where(t < self.edges[-1], self.levels[idx], 0.0)

    @property
    def min_margin(self):
        return float(np.min(self.margins))

    def to_dict(self, max_steps=512):
        # compress the step function for export: keep distinct-level boundaries
        keep = np.concatenate([[True], np.diff(self.levels) != 0.0])
        e = np.concatenate([self.edges[:-1][keep], [self.edges[-1]]])
        lv = self.levels[keep]
        if lv.size > max_steps:
            pick = np.unique(np.geomspace(1, lv.size, max_steps).astype(int) - 1)
            e = np.concatenate([e[pick], [e[-1]]])
            lv = lv[pick]
        return {"edges": e.tolist(), "levels": lv.tolist(), "margins": self.margins.tolist(),
                "min_margin": self.min_margin, "k_mean": self.k_mean, "log_M": self.log_M}


def _log_modulus_nodes(psi, anchors):
    """(values, weights) of log|psi| on a rule fit for its singularities."""
    if isinstance(psi, BoundaryFunction):
        if psi.is_singular:
            rule = graded_circle_rule(psi.breakpoints, base_anchors=anchors)
            return np.real(psi.rule_values(rule)), rule.weight
        return np.real(psi.samples), np.full(psi.M, 1.0 / psi.M)
    rule = graded_circle_rule(psi.breakpoints, base_anchors=anchors)
    return np.asarray(psi.boundary_log_abs_rule(rule), dtype=float), rule.weight


def mtone_envelope(points, targets, psi_boundary, anchors=64) -> EnvelopeResult:
    """Envelope h = ((2 + pi)/pi) k* from an interpolant psi of the targets.

    k = max(0, -log|psi/M|) with M = sup|w_n|; k* is its symmetric decreasing
    rearrangement on [0, pi], restricted to [0, 1]. The margins
    int_0^{1 - l_n} h + (1 - l_n) log|w_n / M| are nonnegative whenever psi
    interpolates the targets.
    """
    seq = as_point_sequence(points)
    tg = as_targets(targets, seq)
    if tg.has_zero:
        raise DomainError("targets must be nonzero")
    log_M = float(np.max(tg.log_abs))
    v, w = _log_modulus_nodes(psi_boundary, anchors)
    k = np.maximum(0.0, -(v - log_M))
    if not np.all(np.isfinite(k)):
        raise DomainError("k = max(0, -log|psi/M|) is not integrable on the rule")
    k_mean = float(np.sum(w * k))
    edges, levels = rearrange_weighted(k, w)
    inside = edges[:-1] < 1.0
    e = np.concatenate([edges[:-1][inside], [1.0]])
    e[-1] = max(e[-1], e[-2]) if e.size > 1 else 1.0
    lv = UPPER_CONSTANT * levels[inside]
    env = EnvelopeResult(np.minimum(e, 1.0), lv, np.empty(0), k_mean, log_M)
    gap = seq.gaps
    margins = env.integral(gap) + gap * (tg.log_abs - log_M)
    env.margins = margins
    return env
