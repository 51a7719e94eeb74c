"""Model spaces K_B for interpolating Blaschke products.

Elements are expanded as f = sum a_n kappa_n in normalized Cauchy kernels at
the nodes. Co-analytic Toeplitz operators act diagonally on this basis, so
range questions reduce to weighted l^2 sums of the coefficients. All weighted
sums run in log-domain: coefficients such as exp(-3/(1 - l)) underflow long
before the sums lose meaning.

Convergence is decided symbolically for generator-backed coefficients; raw
finite data get a partial-sum trend heuristic that reports "inconclusive"
when the trend is ambiguous. Test (ii) is a falsifier over the supplied test
functions and test (iii) is relative to the supplied profiles.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .boundary_calculus import WeightProfile
from .disk_geometry import as_point_sequence
from .errors import ContractError, DomainError
from .hardy_functions import ClosedForm, HardyFunction

ROUND_TRIP_TOL = 1e-8
R2_MIN = 0.9
FIT_RANGE = (1e2, 1e4)
FIT_POINTS = 41
TREND_STEPS = 3
TAIL_REL = 1e-8
LOG_ZERO = -1e300  # stands in for log 0 so that 0 * LOG_ZERO = log 1 at N = 0

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

MEMBER = "member"
NON_MEMBER = "non-member"

COEFF_GENERATORS = ("exp_neg_c_over_gap", "power_decay", "finite_support")


def cauchy_kernel(lam, z):
    """k_lam(z) = 1 / (1 - conj(lam) z)."""
    lam = np.asarray(lam, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(lam) >= 1.0) or np.any(np.abs(z) >= 1.0):
        raise DomainError("cauchy_kernel needs |lam| < 1 and |z| < 1")
    return 1.0 / (1.0 - np.conj(lam) * z)


def normalized_kernel(lam, z):
    """kappa_lam = sqrt(1 - |lam|^2) k_lam, a unit vector of H^2."""
    lam = np.asarray(lam, dtype=complex)
    return np.sqrt((1.0 - np.abs(lam)) * (1.0 + np.abs(lam))) * cauchy_kernel(lam, z)


def kernel_norm_sq(lam, n_terms=None):
    """||kappa_lam||^2 summed from its Taylor coefficients sqrt(1-|lam|^2) conj(lam)^n."""
    a = abs(complex(lam))
    if n_terms is None:
        n_terms = int(np.ceil(40.0 / max(1e-300, -np.log(max(a, 1e-300))))) + 1 if a > 0 else 1
    n = np.arange(n_terms)
    return float(np.sum((1.0 - a * a) * a ** (2 * n)))


def _log_gap_weight(points):
    """log sqrt(1 - |l|^2), stable near the circle."""
    a = np.abs(points)
    return 0.5 * (np.log1p(-a) + np.log1p(a))


# ---------------------------------------------------------------------------
# coefficients


def _coeff_logs(points, gen):
    kind = gen["kind"]
    n = len(points)
    if kind == "exp_neg_c_over_gap":
        c = float(gen["c"])
        if c <= 0:
            raise DomainError("exp_neg_c_over_gap needs c > 0")
        out = -c / points.gaps
    elif kind == "power_decay":
        p = float(gen["p"])
        out = -p * np.log(np.arange(1, n + 1, dtype=float))
    elif kind == "finite_support":
        vals = np.asarray(gen.get("values", np.ones(int(gen.get("count", n)))), dtype=complex)
        if vals.ndim == 2:
            vals = vals[:, 0] + 1j * vals[:, 1]
        if vals.size > n:
            raise ContractError("finite_support has more values than points")
        full = np.zeros(n, dtype=complex)
        full[: vals.size] = vals
        with np.errstate(divide="ignore"):
            out = np.log(full)
    else:
        raise DomainError(f"unknown coefficient generator {kind!r}")
    out = np.asarray(out, dtype=complex)
    if "scale" in gen:
        s = gen["scale"]
        s = complex(*s) if isinstance(s, (list, tuple)) else complex(s)
        if s == 0:
            raise DomainError("scale must be nonzero")
        out = out + np.log(s)
    return out


@dataclass(frozen=True)
class CoefficientSequence:
    """Coefficients a_n of f = sum a_n kappa_n, held as logarithms (log 0 = -inf)."""

    log_a: np.ndarray
    generator: Optional[dict] = field(default=None, compare=False)

    @classmethod
    def explicit(cls, values):
        v = np.atleast_1d(np.asarray(values, dtype=complex))
        with np.errstate(divide="ignore"):
            return cls(np.log(v))

    @classmethod
    def from_logs(cls, log_a, generator=None):
        return cls(np.atleast_1d(np.asarray(log_a, dtype=complex)), generator)

    @classmethod
    def from_generator(cls, points, gen):
        seq = as_point_sequence(points)
        return cls(_coeff_logs(seq, gen), dict(gen))

    def __len__(self):
        return self.log_a.size

    @property
    def values(self):
        return np.exp(self.log_a)

    @property
    def log_abs(self):
        return self.log_a.real

    @property
    def support(self):
        return np.isfinite(self.log_a.real)

    def log_norm_sq(self):
        t = 2.0 * self.log_abs
        return float(np.logaddexp.reduce(t)) if t.size else -np.inf

    def scaled(self, c):
        c = complex(c)
        if c == 0:
            raise DomainError("scale must be nonzero")
        gen = None
        if self.generator is not None:
            gen = dict(self.generator)
            old = gen.get("scale", 1.0)
            old = complex(*old) if isinstance(old, (list, tuple)) else complex(old)
            s = old * c
            gen["scale"] = [s.real, s.imag]
        return CoefficientSequence(self.log_a + np.log(c), gen)

    def subset(self, index):
        return CoefficientSequence(self.log_a[np.asarray(index)], None)

    def to_dict(self):
        if self.generator is not None:
            return {"generator": self.generator}
        return {"values": [[v.real, v.imag] for v in self.values]}


def as_coefficients(coeffs, points=None):
    if isinstance(coeffs, CoefficientSequence):
        return coeffs
    if isinstance(coeffs, dict):
        return CoefficientSequence.from_generator(points, coeffs)
    return CoefficientSequence.explicit(coeffs)


def _aligned(points, coeffs):
    seq = as_point_sequence(points)
    cs = as_coefficients(coeffs, seq)
    if len(cs) != len(seq):
        raise ContractError(f"{len(seq)} points but {len(cs)} coefficients")
    return seq, cs


def _log_eval(phi: HardyFunction, z):
    if phi.zero_free:
        try:
            return np.asarray(phi.log(z), dtype=complex)
        except ContractError:
            pass
    v = np.asarray(phi.eval(z), dtype=complex)
    with np.errstate(divide="ignore"):
        return np.log(v)


# ---------------------------------------------------------------------------
# Toeplitz action and the range description


def toeplitz_apply(phi: HardyFunction, coeffs, points) -> CoefficientSequence:
    """Coefficients of T_{conj phi} f: a_n conj(phi(l_n)) in the kappa basis."""
    seq, cs = _aligned(points, coeffs)
    lp = _log_eval(phi, seq.points)
    if np.any(np.isnan(lp)):
        raise ContractError("phi could not be evaluated at every node")
    out = cs.log_a + np.conj(lp)
    return CoefficientSequence.from_logs(np.where(cs.support & np.isfinite(lp.real), out, -np.inf))


@dataclass
class RangeReport:
    g_log: np.ndarray
    residual: float
    log_norm_sq: float
    passed: bool

    def to_dict(self):
        g = np.exp(self.g_log)
        return {"g": [[v.real, v.imag] for v in g], "residual": self.residual,
                "log_norm_sq": self.log_norm_sq, "passed": self.passed}


def range_description_check(phi: HardyFunction, points, coeffs) -> RangeReport:
    """Solve g_n = b_n / conj(phi(l_n)) and re-apply T_{conj phi}.

    b lies in T_{conj phi} K_B exactly when sum |g_n|^2 is finite; at finite
    scale this is the round trip with residual at most 1e-8.
    """
    seq, b = _aligned(points, coeffs)
    phi_vals = np.asarray(phi.eval(seq.points), dtype=complex)
    if np.any(phi_vals[b.support] == 0):
        raise ContractError("phi vanishes at a node; an outer function is zero-free")
    lp = _log_eval(phi, seq.points)
    g_log = np.where(b.support, b.log_a - np.conj(lp), -np.inf)
    back = toeplitz_apply(phi, CoefficientSequence.from_logs(g_log), seq)
    bv, rv = b.values, back.values
    scale = max(1e-300, float(np.max(np.abs(bv)))) if bv.size else 1.0
    res = float(np.max(np.abs(rv - bv)) / scale) if bv.size else 0.0
    lg = 2.0 * g_log.real
    return RangeReport(g_log, res, float(np.logaddexp.reduce(lg)) if lg.size else -np.inf,
                       res <= ROUND_TRIP_TOL)


# ---------------------------------------------------------------------------
# weighted sums


def _node_order(seq):
    """Nodes sorted toward the circle (gap decreasing, ties by angle)."""
    return np.lexsort((np.angle(seq.points), -seq.gaps))


@dataclass
class SeriesReport:
    """Partial sums of sum exp(t_n) in log-domain, with a convergence call."""

    log_terms: np.ndarray
    log_partial: np.ndarray
    status: str
    reason: str

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        return {"log_terms": _finite_list(self.log_terms), "log_partial_sums": _finite_list(self.log_partial),
                "status": self.status, "reason": self.reason}


def _finite_list(x):
    return [float(v) if np.isfinite(v) else (None if np.isnan(v) else float(np.sign(v)) * 1e308)
            for v in np.asarray(x, dtype=float)]


def _series(log_terms, symbolic=None):
    t = np.asarray(log_terms, dtype=float)
    partial = np.logaddexp.accumulate(t) if t.size else t
    if symbolic is not None:
        return SeriesReport(t, partial, symbolic[0], symbolic[1])
    status, reason = _trend(t, partial)
    return SeriesReport(t, partial, status, reason)


def _trend(t, partial):
    """Heuristic call on finite data: a sustained non-decreasing tail fails,
    a decreasing tail that no longer moves the sum passes, anything else is
    inconclusive."""
    live = t[np.isfinite(t)]
    if live.size == 0:
        return PASS, "all terms vanish"
    if np.all(~np.isfinite(t[-TREND_STEPS:])):
        return PASS, "finitely many nonzero terms"
    if live.size <= TREND_STEPS:
        return INCONCLUSIVE, "too few terms for a trend"
    tail = live[-(TREND_STEPS + 1):]
    d = np.diff(tail)
    if np.all(d >= 0.0):
        return FAIL, f"terms non-decreasing over the last {TREND_STEPS} steps"
    if np.all(d < 0.0) and tail[-1] - partial[-1] <= np.log(TAIL_REL):
        return PASS, "terms decreasing and the tail no longer moves the sum"
    return INCONCLUSIVE, "ambiguous partial-sum trend"


def _symbolic_weighted(gen, weight_kind, profile=None, phi=None, c=None):
    """Symbolic convergence call for a catalog generator, or None.

    weight_kind: "outer" (1/|phi(l)| for a bounded outer phi), "profile"
    (exp((1/g) int_0^g h)) or "exp_rate" (exp(c/g)).
    """
    if gen is None:
        return None
    kind = gen["kind"]
    if kind == "finite_support":
        return PASS, "finitely many nonzero terms"
    if kind == "exp_neg_c_over_gap":
        cc = float(gen["c"])
        if weight_kind == "exp_rate":
            if 2.0 * cc > c:
                return PASS, f"rate comparison 2c' = {2 * cc:g} > c = {c:g}"
            return FAIL, f"rate comparison 2c' = {2 * cc:g} <= c = {c:g}: terms do not decay"
        if weight_kind == "profile":
            return PASS, "(1/g) int_0^g h = o(1/g) since h is integrable, while 2c/g grows like 1/g"
        if weight_kind == "outer":
            if isinstance(phi, ClosedForm) and phi.kind == "exp_neg_c_power" and phi.params["alpha"] == 1.0:
                # not outer: its decay rate competes directly with the coefficients
                return None
            return PASS, "(1 - r) log|phi| -> 0 for outer phi while 2c/g -> infinity"
    if kind == "power_decay" and weight_kind == "exp_rate":
        return FAIL, "polynomial coefficients cannot absorb exp(c/g)"
    return None


def _weighted_logs(seq, cs, extra):
    order = _node_order(seq)
    t = 2.0 * cs.log_abs[order] + extra[order]
    return np.where(cs.support[order], t, -np.inf)


def _fourier_powers(n_max=None):
    lo, hi = FIT_RANGE
    if n_max is not None:
        hi = min(hi, n_max)
    return np.unique(np.round(np.geomspace(lo, hi, FIT_POINTS)))


def fourier_coefficient_logs(points, coeffs, powers):
    """log f_hat(N) for f = sum a_n kappa_n:
    f_hat(N) = sum_n a_n sqrt(1 - |l_n|^2) conj(l_n)^N."""
    seq, cs = _aligned(points, coeffs)
    lc = np.where(cs.support, cs.log_a + _log_gap_weight(seq.points), LOG_ZERO)
    z = np.conj(seq.points)
    with np.errstate(divide="ignore"):
        ln = np.where(z == 0, LOG_ZERO, np.log(np.where(z == 0, 1.0, z)))
    return kernels.log_power_sums(np.asarray(lc, dtype=complex), np.asarray(ln, dtype=complex),
                                  np.asarray(powers, dtype=float))


@dataclass
class DecayFit:
    N: np.ndarray
    log_abs: np.ndarray
    slope_sqrt: float
    r2_sqrt: float
    slope_linear: float
    r2_linear: float
    model: str
    fitted_c: Optional[float]
    status: str
    reason: str

    @property
    def passed(self):
        return self.status == PASS

    def fit_values(self):
        """Fitted log|f_hat| of the selected model on N."""
        x = np.sqrt(self.N) if self.model == "sqrt" else self.N
        slope = self.slope_sqrt if self.model == "sqrt" else self.slope_linear
        A = np.vstack([x, np.ones_like(x)]).T
        inter = np.linalg.lstsq(A, self.log_abs, rcond=None)[0][1]
        return slope * x + inter

    def rows(self):
        fit = self.fit_values()
        return [(int(n), float(np.exp(v)), float(np.exp(f))) for n, v, f in zip(self.N, self.log_abs, fit)]

    def to_dict(self):
        return {"N": self.N.tolist(), "log_abs": _finite_list(self.log_abs), "slope_sqrt": self.slope_sqrt,
                "r2_sqrt": self.r2_sqrt, "slope_linear": self.slope_linear, "r2_linear": self.r2_linear,
                "model": self.model, "fitted_c": self.fitted_c, "status": self.status, "reason": self.reason}


def _linfit(x, y):
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    pred = A @ coef
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum((y - pred) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), r2


def fourier_decay_fit(points, coeffs, powers=None) -> DecayFit:
    """Least squares of log|f_hat(N)| against sqrt(N) (and against N for
    model selection) over a geometric grid of [1e2, 1e4]."""
    seq, cs = _aligned(points, coeffs)
    N = _fourier_powers() if powers is None else np.asarray(powers, dtype=float)
    la = fourier_coefficient_logs(seq, cs, N).real
    if not np.any(np.isfinite(la)):
        return DecayFit(N, la, 0.0, 1.0, 0.0, 1.0, "zero", None, PASS, "f = 0")
    keep = np.isfinite(la)
    ss, r2s = _linfit(np.sqrt(N[keep]), la[keep])
    sl, r2l = _linfit(N[keep], la[keep])
    model = "linear" if r2l > r2s else "sqrt"
    fitted_c = -ss if r2s >= R2_MIN else None
    gen = cs.generator
    if gen is not None and gen["kind"] == "power_decay":
        status, reason = FAIL, "polynomial coefficients give f_hat(N) of polynomial size near N ~ 1/(1 - l)"
    elif gen is not None and gen["kind"] in ("exp_neg_c_over_gap", "finite_support"):
        status, reason = PASS, f"{gen['kind']} decays at least like exp(-c sqrt(N))"
    elif model == "linear" and sl < 0 and r2l >= R2_MIN:
        status, reason = PASS, "geometric decay in N beats exp(-c sqrt(N))"
    elif ss < 0 and r2s >= R2_MIN:
        status, reason = PASS, "log|f_hat| fits a negative multiple of sqrt(N)"
    else:
        status, reason = INCONCLUSIVE, "no decay model reaches R^2 >= 0.9"
    return DecayFit(N, la, ss, r2s, sl, r2l, model, fitted_c, status, reason)


@dataclass
class MembershipVerdict:
    per_test: dict
    fitted_c: Optional[float]
    verdict: str
    diagnostics: list

    def to_dict(self):
        out = {}
        for key, val in self.per_test.items():
            if isinstance(val, list):
                out[key] = [v.to_dict() for v in val]
            else:
                out[key] = val.to_dict()
        return {"per_test": out, "fitted_c": self.fitted_c, "verdict": self.verdict,
                "diagnostics": list(self.diagnostics)}


def outer_weight_test(points, coeffs, phi: HardyFunction) -> SeriesReport:
    """Test (ii) for one phi: partial sums of |a_n|^2 / |phi(l_n)|."""
    seq, cs = _aligned(points, coeffs)
    lp = _log_eval(phi, seq.points).real
    return _series(_weighted_logs(seq, cs, -lp), _symbolic_weighted(cs.generator, "outer", phi=phi))


def profile_weight_test(points, coeffs, h: WeightProfile) -> SeriesReport:
    """Test (iii) for one profile: partial sums of |a_n|^2 exp((1/g_n) int_0^{g_n} h)."""
    seq, cs = _aligned(points, coeffs)
    g = seq.gaps
    w = h.integral(g) / g
    return _series(_weighted_logs(seq, cs, w), _symbolic_weighted(cs.generator, "profile", profile=h))


def membership_tests(points, coeffs, profiles=(), test_outer_functions=(), fourier=True) -> MembershipVerdict:
    """Run tests (ii), (iii), (iv) and combine them.

    member needs every executed test to pass; all failing gives non-member;
    a mix of pass and fail, or any inconclusive test, gives inconclusive.
    """
    seq, cs = _aligned(points, coeffs)
    per = {}
    if test_outer_functions:
        per["ii"] = [outer_weight_test(seq, cs, phi) for phi in test_outer_functions]
    if profiles:
        per["iii"] = [profile_weight_test(seq, cs, h) for h in profiles]
    fit = None
    if fourier:
        fit = fourier_decay_fit(seq, cs)
        per["iv"] = fit
    statuses = []
    for val in per.values():
        statuses.extend(v.status for v in (val if isinstance(val, list) else [val]))
    diag = []
    if not statuses:
        verdict = INCONCLUSIVE
        diag.append("no test executed")
    elif all(s == PASS for s in statuses):
        verdict = MEMBER
    elif all(s == FAIL for s in statuses):
        verdict = NON_MEMBER
    else:
        verdict = INCONCLUSIVE
        diag.append("tests disagree or are undecided: " + ", ".join(statuses))
    return MembershipVerdict(per, fit.fitted_c if fit is not None else None, verdict, diag)


def sufficient_class_check(points, coeffs, c) -> SeriesReport:
    """sum |a_n|^2 exp(c / (1 - |l_n|)) < infinity implies membership."""
    if c <= 0:
        raise DomainError("c must be positive")
    seq, cs = _aligned(points, coeffs)
    return _series(_weighted_logs(seq, cs, c / seq.gaps), _symbolic_weighted(cs.generator, "exp_rate", c=c))


@dataclass
class DensityReport:
    partial_sums: np.ndarray
    nonzero_count: int
    linear_growth: bool

    def to_dict(self):
        return {"partial_sums": _finite_list(self.partial_sums), "nonzero_count": self.nonzero_count,
                "linear_growth": self.linear_growth}


def density_demo(points, phi: HardyFunction, b_targets) -> DensityReport:
    """Partial sums of |b_n / phi(l_n)|^2 when phi interpolates the b_n.

    Each nonzero b_n contributes a term equal to 1, so the sums count the
    nonzero targets and grow without bound for infinitely many of them.
    """
    seq, b = _aligned(points, b_targets)
    pv = np.asarray(phi.eval(seq.points), dtype=complex)
    bv = b.values
    terms = np.zeros(len(seq))
    nz = b.support
    if np.any(pv[nz] == 0):
        terms[nz & (pv == 0)] = np.inf
    ok = nz & (pv != 0)
    terms[ok] = np.abs(bv[ok] / pv[ok]) ** 2
    partial = np.cumsum(terms)
    count = int(np.sum(nz))
    linear = bool(count > 0 and np.allclose(partial[nz], np.arange(1, count + 1), rtol=1e-6))
    return DensityReport(partial, count, linear)
