"""Quadrature and transforms on the unit circle.

Boundary data live on the grid theta_j = 2 pi j / M - pi. Smooth data are
integrated with the rectangle rule, which is spectrally accurate for periodic
integrands. Data with declared singular points (weight profiles h(|t|),
log-singular moduli) carry a callable ``source`` and are integrated with the
graded Gauss-Legendre rules of :mod:`hardy_interp.quadrature` instead.
"""
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import zeta

from . import kernels
from .errors import AccuracyError, ContractError, DomainError, GridMismatchError, SandwichError
from .quadrature import (
    TWO_PI,
    graded_circle_rule,
    graded_interval_rule,
    innermost_length,
    uniform_circle_rule,
    uniform_grid,
)

DEFAULT_GRID = 4096
MIN_GRID = 64
KAPPA = 4.0
LOWER_CONSTANT = 1.0 / (2.0 * np.pi)
UPPER_CONSTANT = (2.0 + np.pi) / np.pi


def max_grid():
    """Largest grid the adaptive rule may use (env ``HARDY_INTERP_MAX_GRID``)."""
    return int(os.environ.get("HARDY_INTERP_MAX_GRID", 1 << 22))


def _is_pow2(m):
    return m >= 1 and (m & (m - 1)) == 0


def required_grid(z, kappa=KAPPA, base=DEFAULT_GRID):
    """Smallest power of two M >= base with M >= kappa 2 pi / (1 - |z|)."""
    gap = 1.0 - np.max(np.abs(np.atleast_1d(z))) if np.size(z) else 1.0
    need = kappa * TWO_PI / gap
    m = max(int(base), MIN_GRID)
    while m < need:
        m *= 2
    return m


# ---------------------------------------------------------------------------
# weight profiles


@dataclass(frozen=True)
class WeightProfile:
    """Positive, non-increasing, integrable h on (0, 1], extended by 0 to [1, pi].

    Catalog kinds have closed-form integrals:

    * ``power``:     h(t) = (1 - alpha) t^-alpha,  int_0^x h = x^(1 - alpha)
    * ``log_power``: h(t) = 2 / (t log(C/t)^p),   int_0^x h = 2 / ((p - 1) log(C/x)^(p - 1))
    * ``sampled``:   right-continuous step function on ``edges`` with ``values``
    """

    kind: str
    alpha: Optional[float] = None
    C: Optional[float] = None
    p: Optional[float] = None
    edges: Optional[tuple] = None
    values: Optional[tuple] = None

    def __post_init__(self):
        if self.kind == "power":
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise DomainError("power profile needs 0 < alpha < 1")
        elif self.kind == "log_power":
            if self.p is None or self.C is None or self.p <= 1.0:
                raise DomainError("log_power profile needs p > 1")
            # t log(C/t)^p is increasing on (0, 1] iff log C > p
            if not np.log(self.C) > self.p:
                raise DomainError("log_power profile is decreasing on (0, 1] only when log C > p")
        elif self.kind == "sampled":
            e = np.asarray(self.edges, dtype=float)
            v = np.asarray(self.values, dtype=float)
            if e.ndim != 1 or v.size != e.size - 1 or e.size < 2:
                raise ContractError("sampled profile needs len(edges) == len(values) + 1")
            if e[0] != 0.0 or np.any(np.diff(e) <= 0.0) or e[-1] > 1.0:
                raise ContractError("edges must increase from 0 to at most 1")
            if np.any(v < 0.0) or np.any(np.diff(v) > 0.0):
                raise DomainError("sampled profile must be nonnegative and non-increasing")
            object.__setattr__(self, "edges", tuple(float(x) for x in e))
            object.__setattr__(self, "values", tuple(float(x) for x in v))
        else:
            raise DomainError(f"unknown profile kind {self.kind!r}")

    @classmethod
    def power(cls, alpha):
        return cls("power", alpha=float(alpha))

    @classmethod
    def log_power(cls, C=100.0, p=3.0):
        return cls("log_power", C=float(C), p=float(p))

    @classmethod
    def sampled(cls, edges, values):
        return cls("sampled", edges=tuple(edges), values=tuple(values))

    @property
    def zygmund_flag(self):
        """Catalog fact: h(|t|) log+ h(|t|) is integrable."""
        if self.kind == "power":
            return True
        if self.kind == "log_power":
            return self.p > 2.0
        return True  # bounded step function

    @property
    def conjugate_bounded_flag(self):
        """Catalog fact: the circle conjugate of h(|t|) is bounded.

        False for both singular catalog kinds: near 0 the conjugate behaves
        like (1/(pi t)) int_0^t h, which is unbounded whenever h is.
        """
        return self.kind == "sampled"

    @property
    def breakpoints(self):
        """Points of (0, 1] where h is not smooth, plus the support edge 1."""
        if self.kind == "sampled":
            return tuple(self.edges[1:])
        return (1.0,)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        inside = (t > 0.0) & (t < 1.0)
        ti = t[inside]
        if self.kind == "power":
            out[inside] = (1.0 - self.alpha) * ti ** (-self.alpha)
        elif self.kind == "log_power":
            out[inside] = 2.0 / (ti * np.log(self.C / ti) ** self.p)
        else:
            e = np.asarray(self.edges)
            v = np.asarray(self.values)
            idx = np.searchsorted(e, ti, side="right") - 1
            ok = idx < v.size
            vals = np.zeros(ti.shape)
            vals[ok] = v[idx[ok]]
            out[inside] = vals
        out[t <= 0.0] = np.inf if self.kind != "sampled" else (self.values[0] if self.values else 0.0)
        return out

    def integral(self, x):
        """Exact int_0^x h(t) dt (x may exceed 1; h vanishes there)."""
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0.0):
            raise DomainError("profile_integral needs x > 0")
        xc = np.minimum(x, 1.0)
        if self.kind == "power":
            return xc ** (1.0 - self.alpha)
        if self.kind == "log_power":
            return 2.0 / ((self.p - 1.0) * np.log(self.C / xc) ** (self.p - 1.0))
        e = np.asarray(self.edges)
        v = np.asarray(self.values)
        cum = np.concatenate([[0.0], np.cumsum(v * np.diff(e))])
        idx = np.clip(np.searchsorted(e, xc, side="right") - 1, 0, v.size)
        last = idx >= v.size
        idx_c = np.minimum(idx, v.size - 1)
        part = cum[idx_c] + v[idx_c] * (xc - e[idx_c])
        return np.where(last, cum[-1], part)

    def to_dict(self):
        if self.kind == "power":
            return {"kind": "power", "alpha": self.alpha}
        if self.kind == "log_power":
            return {"kind": "log_power", "C": self.C, "p": self.p}
        return {"kind": "sampled", "edges": list(self.edges), "values": list(self.values)}

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        kind = d.pop("kind")
        if kind == "power":
            return cls.power(d["alpha"])
        if kind == "log_power":
            return cls.log_power(d.get("C", 100.0), d.get("p", 3.0))
        if kind == "sampled":
            return cls.sampled(d["edges"], d["values"])
        raise DomainError(f"unknown profile kind {kind!r}")


def profile_integral(h: WeightProfile, x):
    """int_0^x h(t) dt."""
    return h.integral(x)


# ---------------------------------------------------------------------------
# boundary functions


def _patch_nonfinite(theta, samples, func, m, log_singularities, power_singularities):
    bad = ~np.isfinite(samples)
    if not np.any(bad):
        return samples
    step = TWO_PI / m
    samples = samples.copy()
    for j in np.flatnonzero(bad):
        th = theta[j]
        patched = False
        for th0, coeff in (log_singularities or {}).items():
            if abs(np.angle(np.exp(1j * (th - th0)))) < 0.5 * step:
                # W = coeff log|2 sin((t - th0)/2)| + R; the rectangle rule is exact
                # for the log part when its sample is set to -coeff log M
                nb = np.array([th - step, th + step])
                near = func(nb) - coeff * np.log(np.abs(2.0 * np.sin(0.5 * (nb - th0))))
                samples[j] = -coeff * np.log(m) + float(np.mean(near))
                patched = True
        for th0, (coeff, alpha) in (power_singularities or {}).items():
            if abs(np.angle(np.exp(1j * (th - th0)))) < 0.5 * step:
                nb = np.array([th - step, th + step])
                near = func(nb) - coeff * np.abs(nb - th0) ** (-alpha)
                samples[j] = -coeff * 2.0 * zeta(alpha) * step ** (-alpha) + float(np.mean(near))
                patched = True
        if not patched:
            raise DomainError(f"non-finite boundary sample at theta={th:.6g} with no declared singularity")
    return samples


@dataclass(frozen=True)
class BoundaryFunction:
    """Real or complex function on the circle.

    ``samples`` are values at theta_j = 2 pi j / M - pi. ``source``, when set,
    evaluates the function at arbitrary angles in [-pi, pi) and is used to
    regrid; ``breakpoints`` lists angles where the function is singular or
    non-smooth, which routes integrals through graded quadrature.
    """

    samples: np.ndarray
    symmetric: bool = False
    source: Optional[Callable] = field(default=None, compare=False, repr=False)
    breakpoints: tuple = ()
    descriptor: Optional[dict] = field(default=None, compare=False)
    patches: Optional[dict] = field(default=None, compare=False, repr=False)
    tail_mass: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples)
        s = s.astype(complex if np.iscomplexobj(s) else float).copy()
        m = s.size
        if s.ndim != 1 or m < MIN_GRID or not _is_pow2(m):
            raise ContractError("grid size M must be a power of two and at least 64")
        if self.symmetric:
            mirror = s[(-np.arange(m)) % m]
            if np.max(np.abs(s - mirror)) > 1e-10 * max(1.0, np.max(np.abs(s))):
                raise ContractError("samples are not symmetric f(-theta) = f(theta)")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))

    @property
    def M(self):
        return self.samples.size

    @property
    def theta(self):
        return uniform_grid(self.M)

    @property
    def is_complex(self):
        return np.iscomplexobj(self.samples)

    @property
    def is_singular(self):
        return self.source is not None and bool(self.breakpoints)

    # constructors ----------------------------------------------------------

    @classmethod
    def from_values(cls, values, symmetric=False):
        return cls(np.asarray(values), symmetric=symmetric)

    @classmethod
    def constant(cls, c, M=DEFAULT_GRID):
        c = complex(c) if np.iscomplexobj(c) else float(c)
        return cls.from_callable(lambda t: np.full(np.shape(t), c), M=M, symmetric=True,
                                 descriptor={"kind": "constant", "value": c})

    @classmethod
    def from_callable(cls, func, M=DEFAULT_GRID, breakpoints=(), symmetric=False,
                      log_singularities=None, power_singularities=None, descriptor=None):
        """Sample ``func`` on the grid; non-finite samples at declared singular
        points are replaced by the value that makes the rectangle rule exact for
        the singular part (log: -c log M; power |t|^-a: -2 zeta(a) c step^-a)."""
        theta = uniform_grid(M)
        with np.errstate(divide="ignore", invalid="ignore"):
            samples = np.asarray(func(theta))
        patches = {"log": dict(log_singularities or {}), "power": dict(power_singularities or {})}
        samples = _patch_nonfinite(theta, samples, func, M, log_singularities, power_singularities)
        return cls(samples, symmetric=symmetric, source=func, breakpoints=tuple(breakpoints),
                   descriptor=descriptor, patches=patches)

    @classmethod
    def from_profile(cls, h: WeightProfile, sign=-1.0, M=DEFAULT_GRID):
        """W(theta) = sign * h(|theta|), the log-modulus of the outer function
        with boundary modulus exp(sign h)."""
        def func(t, h=h, sign=sign):
            return sign * h(np.abs(np.asarray(t, dtype=float)))

        bps = (0.0,) + tuple(b for b in h.breakpoints) + tuple(-b for b in h.breakpoints)
        power = None
        if h.kind == "power":
            power = {0.0: (sign * (1.0 - h.alpha), h.alpha)}
        theta = uniform_grid(M)
        with np.errstate(divide="ignore", invalid="ignore"):
            samples = func(theta)
        if h.kind == "log_power":
            step = TWO_PI / M
            bad = ~np.isfinite(samples)
            samples[bad] = sign * 2.0 * float(h.integral(0.5 * step)) / step
        samples = _patch_nonfinite(theta, samples, func, M, None, power)
        return cls(samples, symmetric=True, source=func, breakpoints=bps,
                   descriptor={"kind": "profile", "profile": h.to_dict(), "sign": sign},
                   patches={"log": {}, "power": power or {}},
                   tail_mass={0.0: lambda eps, h=h, sign=sign: sign * h.integral(eps)})

    @classmethod
    def log_abs_one_minus(cls, M=DEFAULT_GRID):
        """W(theta) = log|1 - e^{i theta}|, the log-modulus of the outer function 1 - z."""
        def func(t):
            return np.log(np.abs(2.0 * np.sin(0.5 * np.asarray(t, dtype=float))))

        return cls.from_callable(func, M=M, breakpoints=(0.0,), symmetric=True,
                                 log_singularities={0.0: 1.0},
                                 descriptor={"kind": "log_abs_one_minus"})

    # derived -----------------------------------------------------------------

    def rule_values(self, rule):
        """Values at the nodes of a graded rule.

        Next to an anchor with a declared ``tail_mass`` (exact one-sided
        integral eps -> int_0^eps f), the innermost panel gets the panel mean
        instead of point samples; Gauss-Legendre cannot resolve spikes such as
        1/(t log(C/t)^p) whose mass sits at scales below double precision.
        """
        v = np.asarray(self.values_at(rule.theta))
        if self.tail_mass and rule.inner_len is not None:
            v = v.copy()
            for a, mass in self.tail_mass.items():
                mask = (rule.anchor == a) & (rule.inner_len > 0.0)
                if np.any(mask):
                    eps = rule.inner_len[mask]
                    v[mask] = mass(eps) / eps
        return v

    def values_at(self, theta):
        """Function values at arbitrary angles (source if present, else trig interpolation)."""
        theta = np.asarray(theta, dtype=float)
        if self.source is not None:
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.asarray(self.source(theta))
        return trig_interpolate(self.samples, theta)

    def regrid(self, M):
        """Same function on a grid of size M (resampled from source or spectrally)."""
        if M == self.M:
            return self
        if self.source is not None:
            theta = uniform_grid(M)
            with np.errstate(divide="ignore", invalid="ignore"):
                samples = np.asarray(self.source(theta))
            p = self.patches or {}
            samples = _patch_nonfinite(theta, samples, self.source, M, p.get("log"), p.get("power"))
            if not np.all(np.isfinite(samples)):
                samples = np.where(np.isfinite(samples), samples, 0.0)
            return BoundaryFunction(samples, symmetric=self.symmetric, source=self.source,
                                    breakpoints=self.breakpoints, descriptor=self.descriptor,
                                    patches=self.patches, tail_mass=self.tail_mass)
        return BoundaryFunction(spectral_resample(self.samples, M), symmetric=self.symmetric)

    def mean(self):
        """Boundary mean int f dm (graded quadrature when singular)."""
        if self.is_singular:
            rule = graded_circle_rule(self.breakpoints)
            return np.sum(rule.weight * self.rule_values(rule))
        return np.mean(self.samples)

    def quadrature(self):
        """(theta, weight, values) of the rule used to integrate this function."""
        if self.is_singular:
            rule = graded_circle_rule(self.breakpoints)
            return rule.theta, rule.weight, self.rule_values(rule)
        return self.theta, np.full(self.M, 1.0 / self.M), self.samples

    def to_csv(self, path_or_buf=None):
        """CSV rows ``theta,value`` (complex values as ``re,im``)."""
        lines = ["theta,value"] if not self.is_complex else ["theta,re,im"]
        for t, v in zip(self.theta, self.samples):
            if self.is_complex:
                lines.append(f"{t!r},{v.real!r},{v.imag!r}")
            else:
                lines.append(f"{t!r},{float(v)!r}")
        text = "\n".join(lines) + "\n"
        if path_or_buf is None:
            return text
        if hasattr(path_or_buf, "write"):
            path_or_buf.write(text)
        else:
            with open(path_or_buf, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    def to_dict(self):
        if self.descriptor is not None and self.descriptor.get("kind") != "values":
            return dict(self.descriptor, M=self.M)
        vals = self.samples
        if self.is_complex:
            return {"kind": "values", "M": self.M, "re": vals.real.tolist(), "im": vals.imag.tolist()}
        return {"kind": "values", "M": self.M, "values": vals.tolist()}

    @classmethod
    def from_dict(cls, d):
        kind = d.get("kind", "values")
        M = int(d.get("M", DEFAULT_GRID))
        if kind == "values":
            if "re" in d:
                return cls(np.asarray(d["re"]) + 1j * np.asarray(d["im"]))
            return cls(np.asarray(d["values"], dtype=float))
        if kind == "constant":
            return cls.constant(d["value"], M=M)
        if kind == "profile":
            return cls.from_profile(WeightProfile.from_dict(d["profile"]), sign=d.get("sign", -1.0), M=M)
        if kind == "log_abs_one_minus":
            return cls.log_abs_one_minus(M=M)
        if kind == "cosine":
            return cls.from_callable(np.cos, M=M, symmetric=True, descriptor={"kind": "cosine"})
        raise DomainError(f"unknown boundary function kind {kind!r}")


def spectral_resample(samples, M):
    """Trigonometric interpolation of grid samples onto a grid of size M."""
    s = np.asarray(samples)
    m = s.size
    if M == m:
        return s.copy()
    c = np.fft.fft(s) / m
    out = np.zeros(M, dtype=complex)
    half = min(m, M) // 2
    out[:half] = c[:half]
    out[-half + 1:] = c[-half + 1:] if half > 1 else out[-half + 1:]
    # split the Nyquist coefficient symmetrically when upsampling
    if M > m:
        out[half] = 0.5 * c[half]
        out[-half] = 0.5 * c[half]
    res = np.fft.ifft(out) * M
    return res if np.iscomplexobj(s) else res.real


def trig_interpolate(samples, theta):
    """Evaluate the trigonometric interpolant of grid samples at angles ``theta``."""
    s = np.asarray(samples)
    m = s.size
    c = np.fft.fft(s) / m
    k = np.fft.fftfreq(m, 1.0 / m)
    c = c.copy()
    nyq = m // 2
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    # grid starts at -pi
    phase = np.exp(1j * np.outer(theta + np.pi, k))
    c_sym = c.copy()
    c_sym[nyq] = 0.0
    vals = phase @ c_sym + c[nyq] * np.cos(nyq * (theta + np.pi))
    return vals if np.iscomplexobj(s) else vals.real


# ---------------------------------------------------------------------------
# Poisson / Herglotz


def poisson_kernel(r, t):
    """P_r(t) = (1 - r^2) / (1 - 2 r cos t + r^2) in the cancellation-free form."""
    r = np.asarray(r, dtype=float)
    gap = 1.0 - r
    s = np.sin(0.5 * np.asarray(t, dtype=float))
    return gap * (1.0 + r) / (gap * gap + 4.0 * r * s * s)


def _split_z(z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    rad = np.abs(z)
    if np.any(rad >= 1.0):
        raise DomainError("evaluation point must lie in the open unit disk")
    return z, np.angle(z), rad, 1.0 - rad


def _grid_for(f, z, kappa, refine, max_grid_):
    need = required_grid(z, kappa, base=f.M)
    if need <= f.M:
        return f
    if not refine:
        raise AccuracyError(f"grid M={f.M} too coarse for |z|={np.max(np.abs(z)):.6g}; need M>={need}")
    cap = max_grid_ if max_grid_ is not None else max_grid()
    if need > cap:
        raise AccuracyError(f"adaptive rule needs M={need} > M_max={cap} for |z|={np.max(np.abs(z)):.15g}")
    return f.regrid(need)


def herglotz_eval(W: BoundaryFunction, z, *, kappa=KAPPA, refine=True, max_grid=None):
    """int (xi + z)/(xi - z) W(xi) dm(xi); scalar in, scalar out."""
    scalar = np.ndim(z) == 0
    zz, th, rad, gap = _split_z(z)
    out = np.empty(zz.shape, dtype=complex)
    if W.is_singular:
        for i in range(zz.size):
            rule = graded_circle_rule(W.breakpoints + (th[i],))
            v = W.rule_values(rule)
            out[i] = kernels.herglotz_sum(rule.anchor, rule.offset, rule.weight, v,
                                          th[i:i + 1], rad[i:i + 1], gap[i:i + 1])[0]
    else:
        g = _grid_for(W, zz, kappa, refine, max_grid)
        rule = uniform_circle_rule(g.M)
        out[:] = kernels.herglotz_sum(rule.anchor, rule.offset, rule.weight, g.samples, th, rad, gap)
    return complex(out[0]) if scalar else out


def poisson_eval(f: BoundaryFunction, z, *, kappa=KAPPA, refine=True, max_grid=None):
    """Poisson extension of boundary data to the disk; real for real data."""
    scalar = np.ndim(z) == 0
    zz, th, rad, gap = _split_z(z)

    def real_part(part, samples):
        out = np.empty(zz.shape)
        if f.is_singular:
            for i in range(zz.size):
                rule = graded_circle_rule(f.breakpoints + (th[i],))
                v = part(f.rule_values(rule))
                out[i] = kernels.poisson_sum(rule.anchor, rule.offset, rule.weight, v,
                                             th[i:i + 1], rad[i:i + 1], gap[i:i + 1])[0]
        else:
            rule = uniform_circle_rule(samples.size)
            out[:] = kernels.poisson_sum(rule.anchor, rule.offset, rule.weight, samples, th, rad, gap)
        return out

    g = f if f.is_singular else _grid_for(f, zz, kappa, refine, max_grid)
    if f.is_complex:
        res = real_part(np.real, np.real(g.samples)) + 1j * real_part(np.imag, np.imag(g.samples))
    else:
        res = real_part(np.real, np.real(g.samples))
    return res[0] if scalar else res


def conjugate_function(W: BoundaryFunction) -> BoundaryFunction:
    """Circle conjugate by the Fourier multiplier -i sign(n); the result has zero mean.

    Spectrally accurate for smooth W; near jumps or singularities the grid
    result carries Gibbs-type errors.
    """
    if W.is_complex:
        raise ContractError("conjugate_function needs real data")
    m = W.M
    c = np.fft.fft(W.samples)
    k = np.fft.fftfreq(m, 1.0 / m)
    mult = -1j * np.sign(k)
    mult[m // 2] = 0.0
    out = np.fft.ifft(c * mult).real
    return BoundaryFunction(out, descriptor=None)


def conjugate_at(W: BoundaryFunction, theta):
    """Conjugate of W at arbitrary angles.

    For singular sources the principal value is computed directly with graded
    quadrature and singularity subtraction; otherwise the grid conjugate is
    interpolated trigonometrically.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if not W.is_singular:
        return trig_interpolate(conjugate_function(W).samples, theta)
    out = np.empty(theta.shape)
    wt = np.real(W.values_at(theta))
    for i in range(theta.size):
        rule = graded_circle_rule(W.breakpoints + (theta[i],))
        v = np.real(W.rule_values(rule))
        out[i] = kernels.conjugate_sum(rule.anchor, rule.offset, rule.weight, v,
                                       theta[i:i + 1], wt[i:i + 1])[0]
    return out


# ---------------------------------------------------------------------------
# rearrangement


@dataclass(frozen=True)
class RearrangementResult:
    """Symmetric decreasing rearrangement on the grid.

    ``permutation[k]`` is the input index whose value lands at grid index
    ``positions[k]``; grid indices are filled in order of increasing |theta|
    with +theta before -theta, so the pair +-theta receives two consecutive
    order statistics.
    """

    star_samples: np.ndarray
    permutation: np.ndarray

    def as_boundary_function(self):
        return BoundaryFunction(self.star_samples)


def central_order(m):
    """Grid indices of theta_j = 2 pi j/m - pi ordered by |theta|, +theta first."""
    c = m // 2
    order = [c]
    for k in range(1, c):
        order.extend([c + k, c - k])
    order.append(0)
    return np.asarray(order)


def rearrange_decreasing(f: BoundaryFunction) -> RearrangementResult:
    if f.is_complex:
        raise DomainError("rearrangement needs real nonnegative data")
    s = np.asarray(f.samples, dtype=float)
    if np.any(s < 0.0):
        raise DomainError("rearrangement needs nonnegative data")
    # stable sort: descending value, ties by original index
    perm = np.lexsort((np.arange(s.size), -s))
    star = np.empty_like(s)
    pos = central_order(s.size)
    star[pos] = s[perm]
    return RearrangementResult(star, perm)


def rearrange_weighted(values, weights):
    """Distribution-function view of a weighted sample.

    Returns (t_edges, levels): the decreasing rearrangement on [0, pi] of a
    function taking value ``values[i]`` on a set of measure
    ``weights[i] * 2 pi`` is ``levels[k]`` on [t_edges[k], t_edges[k+1]).
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    order = np.lexsort((np.arange(v.size), -v))
    lv = v[order]
    # measure on the circle is 2 pi w; half of it goes to each side of 0
    half_len = np.pi * w[order]
    edges = np.concatenate([[0.0], np.cumsum(half_len)])
    return edges, lv


@dataclass(frozen=True)
class HLResult:
    lhs: float
    rhs: float
    holds: bool

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def hl_pairing_check(f: BoundaryFunction, g: BoundaryFunction, tol=1e-12) -> HLResult:
    """int f g <= int f* g* on the grid (both sides times 2 pi)."""
    if f.M != g.M:
        raise GridMismatchError(f"grid sizes differ: {f.M} vs {g.M}")
    fs = rearrange_decreasing(f).star_samples
    gs = rearrange_decreasing(g).star_samples
    lhs = float(np.mean(f.samples * g.samples) * TWO_PI)
    rhs = float(np.mean(fs * gs) * TWO_PI)
    return HLResult(lhs, rhs, lhs <= rhs + tol)


# ---------------------------------------------------------------------------
# A_h(r)


@dataclass(frozen=True)
class AhResult:
    r: float
    value: float
    lower: float
    upper: float
    integral: float

    @property
    def ratio(self):
        return self.value / self.integral if self.integral > 0 else float("nan")

    @property
    def margin(self):
        """Smallest distance of the ratio to the sandwich constants."""
        if self.integral <= 0:
            return 0.0
        return min(self.ratio - LOWER_CONSTANT, UPPER_CONSTANT - self.ratio)

    def to_dict(self):
        return {"r": self.r, "value": self.value, "lower": self.lower, "upper": self.upper,
                "integral": self.integral, "ratio": self.ratio, "margin": self.margin}


def a_h(r, h: WeightProfile, *, check=True) -> AhResult:
    """A_h(r) = (1 - r) int P_r(t) h(|t|) dt / 2pi with its two-sided bound.

    Uses (1 - r)(1 - r^2) / |e^{it} - r|^2 = (1 + r)(1 - r)^2 / ((1 - r)^2 + 4 r sin^2(t/2))
    and graded Gauss-Legendre panels toward t = 0.
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise DomainError("r must lie in [0, 1)")
    gap = 1.0 - r
    t, w = graded_interval_rule(1.0, breakpoints=h.breakpoints)
    s = np.sin(0.5 * t)
    ker = (1.0 + r) * gap * gap / (gap * gap + 4.0 * r * s * s)
    # innermost panel [0, eps]: the kernel is flat there (eps << 1 - r), so
    # use its exact mass instead of Gauss-Legendre samples of the spike
    first = min(h.breakpoints + (1.0,))
    eps = innermost_length(0.5 * first)
    inner = t < eps
    value = float((np.sum(w[~inner] * ker[~inner] * h(t[~inner]))
                   + (1.0 + r) * float(h.integral(eps))) / np.pi)
    integral = float(h.integral(gap))
    lower = LOWER_CONSTANT * integral
    upper = UPPER_CONSTANT * integral
    res = AhResult(r, value, lower, upper, integral)
    if check:
        slack = 1e-12 * max(integral, 1e-300)
        if not (lower - slack <= value <= upper + slack):
            raise SandwichError(f"A_h({r}) = {value} escaped [{lower}, {upper}]")
    return res
