"""Pseudo-hyperbolic geometry of the disk and separation constants of point sequences."""
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import ContractError, DomainError

BOUNDARY_GUARD = 1e-12


def _as_disk_point(z, name="z"):
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"{name}={z!r} is not in the open unit disk")
    return z


def pseudo_hyperbolic(z, w):
    """|z - w| / |1 - conj(w) z| for two points of the open disk."""
    z = _as_disk_point(z, "z")
    w = _as_disk_point(w, "w")
    return abs(z - w) / abs(1.0 - w.conjugate() * z)


@dataclass(frozen=True)
class PointSequence:
    """Finite ordered list of distinct points of the disk.

    ``descriptor`` keeps the generator (e.g. ``{"family": "exponential",
    "ratio": 0.5, "count": 12}``) so that serialization round-trips and
    asymptotic code paths can recognize the family.
    """

    points: np.ndarray
    descriptor: Optional[dict] = field(default=None, compare=False)
    boundary_guard: float = BOUNDARY_GUARD

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex)).copy()
        if pts.ndim != 1:
            raise ContractError("points must be a 1-d sequence")
        if pts.size and np.max(np.abs(pts)) >= 1.0 - self.boundary_guard:
            raise DomainError("every point must satisfy |z| < 1 - boundary_guard")
        if pts.size != np.unique(pts).size:
            raise ContractError("points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def exponential(cls, ratio=0.5, count=12, start=1):
        """lambda_n = 1 - ratio^n for n = start, ..., start + count - 1."""
        if not 0.0 < ratio < 1.0:
            raise DomainError("ratio must lie in (0, 1)")
        n = np.arange(start, start + count, dtype=float)
        desc = {"family": "exponential", "ratio": ratio, "count": count}
        if start != 1:
            desc["start"] = start
        return cls(1.0 - ratio ** n, descriptor=desc)

    @property
    def is_real_increasing(self):
        p = self.points
        if np.any(p.imag != 0.0) or np.any(p.real <= 0.0):
            return False
        return bool(np.all(np.diff(p.real) > 0.0))

    @property
    def gaps(self):
        """1 - |lambda_n|, computed exactly for the exponential family."""
        d = self.descriptor or {}
        if d.get("family") == "exponential":
            n = np.arange(d.get("start", 1), d.get("start", 1) + d["count"], dtype=float)
            return d["ratio"] ** n
        return 1.0 - np.abs(self.points)

    def __len__(self):
        return self.points.size

    def __iter__(self):
        return iter(self.points)

    def rotated(self, theta):
        return PointSequence(self.points * np.exp(1j * theta))

    def subset(self, index):
        return PointSequence(self.points[np.asarray(index)])


@dataclass(frozen=True)
class SeparationReport:
    delta: float
    per_point_products: np.ndarray
    exponential_ratio: Optional[float]
    carleson_seed: float

    def to_dict(self):
        return {
            "delta": self.delta,
            "per_point_products": [float(v) for v in self.per_point_products],
            "exponential_ratio": self.exponential_ratio,
            "carleson_seed": self.carleson_seed,
        }


def as_point_sequence(points):
    if isinstance(points, PointSequence):
        return points
    return PointSequence(np.asarray(points, dtype=complex))


def exponential_ratio(seq):
    """max_n (1 - l_{n+1}) / (1 - l_n) for a real increasing sequence; None if shorter than 2."""
    seq = as_point_sequence(seq)
    if not seq.is_real_increasing:
        raise ContractError("exponential_ratio needs a real, positive, strictly increasing sequence")
    if len(seq) < 2:
        return None
    g = seq.gaps
    return float(np.max(g[1:] / g[:-1]))


def carleson_seed(delta):
    """Conservative starting value delta^2/4 for the working interpolation index.

    The seed certifies nothing by itself; every pipeline validates feasibility
    per instance with a Pick test.
    """
    delta = float(delta)
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    return delta * delta / 4.0


def separation_delta(seq: "PointSequence | Sequence[complex]") -> SeparationReport:
    seq = as_point_sequence(seq)
    if len(seq) == 0:
        raise ContractError("sequence must be nonempty")
    products = np.exp(kernels.log_separation_products(seq.points))
    delta = float(np.min(products))
    ratio = exponential_ratio(seq) if seq.is_real_increasing else None
    return SeparationReport(
        delta=delta,
        per_point_products=products,
        exponential_ratio=ratio,
        carleson_seed=carleson_seed(delta),
    )
