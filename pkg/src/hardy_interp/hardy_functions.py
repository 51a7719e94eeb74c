"""Structured models of bounded and Smirnov-class functions on the disk.

A model is an expression tree. Leaves are constants, inner functions (finite
Blaschke part times finitely many singular atoms), outer functions given by
boundary log-modulus data, and a few closed forms. Internal nodes are affine
images, positive powers, products and exp(psi * log phi).

Every zero-free node evaluates its logarithm from its structure (Herglotz
integrals, principal logs of half-plane valued functions), never as the log
of a computed value, so branches stay consistent along paths to the circle.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .boundary_calculus import (
    BoundaryFunction,
    WeightProfile,
    conjugate_at,
    herglotz_eval,
)
from .errors import ContractError, DomainError
from .quadrature import graded_circle_rule, uniform_grid

TOL_OUTER = 1e-6

CERTIFIED = "certified"
CONSISTENT = "numerically-consistent"
HAS_INNER = "has-inner-part"
UNCERTIFIED = "uncertified"


def _as_z(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("evaluation point must lie in the open unit disk")
    return z


def _log_one_minus_boundary(theta):
    """Principal log(1 - e^{i theta}) without cancellation."""
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore"):
        mod = np.log(np.abs(2.0 * np.sin(0.5 * theta)))
    arg = np.where(theta > 0.0, 0.5 * (theta - np.pi), 0.5 * (theta + np.pi))
    return mod + 1j * arg


@dataclass(frozen=True)
class InnerSpec:
    """u * prod Blaschke factors * prod exp(-s (zeta + z)/(zeta - z))."""

    blaschke_zeros: Tuple[complex, ...] = ()
    singular_atoms: Tuple[Tuple[complex, float], ...] = ()
    unimodular_constant: complex = 1.0

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.blaschke_zeros)
        if any(abs(a) >= 1.0 for a in zeros):
            raise DomainError("Blaschke zeros must lie in the open disk")
        atoms = []
        for zeta, mass in self.singular_atoms:
            zeta = complex(zeta)
            if abs(abs(zeta) - 1.0) > 1e-12:
                raise DomainError("atoms must lie on the unit circle")
            if not float(mass) > 0.0:
                raise DomainError("atom masses must be positive")
            atoms.append((zeta / abs(zeta), float(mass)))
        u = complex(self.unimodular_constant)
        if abs(abs(u) - 1.0) > 1e-12:
            raise DomainError("unimodular constant must have modulus 1")
        object.__setattr__(self, "blaschke_zeros", zeros)
        object.__setattr__(self, "singular_atoms", tuple(atoms))
        object.__setattr__(self, "unimodular_constant", u)

    @property
    def is_trivial(self):
        return not self.blaschke_zeros and not self.singular_atoms

    @property
    def singular_mass(self):
        return float(sum(m for _, m in self.singular_atoms))

    def merged(self, other):
        return InnerSpec(self.blaschke_zeros + other.blaschke_zeros,
                         self.singular_atoms + other.singular_atoms,
                         self.unimodular_constant * other.unimodular_constant)

    def to_dict(self):
        return {
            "blaschke_zeros": [[a.real, a.imag] for a in self.blaschke_zeros],
            "singular_atoms": [[z.real, z.imag, m] for z, m in self.singular_atoms],
            "unimodular_constant": [self.unimodular_constant.real, self.unimodular_constant.imag],
        }

    @classmethod
    def from_dict(cls, d):
        u = d.get("unimodular_constant", [1.0, 0.0])
        return cls(tuple(complex(a, b) for a, b in d.get("blaschke_zeros", [])),
                   tuple((complex(a, b), m) for a, b, m in d.get("singular_atoms", [])),
                   complex(u[0], u[1]))


_EMPTY_INNER = InnerSpec()


class HardyFunction:
    """Base class of all model nodes.

    Subclasses set ``status`` (outer status), ``bounded`` (H-infinity),
    ``arg_integrable`` and ``arg_bounded`` (boundary argument in L^1 / L^inf,
    catalog facts rather than measurements).
    """

    status = UNCERTIFIED
    bounded = False
    arg_integrable = False
    arg_bounded = False
    zero_free = False
    smooth_boundary = False  # boundary values analytic on the whole circle

    def eval(self, z):
        raise NotImplementedError

    def __call__(self, z):
        return self.eval(z)

    def log(self, z):
        """Structural logarithm; only for zero-free nodes."""
        raise ContractError(f"{type(self).__name__} has no structural logarithm")

    def boundary_log(self, theta):
        raise ContractError(f"{type(self).__name__} has no boundary logarithm")

    def boundary(self, theta):
        """Boundary values f(e^{i theta})."""
        return np.exp(self.boundary_log(theta))

    def boundary_log_abs(self, theta):
        try:
            return np.real(self.boundary_log(theta))
        except ContractError:
            with np.errstate(divide="ignore"):
                return np.log(np.abs(self.boundary(theta)))

    def boundary_log_abs_rule(self, rule):
        """log|f| at the nodes of a graded rule (see BoundaryFunction.rule_values)."""
        return self.boundary_log_abs(rule.theta)

    @property
    def breakpoints(self):
        return ()

    @property
    def inner(self):
        """Declared inner part (empty when none is declared)."""
        return _EMPTY_INNER

    @property
    def is_outer(self):
        return self.status == CERTIFIED

    def sup_on_grid(self, M=1 << 14):
        return float(np.max(np.abs(self.boundary(uniform_grid(M)))))

    def to_dict(self):
        raise NotImplementedError


class Constant(HardyFunction):
    bounded = True
    arg_integrable = True
    arg_bounded = True

    def __init__(self, c):
        self.c = complex(c)
        self.zero_free = self.c != 0
        self.status = CERTIFIED if self.zero_free else UNCERTIFIED

    def eval(self, z):
        return np.full(np.shape(z), self.c, dtype=complex) if np.ndim(z) else self.c

    def log(self, z):
        v = np.log(self.c)
        return np.full(np.shape(z), v, dtype=complex) if np.ndim(z) else v

    def boundary_log(self, theta):
        return np.full(np.shape(theta), np.log(self.c), dtype=complex)

    def boundary(self, theta):
        return np.full(np.shape(theta), self.c, dtype=complex)

    def to_dict(self):
        return {"type": "constant", "value": [self.c.real, self.c.imag]}


class InnerFunction(HardyFunction):
    bounded = True

    def __init__(self, spec: InnerSpec):
        self.spec = spec
        self.zero_free = not spec.blaschke_zeros
        self.status = CERTIFIED if spec.is_trivial else HAS_INNER
        self.arg_integrable = self.arg_bounded = spec.is_trivial

    @property
    def inner(self):
        return self.spec

    @property
    def breakpoints(self):
        return tuple(float(np.angle(z)) for z, _ in self.spec.singular_atoms)

    def _atoms_log(self, z):
        out = np.zeros(np.shape(z), dtype=complex)
        for zeta, mass in self.spec.singular_atoms:
            out = out - mass * (zeta + z) / (zeta - z)
        return out

    def eval(self, z):
        z = _as_z(z)
        b = kernels.blaschke_eval(np.asarray(self.spec.blaschke_zeros, dtype=complex), np.atleast_1d(z))
        out = self.spec.unimodular_constant * b.reshape(z.shape) * np.exp(self._atoms_log(z))
        return out if np.ndim(out) else complex(out)

    def log(self, z):
        if not self.zero_free:
            return super().log(z)
        z = _as_z(z)
        return np.log(self.spec.unimodular_constant) + self._atoms_log(z)

    def boundary(self, theta):
        theta = np.asarray(theta, dtype=float)
        xi = np.exp(1j * theta)
        b = np.ones(theta.shape, dtype=complex)
        for a in self.spec.blaschke_zeros:
            b = b * (xi if a == 0 else (abs(a) / a) * (a - xi) / (1.0 - np.conj(a) * xi))
        out = self.spec.unimodular_constant * b
        for zeta, mass in self.spec.singular_atoms:
            # (zeta + xi)/(zeta - xi) = i cot((theta - arg zeta)/2) off the atom
            with np.errstate(divide="ignore", invalid="ignore"):
                cot = 1.0 / np.tan(0.5 * (theta - np.angle(zeta)))
            out = out * np.exp(-1j * mass * cot)
        return out

    def boundary_log_abs(self, theta):
        return np.zeros(np.shape(theta))

    def to_dict(self):
        return {"type": "inner", "spec": self.spec.to_dict()}


class OuterFunction(HardyFunction):
    """exp(scale * Herglotz(W)) for boundary log-modulus W."""

    zero_free = True
    status = CERTIFIED

    def __init__(self, W: BoundaryFunction, scale=1.0):
        if W.is_complex:
            raise ContractError("log-modulus data must be real")
        self.W = W
        self.scale = float(scale)
        desc = W.descriptor or {}
        if desc.get("kind") == "profile":
            prof = WeightProfile.from_dict(desc["profile"])
            self.arg_integrable = prof.zygmund_flag
            self.arg_bounded = prof.conjugate_bounded_flag
            self.profile = prof
            self.bounded = desc.get("sign", -1.0) * self.scale <= 0.0
        else:
            # grid data is a trigonometric polynomial: bounded, with bounded conjugate;
            # log|1 - e^{it}| has conjugate (t - pi)/2 on (0, 2 pi)
            self.arg_integrable = self.arg_bounded = True
            self.profile = None
            if desc.get("kind") == "log_abs_one_minus":
                self.bounded = self.scale >= 0.0
            else:
                self.bounded = True

    @property
    def breakpoints(self):
        return self.W.breakpoints

    def log(self, z):
        z = _as_z(z)
        return self.scale * herglotz_eval(self.W, z)

    def eval(self, z):
        return np.exp(self.log(z))

    def boundary_log_abs(self, theta):
        return self.scale * np.real(self.W.values_at(np.asarray(theta, dtype=float)))

    def boundary_log_abs_rule(self, rule):
        return self.scale * np.real(self.W.rule_values(rule))

    def boundary_arg(self, theta):
        return self.scale * conjugate_at(self.W, theta)

    def boundary_log(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.boundary_log_abs(theta) + 1j * self.boundary_arg(theta).reshape(theta.shape)

    def to_dict(self):
        return {"type": "outer", "log_modulus": self.W.to_dict(), "scale": self.scale}


class ClosedForm(HardyFunction):
    """Catalog closed forms.

    * ``one_minus_z``: 1 - z (outer, argument in (-pi/2, pi/2)).
    * ``exp_neg_c_power``: exp(-c (1 - z)^-alpha), 0 < alpha <= 1. For alpha < 1
      it is bounded outer; for alpha = 1 it is e^{-c/2} times the singular inner
      function with an atom of mass c/2 at 1.
    * ``mobius``: (a z + b)/(c z + d).
    """

    def __init__(self, kind, **params):
        self.kind = kind
        self.params = {k: (complex(v) if kind == "mobius" else float(v)) for k, v in params.items()}
        if kind == "one_minus_z":
            self.status, self.bounded = CERTIFIED, True
            self.arg_integrable = self.arg_bounded = True
            self.zero_free = True
        elif kind == "exp_neg_c_power":
            c, alpha = self.params["c"], self.params["alpha"]
            if not (c > 0 and 0 < alpha <= 1):
                raise DomainError("exp_neg_c_power needs c > 0 and 0 < alpha <= 1")
            self.zero_free = True
            self.bounded = True
            self.status = CERTIFIED if alpha < 1 else HAS_INNER
            self.arg_integrable = alpha < 1
            self.arg_bounded = False
        elif kind == "mobius":
            a, b, c, d = (self.params[k] for k in "abcd")
            if a * d - b * c == 0:
                raise DomainError("degenerate Mobius map")
            pole_in = c != 0 and abs(d / c) < 1.0
            pole_on = c != 0 and abs(abs(d / c) - 1.0) <= 1e-14
            zero_in = a != 0 and abs(b / a) < 1.0
            if pole_in:
                raise DomainError("Mobius map has a pole in the disk")
            self.bounded = not pole_on
            self.zero_free = not zero_in
            # rational, analytic in the disk, no zeros there: outer
            self.status = CERTIFIED if self.zero_free else HAS_INNER
            self.arg_integrable = self.zero_free
            self.arg_bounded = False
        else:
            raise DomainError(f"unknown closed form {kind!r}")

    @classmethod
    def one_minus_z(cls):
        return cls("one_minus_z")

    @classmethod
    def exp_neg_c_power(cls, c, alpha):
        return cls("exp_neg_c_power", c=c, alpha=alpha)

    @classmethod
    def mobius(cls, a, b, c, d):
        return cls("mobius", a=a, b=b, c=c, d=d)

    @property
    def breakpoints(self):
        if self.kind in ("one_minus_z", "exp_neg_c_power"):
            return (0.0,)
        p = self.params
        pts = []
        if p["c"] != 0 and abs(abs(p["d"] / p["c"]) - 1.0) <= 1e-14:
            pts.append(float(np.angle(-p["d"] / p["c"])))
        return tuple(pts)

    @property
    def inner(self):
        if self.kind == "exp_neg_c_power" and self.params["alpha"] == 1.0:
            return InnerSpec((), ((1.0, 0.5 * self.params["c"]),), 1.0)
        if self.kind == "mobius" and not self.zero_free:
            return InnerSpec((-self.params["b"] / self.params["a"],))
        return _EMPTY_INNER

    def eval(self, z):
        z = _as_z(z)
        if self.kind == "mobius":
            p = self.params
            return (p["a"] * z + p["b"]) / (p["c"] * z + p["d"])
        if self.kind == "one_minus_z":
            return 1.0 - z
        return np.exp(self.log(z))

    def log(self, z):
        z = _as_z(z)
        if self.kind == "one_minus_z":
            return np.log(1.0 - z)
        if self.kind == "exp_neg_c_power":
            c, alpha = self.params["c"], self.params["alpha"]
            return -c * np.exp(-alpha * np.log(1.0 - z))
        if self.zero_free:
            p = self.params
            # zero-free Mobius image of the disk is a disk or half-plane missing 0
            return np.log(p["a"] * z + p["b"]) - np.log(p["c"] * z + p["d"])
        return super().log(z)

    def boundary_log(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.kind == "one_minus_z":
            return _log_one_minus_boundary(theta)
        if self.kind == "exp_neg_c_power":
            c, alpha = self.params["c"], self.params["alpha"]
            with np.errstate(over="ignore", invalid="ignore"):
                v = -c * np.exp(-alpha * _log_one_minus_boundary(theta))
            return np.where(theta == 0.0, -np.inf, v)
        return np.log(self.boundary(theta))

    def boundary(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.kind == "mobius":
            p = self.params
            xi = np.exp(1j * theta)
            with np.errstate(divide="ignore", invalid="ignore"):
                return (p["a"] * xi + p["b"]) / (p["c"] * xi + p["d"])
        if self.kind == "one_minus_z":
            # 1 - e^{it} = -2i sin(t/2) e^{it/2}
            return -2j * np.sin(0.5 * theta) * np.exp(0.5j * theta)
        with np.errstate(over="ignore", invalid="ignore"):
            return np.where(theta == 0.0, 0.0, np.exp(self.boundary_log(theta)))

    def to_dict(self):
        if self.kind == "mobius":
            return {"type": "closed_form", "kind": "mobius",
                    "params": {k: [v.real, v.imag] for k, v in self.params.items()}}
        return {"type": "closed_form", "kind": self.kind, "params": dict(self.params)}


class SchurInterpolant(HardyFunction):
    """Rational function from the Schur-Nevanlinna recursion, sup norm <= 1."""

    bounded = True
    arg_integrable = True
    smooth_boundary = True

    def __init__(self, nodes, gammas, tail=0.0):
        self.nodes = np.asarray(nodes, dtype=complex)
        self.gammas = np.asarray(gammas, dtype=complex)
        self.tail = complex(tail)

    @property
    def breakpoints(self):
        # the poles 1/conj(z_k) sit 1 - |z_k| away from the circle; grade there
        return tuple(sorted({float(np.angle(z)) for z in self.nodes if abs(z) > 0.5}))

    def eval(self, z):
        z = _as_z(z)
        out = kernels.schur_eval(self.nodes, self.gammas, self.tail, np.atleast_1d(z)).reshape(z.shape)
        return out if np.ndim(out) else complex(out)

    def boundary(self, theta):
        theta = np.asarray(theta, dtype=float)
        xi = np.exp(1j * np.atleast_1d(theta))
        return kernels.schur_eval(self.nodes, self.gammas, self.tail, xi).reshape(theta.shape)

    def boundary_log_abs(self, theta):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.boundary(theta)))

    def to_dict(self):
        return {"type": "schur",
                "nodes": [[z.real, z.imag] for z in self.nodes],
                "gammas": [[g.real, g.imag] for g in self.gammas],
                "tail": [self.tail.real, self.tail.imag]}


class Affine(HardyFunction):
    """a + b f. With ``alpha`` set, the node claims values in the half-plane
    Re(e^{-i alpha} w) > 0; the claim is checked on a boundary grid at
    construction and recorded in ``positivity``. The principal logarithm of
    e^{-i alpha}(a + b f) is then continuous and serves as the structural log."""

    def __init__(self, a, b, f: HardyFunction, alpha=None, grid=1 << 14):
        self.a = complex(a)
        self.b = complex(b)
        self.f = f
        self.smooth_boundary = f.smooth_boundary
        self.alpha = None if alpha is None else float(alpha)
        self.bounded = f.bounded
        self.positivity = None
        self.grid = int(grid)
        if self.alpha is not None:
            vals = self.boundary(uniform_grid(self.grid))
            self.positivity = float(np.min(np.real(np.exp(-1j * self.alpha) * vals)))
            ok = self.positivity > 0.0 and f.bounded
            self.zero_free = ok
            self.status = CERTIFIED if ok else UNCERTIFIED
            self.arg_integrable = self.arg_bounded = ok
        elif self.b == 0:
            self.zero_free = self.a != 0
            self.status = CERTIFIED if self.zero_free else UNCERTIFIED
            self.arg_integrable = self.arg_bounded = True

    @property
    def breakpoints(self):
        return self.f.breakpoints

    def eval(self, z):
        return self.a + self.b * self.f.eval(z)

    def log(self, z):
        if not self.zero_free:
            return super().log(z)
        rot = np.exp(-1j * (self.alpha or 0.0))
        return np.log(rot * self.eval(z)) + 1j * (self.alpha or 0.0)

    def boundary(self, theta):
        return self.a + self.b * self.f.boundary(theta)

    def boundary_log(self, theta):
        if not self.zero_free:
            return super().boundary_log(theta)
        rot = np.exp(-1j * (self.alpha or 0.0))
        return np.log(rot * self.boundary(theta)) + 1j * (self.alpha or 0.0)

    def to_dict(self):
        return {"type": "affine", "a": [self.a.real, self.a.imag], "b": [self.b.real, self.b.imag],
                "alpha": self.alpha, "f": self.f.to_dict()}


class Cayley(HardyFunction):
    """s (1 + g) / (1 - g) for a Schur function g and s > 0.

    When sup |g| < 1 on the boundary grid the node maps into the right
    half-plane, is bounded, and is outer with bounded argument; the grid
    minimum of the real part is kept in ``positivity``.
    """

    def __init__(self, g: HardyFunction, s=1.0, grid=1 << 14):
        self.g = g
        self.s = float(s)
        if not self.s > 0:
            raise DomainError("scale must be positive")
        self.grid = int(grid)
        self.smooth_boundary = g.smooth_boundary
        gb = g.boundary(uniform_grid(self.grid))
        self.g_sup = float(np.max(np.abs(gb)))
        ok = g.bounded and self.g_sup < 1.0
        self.positivity = float(np.min(np.real(self.s * (1 + gb) / (1 - gb)))) if ok else None
        ok = ok and self.positivity > 0.0
        self.zero_free = self.bounded = ok
        self.arg_integrable = self.arg_bounded = ok
        self.status = CERTIFIED if ok else UNCERTIFIED

    @property
    def breakpoints(self):
        return self.g.breakpoints

    def eval(self, z):
        v = self.g.eval(z)
        return self.s * (1 + v) / (1 - v)

    def log(self, z):
        if not self.zero_free:
            return super().log(z)
        return np.log(self.eval(z))

    def boundary(self, theta):
        v = self.g.boundary(theta)
        return self.s * (1 + v) / (1 - v)

    def boundary_log(self, theta):
        if not self.zero_free:
            return super().boundary_log(theta)
        return np.log(self.boundary(theta))

    def to_dict(self):
        return {"type": "cayley", "s": self.s, "g": self.g.to_dict()}


class Power(HardyFunction):
    """f^c = exp(c log f) for zero-free f and real c > 0."""

    zero_free = True

    def __init__(self, f: HardyFunction, c):
        c = float(c)
        if not c > 0:
            raise DomainError("power exponent must be positive")
        if not f.zero_free:
            raise ContractError("powers need a zero-free base")
        self.f = f
        self.c = c
        self.status = f.status
        self.bounded = f.bounded
        self.arg_integrable = f.arg_integrable
        self.arg_bounded = f.arg_bounded

    @property
    def breakpoints(self):
        return self.f.breakpoints

    @property
    def inner(self):
        spec = self.f.inner
        return InnerSpec((), tuple((z, self.c * m) for z, m in spec.singular_atoms)) if not spec.is_trivial else spec

    def log(self, z):
        return self.c * self.f.log(z)

    def eval(self, z):
        return np.exp(self.log(z))

    def boundary_log(self, theta):
        return self.c * self.f.boundary_log(theta)

    def boundary_log_abs(self, theta):
        return self.c * self.f.boundary_log_abs(theta)

    def boundary_log_abs_rule(self, rule):
        return self.c * self.f.boundary_log_abs_rule(rule)

    def to_dict(self):
        return {"type": "power", "c": self.c, "f": self.f.to_dict()}


class PowerFn(HardyFunction):
    """phi^psi = exp(psi log phi) for zero-free phi.

    ``certificate`` is "outer" when phi is outer with integrable boundary
    argument and psi is bounded outer, "bounded outer" when in addition
    Re psi > 0 on the boundary grid and arg phi is bounded, and "uncertified"
    when the metadata needed for either claim is missing.
    """

    zero_free = True

    def __init__(self, phi: HardyFunction, psi: HardyFunction, grid=1 << 12):
        if not phi.zero_free:
            raise ContractError("phi must be zero-free")
        self.phi = phi
        self.psi = psi
        self.re_psi_min = float(np.min(np.real(psi.boundary(uniform_grid(grid)))))
        base = phi.is_outer and psi.is_outer and psi.bounded
        if base and phi.arg_bounded and self.re_psi_min > 0.0:
            self.certificate = "bounded outer"
        elif base and phi.arg_integrable:
            self.certificate = "outer"
        else:
            self.certificate = UNCERTIFIED
        self.status = CERTIFIED if self.certificate != UNCERTIFIED else UNCERTIFIED
        self.bounded = self.certificate == "bounded outer"
        self.arg_integrable = self.arg_bounded = False

    @property
    def breakpoints(self):
        return tuple(sorted(set(self.phi.breakpoints) | set(self.psi.breakpoints)))

    def log(self, z):
        return self.psi.eval(z) * self.phi.log(z)

    def eval(self, z):
        return np.exp(self.log(z))

    def boundary_log(self, theta):
        return self.psi.boundary(theta) * self.phi.boundary_log(theta)

    def boundary_log_abs_rule(self, rule):
        theta = rule.theta
        psi_b = self.psi.boundary(theta)
        mod = self.phi.boundary_log_abs_rule(rule)
        if np.all(np.imag(psi_b) == 0.0):
            return np.real(psi_b) * mod
        arg = np.imag(self.phi.boundary_log(theta))
        return np.real(psi_b) * mod - np.imag(psi_b) * arg

    def boundary_log_abs(self, theta):
        return np.real(self.boundary_log(theta))

    def to_dict(self):
        return {"type": "power_fn", "phi": self.phi.to_dict(), "psi": self.psi.to_dict()}


class Product(HardyFunction):
    def __init__(self, factors):
        self.factors = tuple(factors)
        if not self.factors:
            raise ContractError("empty product")
        self.zero_free = all(f.zero_free for f in self.factors)
        self.bounded = all(f.bounded for f in self.factors)
        self.arg_integrable = all(f.arg_integrable for f in self.factors)
        self.arg_bounded = all(f.arg_bounded for f in self.factors)
        statuses = {f.status for f in self.factors}
        if not self.inner.is_trivial or HAS_INNER in statuses:
            self.status = HAS_INNER
        elif statuses == {CERTIFIED}:
            self.status = CERTIFIED
        else:
            self.status = UNCERTIFIED

    @property
    def breakpoints(self):
        pts = set()
        for f in self.factors:
            pts |= set(f.breakpoints)
        return tuple(sorted(pts))

    @property
    def inner(self):
        spec = _EMPTY_INNER
        for f in self.factors:
            spec = spec.merged(f.inner)
        return spec

    def eval(self, z):
        out = 1.0
        for f in self.factors:
            out = out * f.eval(z)
        return out

    def log(self, z):
        if not self.zero_free:
            return super().log(z)
        return sum(f.log(z) for f in self.factors)

    def boundary(self, theta):
        out = np.ones(np.shape(theta), dtype=complex)
        for f in self.factors:
            out = out * f.boundary(theta)
        return out

    def boundary_log_abs(self, theta):
        return sum(f.boundary_log_abs(theta) for f in self.factors)

    def boundary_log_abs_rule(self, rule):
        return sum(f.boundary_log_abs_rule(rule) for f in self.factors)

    def to_dict(self):
        return {"type": "product", "factors": [f.to_dict() for f in self.factors]}


def function_from_dict(d) -> HardyFunction:
    t = d["type"]
    if t == "constant":
        return Constant(complex(*d["value"]))
    if t == "inner":
        return InnerFunction(InnerSpec.from_dict(d["spec"]))
    if t == "outer":
        return OuterFunction(BoundaryFunction.from_dict(d["log_modulus"]), d.get("scale", 1.0))
    if t == "closed_form":
        if d["kind"] == "mobius":
            return ClosedForm.mobius(**{k: complex(*v) for k, v in d["params"].items()})
        return ClosedForm(d["kind"], **d.get("params", {}))
    if t == "schur":
        return SchurInterpolant([complex(*p) for p in d["nodes"]], [complex(*g) for g in d["gammas"]],
                                complex(*d["tail"]))
    if t == "affine":
        return Affine(complex(*d["a"]), complex(*d["b"]), function_from_dict(d["f"]), d.get("alpha"))
    if t == "cayley":
        return Cayley(function_from_dict(d["g"]), d["s"])
    if t == "power":
        return Power(function_from_dict(d["f"]), d["c"])
    if t == "power_fn":
        return PowerFn(function_from_dict(d["phi"]), function_from_dict(d["psi"]))
    if t == "product":
        return Product([function_from_dict(f) for f in d["factors"]])
    raise DomainError(f"unknown function node {t!r}")


# ---------------------------------------------------------------------------
# operations


def outer_from_log_modulus(W) -> OuterFunction:
    """Outer function with boundary modulus e^W (W a BoundaryFunction, or a
    WeightProfile h meaning W = -h(|t|))."""
    if isinstance(W, WeightProfile):
        W = BoundaryFunction.from_profile(W, sign=-1.0)
    mean = W.mean()
    if not np.isfinite(mean):
        raise DomainError("log-modulus data are not integrable")
    return OuterFunction(W)


def power_outer(f: HardyFunction, c) -> HardyFunction:
    """f^c for a certified outer f and c > 0 (log-modulus c W)."""
    c = float(c)
    if not c > 0:
        raise DomainError("exponent must be positive")
    if not f.is_outer:
        raise ContractError("power_outer needs a certified outer function")
    if isinstance(f, OuterFunction):
        return OuterFunction(f.W, f.scale * c)
    return Power(f, c)


def power_fn(phi: HardyFunction, psi: HardyFunction) -> PowerFn:
    return PowerFn(phi, psi)


@dataclass(frozen=True)
class DeficitReport:
    boundary_mean_log: float
    log_mod_at_0: float
    blaschke_mass: float
    singular_mass_estimate: float
    certified_outer: bool
    tol: float = TOL_OUTER
    zeros_at_origin: int = 0

    @property
    def deficit(self):
        return self.singular_mass_estimate

    def to_dict(self):
        return {
            "boundary_mean_log": self.boundary_mean_log,
            "log_mod_at_0": self.log_mod_at_0,
            "blaschke_mass": self.blaschke_mass,
            "singular_mass_estimate": self.singular_mass_estimate,
            "deficit": self.deficit,
            "certified_outer": self.certified_outer,
            "tol": self.tol,
            "zeros_at_origin": self.zeros_at_origin,
        }


def _rule_mean(f, rule):
    v = np.asarray(f.boundary_log_abs_rule(rule), dtype=float)
    bad = ~np.isfinite(v)
    if np.any(bad):
        if np.any(v[bad] > 0):
            raise DomainError("boundary log-modulus is not integrable")
        # isolated -inf samples exactly at a boundary zero carry no mass
        v = np.where(bad, 0.0, v)
    return float(np.sum(rule.weight * v))


def _uniform_mean(f, rtol, max_grid=1 << 22):
    m = 1 << 12
    prev = None
    while m <= max_grid:
        with np.errstate(divide="ignore"):
            est = float(np.mean(np.log(np.abs(f.boundary(uniform_grid(m))))))
        if prev is not None and abs(est - prev) <= rtol * max(1.0, abs(est)):
            return est
        prev = est
        m *= 4
    return prev


def boundary_mean_log(f: HardyFunction, rtol=1e-13, max_anchors=2048):
    """int log|f| dm.

    The mean is additive over products and linear in powers, so those nodes
    recurse. Functions with smooth boundary values use the rectangle rule on
    grids refined until two successive means agree (geometric convergence,
    rate set by the distance of the nearest pole to the circle). Everything
    else uses graded quadrature around the declared breakpoints, with
    equispaced extra anchors doubled until the estimate settles.
    """
    if isinstance(f, Product):
        return float(sum(boundary_mean_log(g, rtol, max_anchors) for g in f.factors))
    if isinstance(f, Power):
        return f.c * boundary_mean_log(f.f, rtol, max_anchors)
    if isinstance(f, Constant):
        return float(np.log(abs(f.c)))
    if isinstance(f, InnerFunction):
        return 0.0
    if isinstance(f, OuterFunction):
        return f.scale * float(f.W.mean())
    if f.smooth_boundary:
        return _uniform_mean(f, rtol)
    anchors = 8
    prev = _rule_mean(f, graded_circle_rule(f.breakpoints, base_anchors=anchors))
    while anchors < max_anchors:
        anchors *= 4
        est = _rule_mean(f, graded_circle_rule(f.breakpoints, base_anchors=anchors))
        if abs(est - prev) <= rtol * max(1.0, abs(est)):
            return est
        prev = est
    return prev


def outer_deficit(f: HardyFunction, tol=TOL_OUTER) -> DeficitReport:
    """Jensen-type accounting: mean log|f| - log|f(0)| - sum log(1/|a_j|).

    For an N+ function the remainder is the mass of the singular inner
    factor (zero exactly for outer functions). Zeros declared at the origin
    are divided out: log|(f/z^m)(0)| is the mean of log|f/z^m| over a small
    circle inside which f has no other declared zero.
    """
    spec = f.inner
    zeros = np.asarray(spec.blaschke_zeros, dtype=complex)
    at0 = int(np.sum(zeros == 0))
    nonzero = zeros[zeros != 0]
    mean_log = boundary_mean_log(f)
    if at0 == 0:
        try:
            v0 = np.real(f.log(0.0)) if f.zero_free else np.log(abs(f.eval(0.0)))
        except ContractError:
            v0 = np.log(abs(f.eval(0.0)))
    else:
        rho = 0.5 * (np.min(np.abs(nonzero)) if nonzero.size else 1.0)
        ring = rho * np.exp(2j * np.pi * np.arange(64) / 64)
        v0 = float(np.mean(np.log(np.abs(f.eval(ring)))) - at0 * np.log(rho))
    v0 = float(v0)
    if not np.isfinite(v0):
        raise DomainError("f(0) = 0 with no zero declared at the origin")
    mass = float(np.sum(np.log(1.0 / np.abs(nonzero)))) if nonzero.size else 0.0
    deficit = mean_log - v0 - mass
    certified = abs(deficit) <= tol and spec.is_trivial and f.status != HAS_INNER
    return DeficitReport(mean_log, v0, mass, deficit, bool(certified), tol, at0)
