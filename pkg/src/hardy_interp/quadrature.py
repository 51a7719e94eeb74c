"""Quadrature rules on the circle and on [0, b].

Circle rules carry node angles as ``anchor + offset`` pairs. Nodes close to
a breakpoint are anchored at that breakpoint, so the distance to it is known
to full relative precision. Weights are normalized to dm = dtheta / 2pi.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * np.pi

DEFAULT_PANELS = 40
DEFAULT_RATIO = 0.15
DEFAULT_ORDER = 16


@lru_cache(maxsize=None)
def gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def graded_offsets(length, n_panels=DEFAULT_PANELS, ratio=DEFAULT_RATIO, order=DEFAULT_ORDER):
    """Gauss-Legendre nodes on (0, length) on geometric panels refined toward 0.

    Panels are [length*ratio^(k+1), length*ratio^k] for k < n_panels plus the
    innermost [0, length*ratio^n_panels].
    """
    x, w = gauss_legendre(order)
    edges = length * ratio ** np.arange(n_panels + 1, dtype=float)
    edges = np.concatenate([edges, [0.0]])
    hi, lo = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def innermost_length(length, n_panels=DEFAULT_PANELS, ratio=DEFAULT_RATIO):
    """Length of the innermost panel [0, length*ratio^n_panels] of :func:`graded_offsets`."""
    return length * ratio ** n_panels


@dataclass(frozen=True)
class CircleRule:
    """``inner_len[i]`` is the length of node i's panel when that panel touches
    its anchor (the innermost one), else 0. Integrands with a non-integrable-
    looking but integrable spike at an anchor use it to substitute the exact
    panel mass."""

    anchor: np.ndarray
    offset: np.ndarray
    weight: np.ndarray
    inner_len: np.ndarray = None

    @property
    def theta(self):
        # wrap without adding pi first, so tiny offsets from anchor 0 survive
        t = self.anchor + self.offset
        return t - TWO_PI * np.round(t / TWO_PI)

    @property
    def size(self):
        return self.weight.size


def _wrap(angle):
    return float(np.mod(angle + np.pi, TWO_PI) - np.pi)


def normalize_breakpoints(breakpoints):
    pts = sorted({_wrap(b) for b in breakpoints})
    return tuple(pts)


@lru_cache(maxsize=512)
def _circle_rule_cached(breaks, n_panels, ratio, order):
    anchors, offsets, weights, inner = [], [], [], []
    nb = len(breaks)
    for i in range(nb):
        left = breaks[i]
        right = breaks[i + 1] if i + 1 < nb else breaks[0] + TWO_PI
        half = 0.5 * (right - left)
        t, w = graded_offsets(half, n_panels, ratio, order)
        eps = innermost_length(half, n_panels, ratio)
        flag = np.where(t < eps, eps, 0.0)
        anchors.append(np.full(t.size, left))
        offsets.append(t)
        weights.append(w)
        inner.append(flag)
        anchors.append(np.full(t.size, breaks[(i + 1) % nb]))
        offsets.append(-t)
        weights.append(w)
        inner.append(flag)
    rule = CircleRule(
        np.concatenate(anchors),
        np.concatenate(offsets),
        np.concatenate(weights) / TWO_PI,
        np.concatenate(inner),
    )
    for arr in (rule.anchor, rule.offset, rule.weight, rule.inner_len):
        arr.setflags(write=False)
    return rule


def graded_circle_rule(breakpoints, n_panels=DEFAULT_PANELS, ratio=DEFAULT_RATIO,
                       order=DEFAULT_ORDER, base_anchors=8):
    """Composite rule on the circle graded toward every breakpoint.

    ``base_anchors`` equally spaced extra breakpoints keep panels short on
    smooth stretches.
    """
    pts = list(breakpoints)
    if base_anchors:
        pts.extend(-np.pi + TWO_PI * np.arange(base_anchors) / base_anchors)
    breaks = normalize_breakpoints(pts)
    if not breaks:
        breaks = (-np.pi,)
    return _circle_rule_cached(breaks, int(n_panels), float(ratio), int(order))


def uniform_circle_rule(m):
    """Rectangle rule on theta_j = 2 pi j / m - pi."""
    theta = TWO_PI * np.arange(m) / m - np.pi
    return CircleRule(theta, np.zeros(m), np.full(m, 1.0 / m), np.zeros(m))


def uniform_grid(m):
    return TWO_PI * np.arange(m) / m - np.pi


def graded_interval_rule(b, breakpoints=(), n_panels=DEFAULT_PANELS, ratio=DEFAULT_RATIO,
                         order=DEFAULT_ORDER):
    """Nodes and weights on (0, b) graded toward 0 and toward each interior breakpoint.

    The innermost panel next to 0 is [0, innermost_length(min(b, first gap)/2)].
    """
    pts = sorted({0.0, float(b)} | {float(p) for p in breakpoints if 0.0 < p < b})
    nodes, weights = [], []
    for lo, hi in zip(pts[:-1], pts[1:]):
        half = 0.5 * (hi - lo)
        t, w = graded_offsets(half, n_panels, ratio, order)
        nodes.extend([lo + t, hi - t])
        weights.extend([w, w])
    return np.concatenate(nodes), np.concatenate(weights)
