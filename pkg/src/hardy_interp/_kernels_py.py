"""Pure numpy implementations of the hot loops.

These are the reference versions; ``_ckernels.pyx`` mirrors every function
with the same signature and must agree to rounding.
"""
import numpy as np

_CHUNK = 1 << 22


def _targets_chunks(n_nodes, n_targets):
    step = max(1, _CHUNK // max(n_nodes, 1))
    for start in range(0, n_targets, step):
        yield slice(start, min(start + step, n_targets))


def herglotz_sum(anchor, offset, weight, values, theta_z, r, gap):
    """sum_i w_i v_i (xi_i + z)/(xi_i - z) for each target z = r e^{i theta_z}.

    Node angles are ``anchor + offset`` and the kernel is evaluated through
    u = (anchor - theta_z) + offset together with the exact gap 1 - r, so
    that targets close to the circle keep full relative accuracy.
    """
    anchor = np.asarray(anchor, dtype=float)
    offset = np.asarray(offset, dtype=float)
    wv = np.asarray(weight, dtype=float) * np.asarray(values, dtype=complex)
    theta_z = np.atleast_1d(np.asarray(theta_z, dtype=float))
    r = np.broadcast_to(np.asarray(r, dtype=float), theta_z.shape)
    gap = np.broadcast_to(np.asarray(gap, dtype=float), theta_z.shape)
    out = np.empty(theta_z.shape, dtype=complex)
    for sl in _targets_chunks(anchor.size, theta_z.size):
        u = (anchor[None, :] - theta_z[sl, None]) + offset[None, :]
        s = np.sin(0.5 * u)
        c = np.cos(0.5 * u)
        rr = r[sl, None]
        gg = gap[sl, None]
        den = gg * gg + 4.0 * rr * s * s
        ker = (gg * (1.0 + rr) - 4.0j * rr * s * c) / den
        out[sl] = ker @ wv
    return out


def poisson_sum(anchor, offset, weight, values, theta_z, r, gap):
    """Real-kernel counterpart of :func:`herglotz_sum` for real ``values``."""
    anchor = np.asarray(anchor, dtype=float)
    offset = np.asarray(offset, dtype=float)
    wv = np.asarray(weight, dtype=float) * np.asarray(values, dtype=float)
    theta_z = np.atleast_1d(np.asarray(theta_z, dtype=float))
    r = np.broadcast_to(np.asarray(r, dtype=float), theta_z.shape)
    gap = np.broadcast_to(np.asarray(gap, dtype=float), theta_z.shape)
    out = np.empty(theta_z.shape, dtype=float)
    for sl in _targets_chunks(anchor.size, theta_z.size):
        u = (anchor[None, :] - theta_z[sl, None]) + offset[None, :]
        s = np.sin(0.5 * u)
        rr = r[sl, None]
        gg = gap[sl, None]
        out[sl] = ((gg * (1.0 + rr)) / (gg * gg + 4.0 * rr * s * s)) @ wv
    return out


def conjugate_sum(anchor, offset, weight, values, theta_t, values_t):
    """Principal-value conjugate (1/2pi) PV int cot((theta - t)/2) W(t) dt.

    Evaluated with singularity subtraction: the integrand is
    -cot(u/2) (W(t) - W(theta)), u = t - theta, which is bounded at u = 0
    when W is smooth there.
    """
    anchor = np.asarray(anchor, dtype=float)
    offset = np.asarray(offset, dtype=float)
    w = np.asarray(weight, dtype=float)
    v = np.asarray(values, dtype=float)
    theta_t = np.atleast_1d(np.asarray(theta_t, dtype=float))
    values_t = np.broadcast_to(np.asarray(values_t, dtype=float), theta_t.shape)
    out = np.empty(theta_t.shape, dtype=float)
    for sl in _targets_chunks(anchor.size, theta_t.size):
        u = (anchor[None, :] - theta_t[sl, None]) + offset[None, :]
        cot = 1.0 / np.tan(0.5 * u)
        out[sl] = -((cot * (v[None, :] - values_t[sl, None])) @ w)
    return out


def log_separation_products(points):
    """log prod_{k != n} |(l_k - l_n)/(1 - conj(l_k) l_n)| for every n."""
    p = np.asarray(points, dtype=complex)
    diff = p[None, :] - p[:, None]
    den = 1.0 - np.conj(p[None, :]) * p[:, None]
    rho = np.abs(diff) / np.abs(den)
    np.fill_diagonal(rho, 1.0)
    with np.errstate(divide="ignore"):
        return np.sum(np.log(rho), axis=1)


def schur_eval(nodes, gammas, tail, z):
    """Evaluate the Schur continued-fraction interpolant at points ``z``.

    f_N = tail, f_k = (g_k + b_k f_{k+1}) / (1 + conj(g_k) b_k f_{k+1}) with
    b_k(z) = (z - z_k)/(1 - conj(z_k) z), returned f_0.
    """
    z = np.asarray(z, dtype=complex)
    f = np.full(z.shape, complex(tail))
    for zk, gk in zip(nodes[::-1], gammas[::-1]):
        b = (z - zk) / (1.0 - np.conj(zk) * z)
        bf = b * f
        f = (gk + bf) / (1.0 + np.conj(gk) * bf)
    return f


def blaschke_eval(zeros, z):
    """prod_j (|a_j|/a_j) (a_j - z)/(1 - conj(a_j) z), with z for a_j = 0."""
    z = np.asarray(z, dtype=complex)
    out = np.ones(z.shape, dtype=complex)
    for a in zeros:
        a = complex(a)
        if a == 0:
            out = out * z
        else:
            out = out * (abs(a) / a) * (a - z) / (1.0 - a.conjugate() * z)
    return out


def log_power_sums(log_coeffs, log_nodes, powers):
    """log sum_n exp(log_coeffs[n] + N * log_nodes[n]) for each N, log-domain."""
    lc = np.asarray(log_coeffs, dtype=complex)
    ln = np.asarray(log_nodes, dtype=complex)
    powers = np.asarray(powers, dtype=float)
    out = np.empty(powers.shape, dtype=complex)
    for i, n in enumerate(powers):
        t = lc + n * ln
        if not np.any(np.isfinite(t.real)):
            out[i] = -np.inf
            continue
        m = np.max(t.real[np.isfinite(t.real)])
        s = np.sum(np.exp(t - m))
        out[i] = np.log(s) + m if s != 0 else -np.inf
    return out
