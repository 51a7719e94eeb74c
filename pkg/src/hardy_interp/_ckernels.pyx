# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_kernels_py``; same signatures."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, log, exp, atan2, INFINITY, isfinite

cnp.import_array()


def herglotz_sum(anchor, offset, weight, values, theta_z, r, gap):
    cdef const double[::1] a = np.ascontiguousarray(anchor, dtype=np.float64)
    cdef const double[::1] o = np.ascontiguousarray(offset, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weight, dtype=np.float64)
    cdef const double complex[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    tz_arr = np.ascontiguousarray(np.atleast_1d(theta_z), dtype=np.float64)
    cdef const double[::1] tz = tz_arr
    cdef const double[::1] rr = np.ascontiguousarray(np.broadcast_to(r, tz_arr.shape), dtype=np.float64)
    cdef const double[::1] gg = np.ascontiguousarray(np.broadcast_to(gap, tz_arr.shape), dtype=np.float64)
    out = np.empty(tz_arr.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t n = a.shape[0], k, i
    cdef double u, s, c, den, g, rk, acc_re, acc_im, kre, kim
    for k in range(tz.shape[0]):
        g = gg[k]
        rk = rr[k]
        acc_re = 0.0
        acc_im = 0.0
        for i in range(n):
            u = (a[i] - tz[k]) + o[i]
            s = sin(0.5 * u)
            c = cos(0.5 * u)
            den = g * g + 4.0 * rk * s * s
            kre = w[i] * g * (1.0 + rk) / den
            kim = -w[i] * 4.0 * rk * s * c / den
            acc_re += kre * v[i].real - kim * v[i].imag
            acc_im += kre * v[i].imag + kim * v[i].real
        res[k] = acc_re + 1j * acc_im
    return out


def poisson_sum(anchor, offset, weight, values, theta_z, r, gap):
    cdef const double[::1] a = np.ascontiguousarray(anchor, dtype=np.float64)
    cdef const double[::1] o = np.ascontiguousarray(offset, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weight, dtype=np.float64)
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    tz_arr = np.ascontiguousarray(np.atleast_1d(theta_z), dtype=np.float64)
    cdef const double[::1] tz = tz_arr
    cdef const double[::1] rr = np.ascontiguousarray(np.broadcast_to(r, tz_arr.shape), dtype=np.float64)
    cdef const double[::1] gg = np.ascontiguousarray(np.broadcast_to(gap, tz_arr.shape), dtype=np.float64)
    out = np.empty(tz_arr.shape[0], dtype=np.float64)
    cdef double[::1] res = out
    cdef Py_ssize_t n = a.shape[0], k, i
    cdef double u, s, g, rk, acc
    for k in range(tz.shape[0]):
        g = gg[k]
        rk = rr[k]
        acc = 0.0
        for i in range(n):
            u = (a[i] - tz[k]) + o[i]
            s = sin(0.5 * u)
            acc += w[i] * v[i] * g * (1.0 + rk) / (g * g + 4.0 * rk * s * s)
        res[k] = acc
    return out


def conjugate_sum(anchor, offset, weight, values, theta_t, values_t):
    cdef const double[::1] a = np.ascontiguousarray(anchor, dtype=np.float64)
    cdef const double[::1] o = np.ascontiguousarray(offset, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weight, dtype=np.float64)
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    tt_arr = np.ascontiguousarray(np.atleast_1d(theta_t), dtype=np.float64)
    cdef const double[::1] tt = tt_arr
    cdef const double[::1] vt = np.ascontiguousarray(np.broadcast_to(values_t, tt_arr.shape), dtype=np.float64)
    out = np.empty(tt_arr.shape[0], dtype=np.float64)
    cdef double[::1] res = out
    cdef Py_ssize_t n = a.shape[0], k, i
    cdef double u, acc
    for k in range(tt.shape[0]):
        acc = 0.0
        for i in range(n):
            u = (a[i] - tt[k]) + o[i]
            acc -= w[i] * (v[i] - vt[k]) * cos(0.5 * u) / sin(0.5 * u)
        res[k] = acc
    return out


def log_separation_products(points):
    cdef const double complex[::1] p = np.ascontiguousarray(points, dtype=np.complex128)
    cdef Py_ssize_t n = p.shape[0], i, k
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] res = out
    cdef double complex d, den
    cdef double acc, rho
    for i in range(n):
        acc = 0.0
        for k in range(n):
            if k == i:
                continue
            d = p[k] - p[i]
            den = 1.0 - p[k].conjugate() * p[i]
            rho = abs(d) / abs(den)
            if rho == 0.0:
                acc = -INFINITY
                break
            acc += log(rho)
        res[i] = acc
    return out


def schur_eval(nodes, gammas, tail, z):
    z_arr = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(z_arr.ravel())
    cdef const double complex[::1] zz = flat
    cdef const double complex[::1] nd = np.ascontiguousarray(nodes, dtype=np.complex128)
    cdef const double complex[::1] gm = np.ascontiguousarray(gammas, dtype=np.complex128)
    cdef double complex t = complex(tail)
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t m = zz.shape[0], n = nd.shape[0], j, k
    cdef double fr, fi, zr, zi, ar, ai, gr, gi, nr, ni, dr, di, br, bi, pr, pi_, d2
    for j in range(m):
        fr = t.real
        fi = t.imag
        zr = zz[j].real
        zi = zz[j].imag
        for k in range(n - 1, -1, -1):
            ar = nd[k].real
            ai = nd[k].imag
            # b = (z - a) / (1 - conj(a) z)
            nr = zr - ar
            ni = zi - ai
            dr = 1.0 - (ar * zr + ai * zi)
            di = -(ar * zi - ai * zr)
            d2 = 1.0 / (dr * dr + di * di)
            br = (nr * dr + ni * di) * d2
            bi = (ni * dr - nr * di) * d2
            pr = br * fr - bi * fi
            pi_ = br * fi + bi * fr
            # f = (g + bf) / (1 + conj(g) bf)
            gr = gm[k].real
            gi = gm[k].imag
            nr = gr + pr
            ni = gi + pi_
            dr = 1.0 + gr * pr + gi * pi_
            di = gr * pi_ - gi * pr
            d2 = 1.0 / (dr * dr + di * di)
            fr = (nr * dr + ni * di) * d2
            fi = (ni * dr - nr * di) * d2
        res[j] = fr + 1j * fi
    return out.reshape(z_arr.shape)


def blaschke_eval(zeros, z):
    z_arr = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(z_arr.ravel())
    cdef const double complex[::1] zz = flat
    cdef const double complex[::1] zs = np.ascontiguousarray(np.asarray(list(zeros), dtype=np.complex128))
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t m = zz.shape[0], n = zs.shape[0], j, k
    cdef double accr, acci, zr, zi, ar, ai, ur, ui, nr, ni, dr, di, d2, qr, qi, tr
    # unimodular factors |a| / a, and 0 marking a zero at the origin
    mod = np.abs(np.asarray(zs))
    unit = np.where(mod == 0.0, 0.0, mod / np.where(mod == 0.0, 1.0, np.asarray(zs)))
    cdef const double complex[::1] un = np.ascontiguousarray(unit, dtype=np.complex128)
    for j in range(m):
        accr = 1.0
        acci = 0.0
        zr = zz[j].real
        zi = zz[j].imag
        for k in range(n):
            ar = zs[k].real
            ai = zs[k].imag
            if ar == 0.0 and ai == 0.0:
                qr = zr
                qi = zi
            else:
                # (|a| / a) (a - z) / (1 - conj(a) z)
                ur = un[k].real
                ui = un[k].imag
                nr = ar - zr
                ni = ai - zi
                dr = 1.0 - (ar * zr + ai * zi)
                di = -(ar * zi - ai * zr)
                d2 = 1.0 / (dr * dr + di * di)
                tr = (nr * dr + ni * di) * d2
                qi = (ni * dr - nr * di) * d2
                qr = ur * tr - ui * qi
                qi = ur * qi + ui * tr
            tr = accr * qr - acci * qi
            acci = accr * qi + acci * qr
            accr = tr
        res[j] = accr + 1j * acci
    return out.reshape(z_arr.shape)


def log_power_sums(log_coeffs, log_nodes, powers):
    cdef const double complex[::1] lc = np.ascontiguousarray(log_coeffs, dtype=np.complex128)
    cdef const double complex[::1] ln = np.ascontiguousarray(log_nodes, dtype=np.complex128)
    p_arr = np.ascontiguousarray(np.atleast_1d(powers), dtype=np.float64)
    cdef const double[::1] pw = p_arr
    out = np.empty(p_arr.shape[0], dtype=np.complex128)
    cdef double complex[::1] res = out
    cdef Py_ssize_t n = lc.shape[0], i, k
    cdef double m, tr, ti, sr, si, e
    cdef bint any_finite
    for i in range(pw.shape[0]):
        any_finite = False
        m = -INFINITY
        for k in range(n):
            tr = lc[k].real + pw[i] * ln[k].real
            if isfinite(tr):
                any_finite = True
                if tr > m:
                    m = tr
        if not any_finite:
            res[i] = -INFINITY
            continue
        sr = 0.0
        si = 0.0
        for k in range(n):
            tr = lc[k].real + pw[i] * ln[k].real
            if not isfinite(tr):
                continue
            ti = lc[k].imag + pw[i] * ln[k].imag
            e = exp(tr - m)
            sr += e * cos(ti)
            si += e * sin(ti)
        if sr == 0.0 and si == 0.0:
            res[i] = -INFINITY
        else:
            res[i] = (0.5 * log(sr * sr + si * si) + m) + 1j * atan2(si, sr)
    return out
