"""Numba kernels: fused per-node loops for the hot Lyapunov-Perron sweep.

Import of this module requires numba; the backend selector falls back to the
numpy twin when numba is unavailable or BOUSS_BACKEND=numpy is set.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

NAME = "numba"


@njit(cache=True, inline="always")
def _chi_scalar(r, delta):
    t = (r - 0.5 * delta) / (0.5 * delta)
    if t <= 0.0:
        return 1.0
    if t >= 1.0:
        return 0.0
    return 1.0 - (10.0 * t ** 3 - 15.0 * t ** 4 + 6.0 * t ** 5)


def chi_bump(r, delta: float):
    return _chi_bump_arr(np.atleast_1d(np.asarray(r, dtype=float)), delta)


@njit(cache=True)
def _chi_bump_arr(r, delta):
    out = np.empty_like(r)
    for i in range(r.shape[0]):
        out[i] = _chi_scalar(r[i], delta)
    return out


@njit(cache=True)
def scan(g, A, Wl, Wi, Wr, forward):
    """Same contract as the numpy twin: g (Ny, L) -> u (Ny, L)."""
    ny, L = g.shape
    order = Wl.shape[1]
    u = np.zeros((ny, L), dtype=np.complex128)
    B = np.empty((ny - 1, L), dtype=np.complex128)
    for j in range(ny - 1):
        if order == 2:
            for l in range(L):
                B[j, l] = Wl[l, 0] * g[j, l] + Wl[l, 1] * g[j + 1, l]
        else:
            if j == 0:
                for l in range(L):
                    B[j, l] = (Wl[l, 0] * g[0, l] + Wl[l, 1] * g[1, l]
                               + Wl[l, 2] * g[2, l] + Wl[l, 3] * g[3, l])
            elif j == ny - 2:
                for l in range(L):
                    B[j, l] = (Wr[l, 0] * g[ny - 4, l] + Wr[l, 1] * g[ny - 3, l]
                               + Wr[l, 2] * g[ny - 2, l] + Wr[l, 3] * g[ny - 1, l])
            else:
                for l in range(L):
                    B[j, l] = (Wi[l, 0] * g[j - 1, l] + Wi[l, 1] * g[j, l]
                               + Wi[l, 2] * g[j + 1, l] + Wi[l, 3] * g[j + 2, l])
    if forward:
        for j in range(ny - 1):
            for l in range(L):
                u[j + 1, l] = A[l] * u[j, l] + B[j, l]
    else:
        for j in range(ny - 2, -1, -1):
            for l in range(L):
                u[j, l] = A[l] * u[j + 1, l] + B[j, l]
    return u


@njit(cache=True, parallel=True)
def _sweep_impl(xi1, xi2, htraj, P1, Vc, Vh, Zh46, Cc, Cs, Fc, Fs, sw2m,
                chi_on, delta, p, gamma_, c4, c6, nvals, out):
    ny = P1.shape[0]
    npk = P1.shape[1]
    m = Cc.shape[0]
    for t in prange(ny):
        U0 = np.empty((6, npk), dtype=np.complex128)
        Uin = np.empty((6, npk), dtype=np.complex128)
        for n in range(npk):
            s0 = P1[t, n] * xi1[n]
            s1 = np.conj(P1[t, n]) * xi2[n]
            for comp in range(6):
                U0[comp, n] = Vc[n, comp, 0] * s0 + Vc[n, comp, 1] * s1
                acc = Vh[n, comp, 0] * htraj[t, 0, n]
                acc += Vh[n, comp, 1] * htraj[t, 1, n]
                acc += Vh[n, comp, 2] * htraj[t, 2, n]
                acc += Vh[n, comp, 3] * htraj[t, 3, n]
                Uin[comp, n] = acc
        if chi_on:
            nrm2 = 0.0
            for n in range(npk):
                for comp in range(6):
                    zr = U0[comp, n].real
                    zi = U0[comp, n].imag
                    nrm2 += sw2m[n, comp] * (zr * zr + zi * zi)
            chi = _chi_scalar(np.sqrt(nrm2), delta)
        else:
            chi = 1.0
        for n in range(npk):
            for comp in range(6):
                Uin[comp, n] = chi * U0[comp, n] + Uin[comp, n]

        fre = np.empty((5, m))
        comps = (0, 1, 2, 4, 5)
        for ci in range(5):
            comp = comps[ci]
            for k in range(m):
                acc = 0.0
                for n in range(npk):
                    acc += Cc[k, n] * Uin[comp, n].real - Cs[k, n] * Uin[comp, n].imag
                fre[ci, k] = acc

        q = np.empty((3, m))
        for k in range(m):
            u1 = fre[0, k]
            u2 = fre[1, k]
            u3 = fre[2, k]
            u5 = fre[3, k]
            u6 = fre[4, k]
            u1p = u1 ** p
            if p > 1:
                u2pm1 = u2 ** (p - 1)
            else:
                u2pm1 = 1.0
            q[0, k] = u5 * u1p
            q[1, k] = u6 * u2pm1 * u2 + p * u5 * u2pm1 * u3
            q[2, k] = u1p * u1 + u2pm1 * u2 * u2

        for n in range(npk):
            q1r = 0.0
            q1i = 0.0
            q2r = 0.0
            q2i = 0.0
            q3r = 0.0
            q3i = 0.0
            for k in range(m):
                q1r += Fc[n, k] * q[0, k]
                q1i -= Fs[n, k] * q[0, k]
                q2r += Fc[n, k] * q[1, k]
                q2i -= Fs[n, k] * q[1, k]
                q3r += Fc[n, k] * q[2, k]
                q3i -= Fs[n, k] * q[2, k]
            q1 = complex(q1r, q1i)
            q2 = complex(q2r, q2i)
            q3 = complex(q3r, q3i)
            i_n = 1j * nvals[n]
            G4 = gamma_ * (i_n * q1 + q2) + c4 * i_n * q3
            G6 = c6 * q3
            for l in range(4):
                out[t, l, n] = Zh46[n, l, 0] * G4 + Zh46[n, l, 1] * G6
    return out


def sweep(xi1, xi2, htraj, pre):
    out = np.empty_like(htraj)
    _sweep_impl(xi1, xi2, htraj, pre.P1, pre.Vc, pre.Vh, pre.Zh46, pre.Cc,
                pre.Cs, pre.Fc, pre.Fs, pre.sw2m, pre.chi_on, pre.delta,
                pre.p, pre.gamma, pre.c4, pre.c6, pre.nvals, out)
    return out
