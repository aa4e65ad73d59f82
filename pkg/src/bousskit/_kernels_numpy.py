"""Pure-numpy kernels: vectorized across modes and grid points.

Twin of :mod:`_kernels_numba`; both must produce the same numbers to roundoff.
The sweep batches the nonlinearity over every y node through dense DFT
matrices (BLAS); the scans are sequential recurrences and loop in Python,
which is the price of this backend.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def chi_bump(r: np.ndarray, delta: float) -> np.ndarray:
    """C^2 cutoff: 1 on [0, delta/2], 0 beyond delta, quintic step between."""
    t = (np.asarray(r, dtype=float) - 0.5 * delta) / (0.5 * delta)
    t = np.clip(t, 0.0, 1.0)
    return 1.0 - (10.0 * t ** 3 - 15.0 * t ** 4 + 6.0 * t ** 5)


def scan(g: np.ndarray, A: np.ndarray, Wl: np.ndarray, Wi: np.ndarray,
         Wr: np.ndarray, forward: bool) -> np.ndarray:
    """Linear recurrence over the y grid; g, output: (Ny, L) complex.

    forward:  u[0] = 0,    u[j+1] = A u[j]   + B[j]
    backward: u[-1] = 0,   u[j]   = A u[j+1] + B[j]
    with B[j] built from the interval-j stencil (order from W shape).
    """
    ny, L = g.shape
    order = Wl.shape[1]
    B = np.empty((ny - 1, L), dtype=np.complex128)
    if order == 2:
        B[:] = Wl[None, :, 0] * g[:-1] + Wl[None, :, 1] * g[1:]
    else:
        if ny < 5:
            raise ValueError("order-4 scan needs at least 5 grid nodes")
        B[1:-1] = (Wi[None, :, 0] * g[0:-3] + Wi[None, :, 1] * g[1:-2]
                   + Wi[None, :, 2] * g[2:-1] + Wi[None, :, 3] * g[3:])
        B[0] = Wl[:, 0] * g[0] + Wl[:, 1] * g[1] + Wl[:, 2] * g[2] + Wl[:, 3] * g[3]
        B[-1] = (Wr[:, 0] * g[-4] + Wr[:, 1] * g[-3]
                 + Wr[:, 2] * g[-2] + Wr[:, 3] * g[-1])
    u = np.zeros((ny, L), dtype=np.complex128)
    if forward:
        acc = u[0]
        for j in range(ny - 1):
            acc = A * acc + B[j]
            u[j + 1] = acc
    else:
        acc = u[-1]
        for j in range(ny - 2, -1, -1):
            acc = A * acc + B[j]
            u[j] = acc
    return u


def sweep(xi1: np.ndarray, xi2: np.ndarray, htraj: np.ndarray, pre) -> np.ndarray:
    """One Lyapunov-Perron integrand pass: returns hyperbolic sharp G along the grid.

    xi1, xi2: (Np,) center sharp coordinates; htraj: (Ny, 4, Np) current
    hyperbolic iterate; pre: engine precomputation bundle.  Output (Ny, 4, Np).
    """
    P1 = pre.P1
    ny = P1.shape[0]
    s0 = P1 * xi1[None, :]
    s1 = np.conj(P1) * xi2[None, :]

    U0 = (np.einsum("nc,tn->tcn", pre.Vc[:, :, 0], s0)
          + np.einsum("nc,tn->tcn", pre.Vc[:, :, 1], s1))     # (Ny, 6, Np)
    Uh = np.einsum("ncm,tmn->tcn", pre.Vh, htraj)

    if pre.chi_on:
        nrm = np.sqrt(np.einsum("nc,tcn->t", pre.sw2m, U0.real ** 2 + U0.imag ** 2))
        chi = chi_bump(nrm, pre.delta)
        Uin = chi[:, None, None] * U0 + Uh
    else:
        Uin = U0 + Uh

    f = (np.einsum("kn,tcn->tck", pre.Cc, Uin[:, pre.comps, :].real)
         - np.einsum("kn,tcn->tck", pre.Cs, Uin[:, pre.comps, :].imag))
    u1, u2, u3, u5, u6 = (f[:, i, :] for i in range(5))

    p = pre.p
    u1p = u1 ** p
    u2pm1 = u2 ** (p - 1) if p > 1 else 1.0
    q = np.empty((ny, 3, pre.Cc.shape[0]))
    q[:, 0] = u5 * u1p
    q[:, 1] = u6 * u2pm1 * u2 + p * u5 * u2pm1 * u3
    q[:, 2] = u1p * u1 + u2pm1 * u2 * u2

    qh = np.einsum("nk,tqk->tqn", pre.Fc, q) - 1j * np.einsum("nk,tqk->tqn", pre.Fs, q)
    i_n = 1j * pre.nvals
    G4 = pre.gamma * (i_n * qh[:, 0] + qh[:, 1]) + pre.c4 * i_n * qh[:, 2]
    G6 = pre.c6 * qh[:, 2]

    return (np.einsum("nl,tn->tln", pre.Zh46[:, :, 0], G4)
            + np.einsum("nl,tn->tln", pre.Zh46[:, :, 1], G6))
