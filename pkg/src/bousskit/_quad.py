"""Exponential quadrature weights for the Green's-function scans.

On a uniform grid the one-sided convolutions behind K1 become linear
recurrences with exactly integrable interval terms:

  stable  (Re beta < 0):  u[j+1] = e^{beta h} u[j] + int_0^h e^{beta(h-s)} g(tau_j+s) ds
  unstable(Re beta > 0):  u[j]   = e^{-beta h} u[j+1] - int_0^h e^{-beta s} g(tau_j+s) ds

Interpolating g on each interval by a polynomial through nearby nodes makes
the interval integral closed-form via the moment integrals

  forward : int_0^1 t^k e^{z(1-t)} dt = k! phi_{k+1}(z),   z = beta h
  backward: int_0^1 t^k e^{w t}   dt = mu_k(w),            w = -beta h

with phi_k(z) = sum_j z^j/(j+k)! and mu_k by downward recursion.  Both have
Re(argument) <= 0 on their lanes, so nothing overflows.  Methods: "trapezoid"
(reference), "exp" = piecewise-linear interpolation (order 2), "exp4" =
piecewise-cubic on 4-point stencils (order 4).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

QUAD_METHODS = ("trapezoid", "exp", "exp4")


def _factorial(k: int) -> float:
    r = 1.0
    for i in range(2, k + 1):
        r *= i
    return r


def phi_funcs(z: np.ndarray, kmax: int) -> list[np.ndarray]:
    """phi_1..phi_kmax elementwise, series for |z| < 0.5, recursion otherwise."""
    z = np.asarray(z, dtype=np.complex128)
    small = np.abs(z) < 0.5
    zsafe = np.where(small, 1.0, z)
    out = []
    prev = np.exp(z)  # phi_0
    for k in range(1, kmax + 1):
        closed = (prev - 1.0 / _factorial(k - 1)) / zsafe
        ser = np.zeros_like(z)
        term = np.full_like(z, 1.0 / _factorial(k))
        ser += term
        for j in range(1, 26):
            term = term * z / (j + k)
            ser += term
        cur = np.where(small, ser, closed)
        out.append(cur)
        prev = cur
    return out


def mu_funcs(w: np.ndarray, kmax: int) -> list[np.ndarray]:
    """mu_0..mu_{kmax-1} with mu_k(w) = int_0^1 t^k e^{wt} dt, Re w <= 0."""
    w = np.asarray(w, dtype=np.complex128)
    small = np.abs(w) < 0.5
    wsafe = np.where(small, 1.0, w)
    ew = np.exp(w)
    out = []
    prev = None
    for k in range(kmax):
        if k == 0:
            closed = (ew - 1.0) / wsafe
        else:
            closed = (ew - k * prev) / wsafe
        # series: mu_k(w) = sum_j w^j / (j! (k+j+1))
        ser = np.zeros_like(w)
        term = np.full_like(w, 1.0)
        for j in range(0, 26):
            if j > 0:
                term = term * w / j
            ser += term / (k + j + 1.0)
        cur = np.where(small, ser, closed)
        out.append(cur)
        prev = cur
    return out


def _stencil_matrix(offsets: np.ndarray) -> np.ndarray:
    """T with polynomial coefficients c_k = sum_s T[k, s] g(offset_s)."""
    k = len(offsets)
    return np.linalg.inv(np.vander(offsets, k, increasing=True))


def _weights(ints: list[np.ndarray], offsets: np.ndarray) -> np.ndarray:
    T = _stencil_matrix(offsets)
    L = ints[0].shape[0]
    order = len(offsets)
    W = np.zeros((L, order), dtype=np.complex128)
    for s in range(order):
        for k in range(order):
            if T[k, s] != 0.0:
                W[:, s] += T[k, s] * ints[k]
    return W


def scan_weights(beta: np.ndarray, h: float, method: str, forward: bool):
    """(A, W_left, W_int, W_right) for one scan direction.

    The scan is u[j+1] = A u[j] + sum_s W[s] g[stencil_s] (forward) or
    u[j] = A u[j+1] + sum_s W[s] g[stencil_s] (backward); the Green's-function
    signs are folded into W.  Stencil nodes per interval [tau_j, tau_{j+1}]:
    interior (j-1, j, j+1, j+2), shifted one-sided at the two edges (order 4);
    just (j, j+1) for order 2 and trapezoid.
    """
    if method not in QUAD_METHODS:
        raise DomainError(f"unknown quadrature {method!r}", module="hypgreen")
    beta = np.asarray(beta, dtype=np.complex128)
    if forward:
        z = beta * h
    else:
        z = -beta * h
    A = np.exp(z)

    if method == "trapezoid":
        ones = np.ones_like(A)
        if forward:
            W = 0.5 * h * np.stack([A, ones], axis=1)
        else:
            W = -0.5 * h * np.stack([ones, A], axis=1)
        return A, W, W, W

    order = 2 if method == "exp" else 4
    if forward:
        phis = phi_funcs(z, order)
        ints = [_factorial(k) * h ** (k + 1) * phis[k] for k in range(order)]
        sign = 1.0
    else:
        mus = mu_funcs(z, order)
        ints = [h ** (k + 1) * mus[k] for k in range(order)]
        sign = -1.0

    if order == 2:
        W = sign * _weights(ints, np.array([0.0, h]))
        return A, W, W, W
    Wl = sign * _weights(ints, np.array([0.0, h, 2 * h, 3 * h]))
    Wi = sign * _weights(ints, np.array([-h, 0.0, h, 2 * h]))
    Wr = sign * _weights(ints, np.array([-2 * h, -h, 0.0, h]))
    return A, Wl, Wi, Wr


def stencil_indices(order: int, ny: int):
    """Start index of each interval's stencil, per interval j = 0..ny-2."""
    if order == 2:
        return np.arange(ny - 1)
    starts = np.clip(np.arange(ny - 1) - 1, 0, ny - 4)
    return starts
