"""Green's-function operator S(y) and the bounded hyperbolic solver K1.

S(y) damps the unstable family for y < 0 and the stable family for y > 0;
K1 realizes the bounded solution of du/dy = A1 u + g as the mode-wise
one-sided convolutions, truncated to a finite window whose tail error is
e^{-(eps0 - rho) ymax} with eps0 the hyperbolic decay floor (including the
n = 0 modes, which decay slowest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._backend import get_backend
from ._quad import QUAD_METHODS, scan_weights
from .errors import DomainError, NotHyperbolicError, WindowError, ZeroYError
from .modes import CENTER, STABLE, UNSTABLE, ModeTable, apply_A
from .specspace import ModeCoords, SpectralState, from_sharp, norm_H, to_sharp


@dataclass(frozen=True)
class YGrid:
    """Uniform window [-ymax, ymax] with step h and weight exponent rho."""

    ymax: float
    h: float
    rho: float = 0.0

    def __post_init__(self):
        if not (self.h > 0.0 and self.ymax >= self.h):
            raise DomainError("need h > 0 and ymax >= h", module="hypgreen")
        if self.rho < 0.0:
            raise DomainError("rho must be nonnegative", module="hypgreen")

    @property
    def half(self) -> int:
        return int(math.ceil(self.ymax / self.h - 1e-12))

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(-self.half, self.half + 1) * self.h

    @property
    def ny(self) -> int:
        return 2 * self.half + 1


def green_S(state: SpectralState, y: float, table: ModeTable,
            side: str | None = None) -> SpectralState:
    """Apply S(y); at y = 0 a one-sided limit must be requested via side."""
    sharp = to_sharp(state, table).coeffs
    out = np.zeros_like(sharp)
    beta = table.beta[: state.nmax + 1]
    if y == 0.0:
        if side == "plus":
            out[:, list(STABLE)] = sharp[:, list(STABLE)]
        elif side == "minus":
            out[:, list(UNSTABLE)] = -sharp[:, list(UNSTABLE)]
        else:
            raise ZeroYError("S(0) undefined; pass side='plus' or side='minus'",
                             module="hypgreen")
    elif y > 0.0:
        out[:, list(STABLE)] = sharp[:, list(STABLE)] * np.exp(beta[:, list(STABLE)] * y)
    else:
        out[:, list(UNSTABLE)] = -sharp[:, list(UNSTABLE)] * np.exp(beta[:, list(UNSTABLE)] * y)
    return from_sharp(ModeCoords(state.nmax, out), table)


@dataclass
class K1Result:
    ys: np.ndarray
    states: list[SpectralState]
    residual_sup: float
    tail_bound: float
    quad: str
    op_norm_est: float = float("nan")  # sup_y |U(y)|_H / sup_y |g(y)|_H


def _gather_sharp(gs: Sequence[SpectralState], table: ModeTable,
                  tol: float = 1e-9) -> np.ndarray:
    nmax = gs[0].nmax
    ny = len(gs)
    out = np.empty((ny, 4, nmax + 1), dtype=np.complex128)
    for j, st in enumerate(gs):
        sharp = to_sharp(st, table).coeffs
        cstate = sharp.copy()
        cstate[:, 2:] = 0.0
        cnorm = norm_H(from_sharp(ModeCoords(nmax, cstate), table))
        gnorm = norm_H(st)
        if cnorm > tol * max(gnorm, 1e-300):
            raise NotHyperbolicError(
                f"g(y_{j}) has center content {cnorm:g} (|g|_H = {gnorm:g})",
                module="hypgreen", condition="pi_0 g = 0")
        out[j] = sharp[:, 2:6].T
    return out


def k1_scan_sharp(gsh: np.ndarray, table: ModeTable, grid: YGrid,
                  quad: str = "exp", backend=None) -> np.ndarray:
    """Mode-wise K1 on hyperbolic sharp lanes (Ny, 4, nmax+1)."""
    if backend is None:
        backend = get_backend()
    npk = gsh.shape[2]
    beta = table.beta[:npk]
    bu = np.concatenate([beta[:, 2], beta[:, 4]])   # unstable lanes m=3,5
    bs = np.concatenate([beta[:, 3], beta[:, 5]])   # stable lanes m=4,6
    Au, Wul, Wui, Wur = scan_weights(bu, grid.h, quad, forward=False)
    As, Wsl, Wsi, Wsr = scan_weights(bs, grid.h, quad, forward=True)
    ny = gsh.shape[0]
    gu = gsh[:, (0, 2), :].reshape(ny, -1)
    gs_ = gsh[:, (1, 3), :].reshape(ny, -1)
    uu = backend.scan(gu, Au, Wul, Wui, Wur, False)
    us = backend.scan(gs_, As, Wsl, Wsi, Wsr, True)
    out = np.empty_like(gsh)
    out[:, (0, 2), :] = uu.reshape(ny, 2, npk)
    out[:, (1, 3), :] = us.reshape(ny, 2, npk)
    return out


def hyperbolic_solve_K1(g: Callable[[float], SpectralState] | Sequence[SpectralState],
                        table: ModeTable, grid: YGrid, quad: str = "exp",
                        tail_tol: float = 1e-8, backend=None) -> K1Result:
    """Solve du/dy = A1 u + g on the window by exact-exponential quadrature.

    g is a callable y -> SpectralState or a sequence of states on the nodes;
    it must be hyperbolic (center content below 1e-9 relative per node).
    """
    if quad not in QUAD_METHODS:
        raise DomainError(f"unknown quadrature {quad!r}", module="hypgreen")
    eps0 = table.decay_floor
    if grid.rho >= eps0:
        raise DomainError(f"rho = {grid.rho:g} must be below the decay floor {eps0:g}",
                          module="hypgreen", condition="rho < eps")
    ys = grid.nodes
    tail = math.exp(-(eps0 - grid.rho) * grid.half * grid.h)
    if tail > tail_tol:
        raise WindowError(
            f"window tail e^(-(eps-rho) ymax) = {tail:g} exceeds {tail_tol:g}",
            module="hypgreen", condition="increase ymax or tail_tol")

    states_in = [g(float(y)) for y in ys] if callable(g) else list(g)
    if len(states_in) != grid.ny:
        raise DomainError("g sample count does not match grid", module="hypgreen")
    gsh = _gather_sharp(states_in, table)
    ush = k1_scan_sharp(gsh, table, grid, quad, backend)

    nmax = states_in[0].nmax
    states = []
    full = np.zeros((grid.ny, nmax + 1, 6), dtype=np.complex128)
    full[:, :, 2:6] = np.transpose(ush, (0, 2, 1))
    for j in range(grid.ny):
        states.append(from_sharp(ModeCoords(nmax, full[j]), table))

    # residual of the ODE via interior central differences, weighted by e^{-rho|y|}
    resid = 0.0
    for j in range(1, grid.ny - 1):
        dU = (states[j + 1].coeffs - states[j - 1].coeffs) / (2.0 * grid.h)
        rhs = apply_A(states[j].coeffs, table) + states_in[j].coeffs
        rstate = SpectralState(nmax, dU - rhs)
        resid = max(resid, math.exp(-grid.rho * abs(ys[j])) * norm_H(rstate))
    g_sup = max((norm_H(s) for s in states_in), default=0.0)
    u_sup = max((norm_H(s) for s in states), default=0.0)
    op_norm = u_sup / g_sup if g_sup > 0.0 else float("nan")
    return K1Result(ys=ys, states=states, residual_sup=resid, tail_bound=tail,
                    quad=quad, op_norm_est=op_norm)
