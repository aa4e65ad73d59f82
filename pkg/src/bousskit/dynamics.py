"""Pseudospectral nonlinearity and the center group S0(y).

Products are evaluated on a physical grid large enough that every polynomial
product of total degree p+2 is alias-free on the retained modes; derivatives
are applied spectrally.  The nonlinearity returns a state whose only nonzero
components are the 4th and 6th, which is the gain-of-regularity structure the
whole construction leans on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotCenterError, TruncationError
from .modes import CENTER, ModeTable
from .params import Params
from .specspace import ModeCoords, SpectralState, from_sharp, norm_H, to_sharp


@dataclass(frozen=True)
class PhysGrid:
    """Uniform grid x_j = 2 pi j / m with spectral transforms for nmax modes."""

    nmax: int
    m: int

    @property
    def x(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.m) / self.m

    def to_phys(self, coeffs: np.ndarray) -> np.ndarray:
        """Coefficients (..., nmax+1) of a real field -> samples (..., m)."""
        nb = self.m // 2 + 1
        buf = np.zeros(coeffs.shape[:-1] + (nb,), dtype=np.complex128)
        buf[..., : self.nmax + 1] = coeffs
        return np.fft.irfft(buf, n=self.m, axis=-1) * self.m

    def to_spec(self, values: np.ndarray) -> np.ndarray:
        """Samples (..., m) -> coefficients (..., nmax+1)."""
        return np.fft.rfft(values, axis=-1)[..., : self.nmax + 1] / self.m


def make_grid(nmax: int, p: int, min_m: int | None = None) -> PhysGrid:
    """Grid with m >= (p+2)*nmax + 1 so degree-(p+2) products are alias-free."""
    m = (p + 2) * nmax + 1
    if min_m is not None:
        m = max(m, min_m)
    if m % 2 == 0:
        m += 1
    return PhysGrid(nmax=nmax, m=m)


def nonlinearity_G(state: SpectralState, params: Params,
                   grid: PhysGrid | None = None) -> SpectralState:
    """G(U) with components (0,0,0,G4,0,G6) evaluated pseudospectrally."""
    p = params.p
    if grid is None:
        grid = make_grid(state.nmax, p)
    if grid.nmax != state.nmax:
        raise TruncationError("grid truncation does not match state",
                              module="dynamics")
    if grid.m < (p + 2) * state.nmax + 1:
        raise TruncationError(
            f"grid m={grid.m} below dealiasing requirement {(p + 2) * state.nmax + 1}",
            module="dynamics", condition="m >= (p+2) nmax + 1")

    u1 = grid.to_phys(state.coeffs[:, 0])
    u2 = grid.to_phys(state.coeffs[:, 1])
    u3 = grid.to_phys(state.coeffs[:, 2])
    u5 = grid.to_phys(state.coeffs[:, 4])
    u6 = grid.to_phys(state.coeffs[:, 5])

    u1p = u1 ** p
    u2pm1 = u2 ** (p - 1) if p > 1 else np.ones_like(u2)
    q1 = u5 * u1p
    q2 = u6 * u2pm1 * u2 + p * u5 * u2pm1 * u3
    q3 = u1p * u1 + u2pm1 * u2 * u2

    q1h = grid.to_spec(q1)
    q2h = grid.to_spec(q2)
    q3h = grid.to_spec(q3)

    ga = params.gamma
    c4 = params.alpha * params.d * params.omega / (p + 1)
    c6 = params.alpha * params.c / (p + 1)
    i_n = 1j * np.arange(state.nmax + 1, dtype=float)

    out = np.zeros_like(state.coeffs)
    out[:, 3] = ga * (i_n * q1h + q2h) + c4 * i_n * q3h
    out[:, 5] = c6 * q3h
    return SpectralState(state.nmax, out)


def center_group_S0(xi: SpectralState, y: float, table: ModeTable,
                    tol: float = 1e-9) -> SpectralState:
    """Flow of the center group: sharp coordinates m=1,2 pick up e^{beta y}."""
    sharp = to_sharp(xi, table)
    hyp = sharp.coeffs.copy()
    hyp[:, list(CENTER)] = 0.0
    hyp_norm = norm_H(from_sharp(ModeCoords(xi.nmax, hyp), table))
    full_norm = norm_H(xi)
    if hyp_norm > tol * max(full_norm, 1e-300):
        raise NotCenterError(
            f"hyperbolic content {hyp_norm:g} exceeds {tol:g} of |xi|_H = {full_norm:g}",
            module="dynamics", condition="pi_1 xi = 0")
    out = sharp.coeffs.copy()
    bc = table.beta[: xi.nmax + 1, list(CENTER)]
    out[:, list(CENTER)] = sharp.coeffs[:, list(CENTER)] * np.exp(bc * y)
    return from_sharp(ModeCoords(xi.nmax, out), table)
