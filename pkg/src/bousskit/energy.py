"""Conserved energy E = E0 + E1 (regime b = d) and coercivity constants.

E0 is evaluated spectrally through Parseval (the dual pairings become plain
coefficient products), E1 on the dealiased grid where the degree-(p+2)
integrand is exact.  The per-mode coefficients Gamma_1, Gamma_2 diagonalize
E0 on the center space in the frame P = U#1 + U#2, M = U#1 - U#2; their
positivity is asserted per mode, and the coercivity constant M0 is the worst
ratio against the matching H-norm weights so that M0^{-1}|U|^2 <= E0 <=
M0|U|^2 holds exactly on the truncated center space.

Sign note: conservation of E0 under the linear flow forces the Gamma_2 cross
term to be -2 d omega Q (with that sign Gamma_1 = Gamma_2 identically, which
is exactly what makes E0 y-invariant on each rotating center pair).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import PhysGrid, make_grid
from .errors import CoercivityError, RegimeError
from .modes import ModeTable
from .params import Params
from .specspace import SpectralState, norm_H, project, random_state, to_sharp


@dataclass(frozen=True)
class EnergyReport:
    E0: float
    E1: float
    E: float
    b_equals_d: bool
    a_greater_d: bool


@dataclass(frozen=True)
class CoercivityReport:
    Gamma1: np.ndarray        # (nmax+1,), NaN at n=0
    Gamma2: np.ndarray
    L1L2: np.ndarray          # numerator quartic L1+L2 evaluated at lambda1
    thetas: np.ndarray        # (nmax+1, 4) coefficients theta_0..theta_3
    M0: float
    WP: np.ndarray            # H-norm weight facing Gamma1
    WM: np.ndarray            # H-norm weight facing Gamma2


def _quadratic_row(params: Params, coeffs: np.ndarray, n: int) -> float:
    """E0 contribution of mode n (counting both of +-n for n >= 1)."""
    a, c, d = params.a, params.c, params.d
    om = params.omega
    u1, u2, u3, u4, u5, u6 = coeffs
    n2 = float(n * n)
    val = (-abs(u1) ** 2 + abs(u2) ** 2 - c * n2 * abs(u1) ** 2
           + 2.0 * c * n2 * abs(u2) ** 2 + c * abs(u3) ** 2
           - abs(u5) ** 2 - a * n2 * abs(u5) ** 2 + a * abs(u6) ** 2)
    cross = (2.0 * om * (u1 * np.conj(u5)).real
             - 2.0 * d * om * ((1j * n * u2) * np.conj(u6)).real
             + 2.0 * d * om * n2 * (u1 * np.conj(u5)).real
             - 2.0 * c * (u4 * np.conj(u2)).real)
    mult = 1.0 if n == 0 else 2.0
    return mult * float(val + cross)


def energy_E0(state: SpectralState, params: Params) -> float:
    tot = 0.0
    for n in range(state.nmax + 1):
        tot += _quadratic_row(params, state.coeffs[n], n)
    return tot


def energy_E1(state: SpectralState, params: Params, grid: PhysGrid | None = None) -> float:
    p = params.p
    if grid is None:
        grid = make_grid(state.nmax, p)
    u1 = grid.to_phys(state.coeffs[:, 0])
    u2 = grid.to_phys(state.coeffs[:, 1])
    u5 = grid.to_phys(state.coeffs[:, 4])
    integrand = u5 * (p * u2 ** (p + 1) - u1 ** (p + 1))
    # (1/(pi (p+1))) * integral over [0, 2pi] = (2/(p+1)) * mean
    return float(2.0 / (p + 1) * integrand.mean())


def energy_E(state: SpectralState, params: Params,
             grid: PhysGrid | None = None) -> EnergyReport:
    if params.b != params.d:
        raise RegimeError("energy is conserved only for b = d", module="energy",
                          condition="b == d")
    e0 = energy_E0(state, params)
    e1 = energy_E1(state, params, grid)
    return EnergyReport(E0=e0, E1=e1, E=e0 + e1, b_equals_d=True,
                        a_greater_d=params.a > params.d)


def coercivity_gammas(params: Params, table: ModeTable) -> CoercivityReport:
    """Gamma_1, Gamma_2 > 0 per mode and the H-norm coercivity constant M0."""
    if params.b != params.d:
        raise RegimeError("coercivity needs b = d", module="energy")
    if not (params.a > params.d):
        raise RegimeError("coercivity needs a > d", module="energy")
    a, b, c, d = params.a, params.b, params.c, params.d
    al, om = params.alpha, params.omega
    nmax = table.nmax
    G1 = np.full(nmax + 1, np.nan)
    G2 = np.full(nmax + 1, np.nan)
    L12 = np.full(nmax + 1, np.nan)
    thetas = np.full((nmax + 1, 4), np.nan)
    WP = np.full(nmax + 1, np.nan)
    WM = np.full(nmax + 1, np.nan)
    ratio = 1.0  # the n = 0 block has E0 / |U|_H^2 = 1 exactly
    for n in range(1, nmax + 1):
        lam1 = float(table.lam[n, 0].real)
        th2 = -lam1
        n2 = float(n * n)
        K = c * al + n2
        Th = lam1 - K
        La = om * c * al * (b * lam1 - (b * n2 + 1.0))
        Q = La / Th
        g1 = (-n2 - c * n2 * n2 + c * lam1 * lam1
              - n2 * (1.0 + a * n2) * Q * Q + 2.0 * om * n2 * (1.0 + d * n2) * Q)
        g2 = th2 * (1.0 + n2 * (2.0 * c + a * Q * Q - 2.0 * d * om * Q) - 2.0 * c * lam1)
        # numerator quartic L1 + L2 in lam = beta^2 and its coefficients
        N2 = n2 * (1.0 + c * n2)
        pL = om * c * al * b
        qL = -om * c * al * (b * n2 + 1.0)
        r2 = 2.0 * om * n2 * (1.0 + d * n2)
        s2 = n2 * (1.0 + a * n2)
        t3 = -2.0 * c * K
        t2 = c * K * K - N2 + r2 * pL - s2 * pL * pL
        t1 = 2.0 * K * N2 + r2 * (qL - pL * K) - 2.0 * s2 * pL * qL
        t0 = -N2 * K * K - r2 * qL * K - s2 * qL * qL
        l12 = c * lam1 ** 4 + t3 * lam1 ** 3 + t2 * lam1 ** 2 + t1 * lam1 + t0
        if not (g1 > 0.0):
            raise CoercivityError(f"Gamma1({n}) = {g1:g} not positive",
                                  module="energy", n=n, condition="Gamma1 > 0")
        if not (g2 > 0.0):
            raise CoercivityError(f"Gamma2({n}) = {g2:g} not positive",
                                  module="energy", n=n, condition="Gamma2 > 0")
        wp = (1.0 + n2) * n2 + lam1 * lam1 + (1.0 + n2) * n2 * Q * Q
        wm = (1.0 + n2) * th2 + th2 ** 3 / (1.0 + n2) + n2 * th2 * Q * Q
        G1[n] = g1
        G2[n] = g2
        L12[n] = l12
        thetas[n] = (t0, t1, t2, t3)
        WP[n] = wp
        WM[n] = wm
        ratio = max(ratio, g1 / wp, wp / g1, g2 / wm, wm / g2)
    return CoercivityReport(Gamma1=G1, Gamma2=G2, L1L2=L12, thetas=thetas,
                            M0=ratio, WP=WP, WM=WM)


def e0_gamma_form(state: SpectralState, params: Params, table: ModeTable,
                  rep: CoercivityReport | None = None) -> float:
    """E0 of a center state evaluated through the Gamma coefficients."""
    if rep is None:
        rep = coercivity_gammas(params, table)
    sharp = to_sharp(state, table).coeffs
    tot = float(abs(sharp[0, 1]) ** 2)  # n = 0 block with Uhat_1(0) = 0
    for n in range(1, state.nmax + 1):
        pp = sharp[n, 0] + sharp[n, 1]
        mm = sharp[n, 0] - sharp[n, 1]
        tot += 2.0 * (rep.Gamma1[n] * abs(pp) ** 2 + rep.Gamma2[n] * abs(mm) ** 2)
    return tot


@dataclass(frozen=True)
class SmallnessConstants:
    C1: float       # measured |E1| <= C1 |U|_H^{p+2}
    delta1: float   # smallness radius with C0 - delta1^p C1 >= C0/2
    M1: float       # |E| ~ |U|^2 equivalence constant below delta1


def smallness_constants(params: Params, table: ModeTable, rep: CoercivityReport,
                        seed: int = 0, samples: int = 200) -> SmallnessConstants:
    """Measure the E1 Sobolev constant on center samples, derive delta1, M1."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x51AB]))
    grid = make_grid(table.nmax, params.p)
    c1 = 0.0
    for _ in range(samples):
        st = project(random_state(rng, table.nmax, scale=1.0, decay=1.5),
                     table, "center")
        h = norm_H(st)
        if h == 0.0:
            continue
        c1 = max(c1, abs(energy_E1(st, params, grid)) / h ** (params.p + 2))
    c1 *= 2.0  # margin on the sampled constant
    c0 = 1.0 / rep.M0
    delta1 = (c0 / (2.0 * c1)) ** (1.0 / params.p) if c1 > 0 else float("inf")
    m1 = max(2.0 / c0, rep.M0 + (c1 * delta1 ** params.p if np.isfinite(delta1) else 0.0))
    return SmallnessConstants(C1=c1, delta1=float(delta1), M1=float(m1))


def energy_trace_csv(ys, reports) -> str:
    """CSV trace: y, E0, E1, E, drift (relative to the first sample)."""
    lines = ["y,E0,E1,E,drift"]
    e_ref = reports[0].E if reports else 0.0
    scale = max(abs(e_ref), 1e-300)
    for y, rep in zip(ys, reports):
        drift = abs(rep.E - e_ref) / scale
        lines.append(f"{y!r},{rep.E0!r},{rep.E1!r},{rep.E!r},{drift!r}")
    return "\n".join(lines) + "\n"
