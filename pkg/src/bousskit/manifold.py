"""Center-manifold map, restriction/prolongation, reduced equation, y-driver.

The bottom-velocity pair w = (u1, u2) parametrizes small global solutions:
w maps to center data xi through the initial-data fixed point, the manifold
map phi lifts xi to the full state U = xi + phi(xi), and w evolves by the
reduced nonlocal wave equation dw1/dy = dx w2, dw2/dy = S dx w1 + g(w).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .energy import EnergyReport, coercivity_gammas, energy_E, smallness_constants
from .errors import DomainError, MeanValueError, StabilityError, ZeroModeError
from .dynamics import make_grid, nonlinearity_G
from .lpengine import LPConfig, LPEngine
from .modes import ModeTable, apply_A
from .params import Params
from .specspace import SpectralState, norm_H
# re-exported for callers configuring the Lyapunov-Perron iteration
__all__ = [
    "BottomVelocity", "LPConfig", "Trajectory", "restrict_R12", "prolong_R12inv",
    "wave_symbol_sigma", "lp_manifold_phi", "solve_initdata_xi", "reduced_rhs",
    "evolve_y", "get_engine", "reconstruction_residual",
]


@dataclass
class BottomVelocity:
    """Fourier data of the pair w = (w1, w2), modes n = 0..nmax."""

    nmax: int
    coeffs: np.ndarray  # (nmax+1, 2) complex

    def __post_init__(self):
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.nmax + 1, 2):
            raise DomainError("w coefficients must be (nmax+1, 2)", module="manifold")

    @classmethod
    def zeros(cls, nmax: int) -> "BottomVelocity":
        return cls(nmax, np.zeros((nmax + 1, 2), dtype=np.complex128))

    @classmethod
    def single_mode(cls, nmax: int, n: int, amp1: complex = 0.0,
                    amp2: complex = 0.0) -> "BottomVelocity":
        w = cls.zeros(nmax)
        w.coeffs[n, 0] = amp1
        w.coeffs[n, 1] = amp2
        return w

    def copy(self) -> "BottomVelocity":
        return BottomVelocity(self.nmax, self.coeffs.copy())


@dataclass
class Trajectory:
    ys: np.ndarray
    ws: list[BottomVelocity]
    states: list[SpectralState]
    energies: list[EnergyReport] | None
    drift: float
    meta: dict = field(default_factory=dict)


_ENGINES: dict[tuple[int, LPConfig], LPEngine] = {}


def get_engine(params: Params, table: ModeTable, cfg: LPConfig) -> LPEngine:
    key = (id(table), cfg)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = LPEngine(params, table, cfg)
        _ENGINES[key] = eng
    return eng


def restrict_R12(state: SpectralState) -> BottomVelocity:
    """First-two-components restriction of any state."""
    return BottomVelocity(state.nmax, state.coeffs[:, 0:2].copy())


def prolong_R12inv(w: BottomVelocity, table: ModeTable) -> SpectralState:
    """The center state with the given first two components."""
    if w.nmax > table.nmax:
        raise DomainError("w truncation exceeds table", module="manifold")
    npk = w.nmax + 1
    scale = max(float(np.max(np.abs(w.coeffs))), 1e-300)
    if abs(w.coeffs[0, 0]) > 1e-13 * scale:
        raise MeanValueError("prolongation needs mean-zero w1", module="manifold",
                             condition="w1_hat(0) = 0")
    n = np.arange(npk, dtype=float)
    i_n = 1j * n
    b1 = table.beta[:npk, 0]
    xi = np.zeros((npk, 6), dtype=np.complex128)
    den = 2.0 * i_n[1:] * b1[1:]
    xi[1:, 0] = (b1[1:] * w.coeffs[1:, 0] + i_n[1:] * w.coeffs[1:, 1]) / den
    xi[1:, 1] = (b1[1:] * w.coeffs[1:, 0] - i_n[1:] * w.coeffs[1:, 1]) / den
    xi[0, 0] = 0.0
    xi[0, 1] = w.coeffs[0, 1]
    from .specspace import ModeCoords, from_sharp
    return from_sharp(ModeCoords(w.nmax, xi), table)


def wave_symbol_sigma(table: ModeTable, n: int) -> float:
    """sigma(n) = (beta1(n)/(i n))^2 = -lambda1(n)/n^2, real and positive."""
    if n == 0:
        raise ZeroModeError("sigma undefined at n = 0", module="manifold", n=0)
    if abs(n) > table.nmax:
        raise DomainError("mode outside table", module="manifold", n=n)
    lam1 = float(table.lam[abs(n), 0].real)
    return -lam1 / float(n * n)


def lp_manifold_phi(xi: SpectralState, table: ModeTable, cfg: LPConfig,
                    params: Params) -> SpectralState:
    """Truncated Lyapunov-Perron approximation of the manifold map at xi."""
    eng = get_engine(params, table, cfg)
    state, _ = eng.phi_state(xi)
    return state


def solve_initdata_xi(w: BottomVelocity, table: ModeTable,
                      cfg: LPConfig) -> SpectralState:
    """Unique center data xi with w = R(xi + phi(xi)), by contraction."""
    eng = get_engine(table.params, table, cfg)
    sol = eng.solve_xi_w(np.ascontiguousarray(w.coeffs.T))
    return eng.state_of_center_sharp(sol["xi"])


def reduced_rhs(w: BottomVelocity, table: ModeTable, cfg: LPConfig,
                params: Params) -> BottomVelocity:
    """d/dy (w1, w2) = (dx w2, S dx w1 + g(w1, w2)) as Fourier data."""
    eng = get_engine(params, table, cfg)
    dw, _ = eng.reduced_rhs_w(np.ascontiguousarray(w.coeffs.T))
    return BottomVelocity(w.nmax, dw.T)


def evolve_y(w0: BottomVelocity, yspan: tuple[float, float], dt: float,
             cfg: LPConfig, params: Params, table: ModeTable,
             store_every: int = 1) -> Trajectory:
    """Fixed-step RK4 on the reduced equation with full-state reconstruction.

    At every stored sample the state U = xi + phi(xi) is rebuilt, the energy
    is recorded (b = d), and the a-priori bound |U(y)|_H <= 2 C2 |xi(0)|_H is
    enforced.
    """
    if dt <= 0.0:
        raise DomainError("dt must be positive", module="manifold")
    eng = get_engine(params, table, cfg)
    y0, y1 = yspan
    nsteps = max(1, int(round((y1 - y0) / dt)))

    stability = params.stability_regime
    if stability:
        grid = make_grid(table.nmax, params.p)
        rep = coercivity_gammas(params, table)
        c2 = smallness_constants(params, table, rep).M1
    else:
        grid = None
        rep = None
        c2 = float("inf")

    w = np.ascontiguousarray(w0.coeffs.T)
    warm = None
    ys = [y0]
    ws = [BottomVelocity(w0.nmax, w.T.copy())]
    states: list[SpectralState] = []
    energies: list[EnergyReport] = [] if stability else None
    xi0_norm = None
    bound = None

    def rhs(wcur):
        nonlocal warm
        dw, info = eng.reduced_rhs_w(wcur, warm=warm)
        if "zeta" in info:
            warm = info["zeta"]
        return dw, info

    def record(info, y):
        nonlocal xi0_norm, bound
        U = eng.state_of_sharp(info["xi"], info["phi"])
        states.append(U)
        if xi0_norm is None:
            xi0_norm = norm_H(eng.state_of_center_sharp(info["xi"]))
            bound = 2.0 * c2 * xi0_norm
        if stability:
            energies.append(energy_E(U, params, grid))
            if norm_H(U) > bound:
                raise StabilityError(
                    f"|U({y:g})|_H = {norm_H(U):g} exceeds 2 C2 |xi(0)|_H = {bound:g}",
                    module="manifold", condition="stability bound")

    for j in range(nsteps):
        y = y0 + j * dt
        k1, info1 = rhs(w)
        if j % store_every == 0:
            if j > 0:
                ys.append(y)
                ws.append(BottomVelocity(w0.nmax, w.T.copy()))
            record(info1, y)
        k2, _ = rhs(w + 0.5 * dt * k1)
        k3, _ = rhs(w + 0.5 * dt * k2)
        k4, _ = rhs(w + dt * k3)
        w = w + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    yend = y0 + nsteps * dt
    ys.append(yend)
    ws.append(BottomVelocity(w0.nmax, w.T.copy()))
    _, info_end = rhs(w)
    record(info_end, yend)

    drift = 0.0
    if stability and energies:
        e0 = energies[0].E
        scale = max(abs(e0), 1e-300)
        drift = max(abs(rep_.E - e0) for rep_ in energies) / scale
    meta = {"dt": dt, "steps": nsteps, "method": "rk4", "K": cfg.K,
            "stability_bound": bound, "xi0_norm": xi0_norm,
            "store_every": store_every}
    return Trajectory(ys=np.array(ys), ws=ws, states=states, energies=energies,
                      drift=drift, meta=meta)


def reconstruction_residual(traj: Trajectory, params: Params,
                            table: ModeTable) -> float:
    """Sup H-norm of the discrete full-system residual dU/dy - (A U + G(U))
    over interior stored samples (uniform storage spacing assumed)."""
    states = traj.states
    if len(states) < 3:
        raise DomainError("need at least 3 stored samples", module="manifold")
    steps = np.diff(traj.ys)
    if np.max(np.abs(steps - steps[0])) > 1e-12 * abs(steps[0]):
        raise DomainError("stored samples are not uniformly spaced",
                          module="manifold")
    hstep = float(traj.ys[1] - traj.ys[0])
    grid = make_grid(table.nmax, params.p)
    worst = 0.0
    for j in range(1, len(states) - 1):
        dU = (states[j + 1].coeffs - states[j - 1].coeffs) / (2.0 * hstep)
        au = apply_A(states[j].coeffs, table)
        gu = nonlinearity_G(states[j], params, grid).coeffs
        worst = max(worst, norm_H(SpectralState(table.nmax, dU - au - gu)))
    return worst
