"""Lyapunov-Perron machinery: precomputed tables + backend kernels.

The manifold map phi is the K-th Picard iterate of the integral operator
built from the hyperbolic Green's function.  Because the zeroth-order center
flow S0 is a group, the iteration is run on whole trajectories over the
window [-ymax, ymax]: one sweep evaluates the (cutoff) nonlinearity along
the flowed state at every node and applies the mode-wise exponential
quadrature scans; phi(xi) is the converged hyperbolic trajectory at y = 0.

Everything shape-dependent (DFT matrices, phases, scan weights) is built once
per (params, table, config) and reused across all phi evaluations, which is
what makes the reduced-equation right-hand side affordable inside RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from ._backend import get_backend
from ._quad import QUAD_METHODS, scan_weights
from .errors import (ContractionError, DomainError, FixedPointError,
                     MeanValueError, NotCenterError, WindowError)
from .modes import ModeTable
from .params import Params
from .specspace import ModeCoords, SpectralState, from_sharp, s_weights, to_sharp


@dataclass(frozen=True)
class LPConfig:
    """Cutoff radius, Picard depth and window/quadrature knobs for phi."""

    delta: float = 0.5
    K: int = 2
    ymax: float = 16.0
    h: float = 0.1
    tail_tol: float = 1e-6
    fp_tol: float = 1e-8
    quad: str = "exp4"
    max_fp_iter: int = 60
    delta_prime: float | None = None
    lip_samples: int = 6

    def __post_init__(self):
        if not (self.delta > 0.0):
            raise DomainError("delta must be positive", module="manifold")
        if self.K < 0:
            raise DomainError("K must be >= 0", module="manifold")
        if not (self.h > 0.0 and self.ymax >= 5.0 * self.h):
            raise DomainError("need h > 0 and ymax >= 5 h", module="manifold")
        if self.quad not in QUAD_METHODS:
            raise DomainError(f"unknown quadrature {self.quad!r}", module="manifold")
        if not (self.fp_tol > 0.0 and self.tail_tol > 0.0):
            raise DomainError("tolerances must be positive", module="manifold")

    @property
    def dprime(self) -> float:
        return self.delta / 4.0 if self.delta_prime is None else self.delta_prime


class LPEngine:
    def __init__(self, params: Params, table: ModeTable, cfg: LPConfig,
                 backend=None):
        if table.params is not params and table.params != params:
            raise DomainError("table built for different params", module="manifold")
        self.params = params
        self.table = table
        self.cfg = cfg
        self.backend = backend if backend is not None else get_backend()
        N = table.nmax
        self.N = N
        self.Np = N + 1
        p = params.p

        # physical grid for dealiased products
        m = (p + 2) * N + 1
        if m % 2 == 0:
            m += 1
        self.m = m
        x = 2.0 * np.pi * np.arange(m) / m
        n = np.arange(self.Np, dtype=float)
        wsyn = np.where(n == 0, 1.0, 2.0)
        ang = np.outer(x, n)
        Cc = np.cos(ang) * wsyn[None, :]
        Cs = np.sin(ang) * wsyn[None, :]
        Fc = np.cos(ang).T / m
        Fs = np.sin(ang).T / m

        # window
        self.half = int(math.ceil(cfg.ymax / cfg.h - 1e-12))
        self.ys = np.arange(-self.half, self.half + 1) * cfg.h
        self.ny = 2 * self.half + 1
        self.j0 = self.half
        eps0 = table.decay_floor
        self.eps0 = eps0
        tail = math.exp(-eps0 * self.half * cfg.h)
        if tail > cfg.tail_tol:
            raise WindowError(
                f"LP window tail {tail:g} above tail_tol {cfg.tail_tol:g}",
                module="manifold", condition="e^(-eps0 ymax) <= tail_tol")
        self.tail_bound = tail

        beta = table.beta
        P1 = np.exp(np.outer(self.ys, beta[:, 0]))

        sw = s_weights(N)
        mult = np.where(np.arange(self.Np) == 0, 1.0, 2.0)
        self.mult = mult
        self.n2p1 = 1.0 + n * n

        self.pre = SimpleNamespace(
            P1=P1,
            Vc=np.ascontiguousarray(table.V[:, :, 0:2]),
            Vh=np.ascontiguousarray(table.V[:, :, 2:6]),
            Zh46=np.ascontiguousarray(table.Z[:, 2:6][:, :, (3, 5)]),
            Cc=Cc, Cs=Cs, Fc=Fc, Fs=Fs,
            sw2m=np.ascontiguousarray(sw * sw * mult[:, None]),
            chi_on=True,
            delta=float(cfg.delta),
            p=int(p),
            gamma=float(params.gamma),
            c4=float(params.alpha * params.d * params.omega / (p + 1)),
            c6=float(params.alpha * params.c / (p + 1)),
            nvals=n,
            comps=(0, 1, 2, 4, 5),
        )

        bu = np.concatenate([beta[:, 2], beta[:, 4]])
        bs = np.concatenate([beta[:, 3], beta[:, 5]])
        self._scan_u = scan_weights(bu, cfg.h, cfg.quad, forward=False)
        self._scan_s = scan_weights(bs, cfg.h, cfg.quad, forward=True)

        # w-plane helpers: v12(n) and its inverse blocks
        self.i_n = 1j * n
        self.beta1 = beta[:, 0].copy()
        lam1 = table.lam[:, 0].real
        self.sigma = np.zeros(self.Np)
        self.sigma[1:] = -lam1[1:] / (n[1:] ** 2)

        self._L_dprime: float | None = None
        self._delta3: float | None = None

    # ------------------------------------------------------------------
    # representation helpers
    # ------------------------------------------------------------------
    def xi_sharp_of(self, state: SpectralState, tol: float = 1e-9) -> np.ndarray:
        """Center sharp coordinates (2, Np) of a center-space state."""
        if state.nmax != self.N:
            raise DomainError("state truncation does not match engine", module="manifold")
        sharp = to_sharp(state, self.table).coeffs
        hyp = sharp[:, 2:6]
        scale2 = float(np.sum(self.mult[:, None] * np.abs(sharp) ** 2))
        bad2 = float(np.sum(self.mult[:, None] * np.abs(hyp) ** 2))
        if bad2 > (tol ** 2) * max(scale2, 1e-300):
            raise NotCenterError("state has hyperbolic content", module="manifold",
                                 condition="pi_1 xi = 0")
        return np.ascontiguousarray(sharp[:, 0:2].T)

    def state_of_center_sharp(self, xiS: np.ndarray) -> SpectralState:
        full = np.zeros((self.Np, 6), dtype=np.complex128)
        full[:, 0] = xiS[0]
        full[:, 1] = xiS[1]
        return from_sharp(ModeCoords(self.N, full), self.table)

    def state_of_hyp_sharp(self, phiS: np.ndarray) -> SpectralState:
        full = np.zeros((self.Np, 6), dtype=np.complex128)
        full[:, 2:6] = phiS.T
        return from_sharp(ModeCoords(self.N, full), self.table)

    def state_of_sharp(self, xiS: np.ndarray, phiS: np.ndarray) -> SpectralState:
        full = np.zeros((self.Np, 6), dtype=np.complex128)
        full[:, 0] = xiS[0]
        full[:, 1] = xiS[1]
        full[:, 2:6] = phiS.T
        return from_sharp(ModeCoords(self.N, full), self.table)

    # ------------------------------------------------------------------
    # Lyapunov-Perron iteration
    # ------------------------------------------------------------------
    def _traj_norm(self, traj: np.ndarray) -> float:
        """Sup over the window of the sharp-H norm of a hyperbolic trajectory."""
        w = self.mult * self.n2p1 ** 2
        per = np.sqrt(np.einsum("n,tln->t", w, np.abs(traj) ** 2))
        return float(per.max())

    def sweep_once(self, xiS: np.ndarray, htraj: np.ndarray) -> np.ndarray:
        integ = self.backend.sweep(np.ascontiguousarray(xiS[0]),
                                   np.ascontiguousarray(xiS[1]), htraj, self.pre)
        Au, Wul, Wui, Wur = self._scan_u
        As, Wsl, Wsi, Wsr = self._scan_s
        gu = np.ascontiguousarray(integ[:, (0, 2), :]).reshape(self.ny, -1)
        gs = np.ascontiguousarray(integ[:, (1, 3), :]).reshape(self.ny, -1)
        uu = self.backend.scan(gu, Au, Wul, Wui, Wur, False)
        us = self.backend.scan(gs, As, Wsl, Wsi, Wsr, True)
        out = np.empty_like(htraj)
        out[:, (0, 2), :] = uu.reshape(self.ny, 2, self.Np)
        out[:, (1, 3), :] = us.reshape(self.ny, 2, self.Np)
        return out

    def phi_sharp(self, xiS: np.ndarray):
        """K Picard sweeps from phi = 0; returns (phi (4, Np), info dict)."""
        htraj = np.zeros((self.ny, 4, self.Np), dtype=np.complex128)
        diffs: list[float] = []
        ratios: list[float] = []
        for _ in range(self.cfg.K):
            new = self.sweep_once(xiS, htraj)
            d = self._traj_norm(new - htraj)
            if diffs and diffs[-1] > 0.0 and d > 0.0:
                r = d / diffs[-1]
                ratios.append(r)
                if r >= 1.0 and d > 1e-14:
                    raise ContractionError(
                        f"Picard iterates expand (ratio {r:.3g}); delta too large",
                        module="manifold", condition="contraction ratio < 1")
            diffs.append(d)
            htraj = new
        phi = htraj[self.j0].copy()
        return phi, {"sup_diffs": diffs, "ratios": ratios}

    def phi_state(self, xi: SpectralState) -> tuple[SpectralState, dict]:
        phiS, info = self.phi_sharp(self.xi_sharp_of(xi))
        return self.state_of_hyp_sharp(phiS), info

    # ------------------------------------------------------------------
    # w-plane: restriction, prolongation, reduced equation
    # ------------------------------------------------------------------
    def wnorm(self, w: np.ndarray) -> float:
        return float(np.sqrt(np.sum(self.mult * self.n2p1
                                    * (np.abs(w[0]) ** 2 + np.abs(w[1]) ** 2))))

    def w_of_center_sharp(self, xiS: np.ndarray) -> np.ndarray:
        w = np.empty_like(xiS)
        w[0] = self.i_n * (xiS[0] + xiS[1])
        w[1] = self.beta1 * (xiS[0] - xiS[1])
        w[0, 0] = xiS[0, 0]
        w[1, 0] = xiS[1, 0]
        return w

    def center_sharp_of_w(self, w: np.ndarray, tol: float = 1e-13) -> np.ndarray:
        scale = max(float(np.max(np.abs(w))), 1e-300)
        if abs(w[0, 0]) > tol * scale:
            raise MeanValueError("prolongation needs mean-zero w1",
                                 module="manifold", condition="w1_hat(0) = 0")
        xi = np.empty_like(w)
        den = 2.0 * self.i_n[1:] * self.beta1[1:]
        xi[0, 1:] = (self.beta1[1:] * w[0, 1:] + self.i_n[1:] * w[1, 1:]) / den
        xi[1, 1:] = (self.beta1[1:] * w[0, 1:] - self.i_n[1:] * w[1, 1:]) / den
        xi[0, 0] = 0.0
        xi[1, 0] = w[1, 0]
        return xi

    def restrict_state(self, state: SpectralState) -> np.ndarray:
        return np.ascontiguousarray(state.coeffs[:, 0:2].T)

    def g_of_phi(self, phiS: np.ndarray) -> np.ndarray:
        """Third component of (I - R^-1 R) phi as Fourier data (Np,)."""
        Uphi = np.einsum("ncl,ln->nc", self.pre.Vh, phiS)
        g = Uphi[:, 2].copy()
        g[1:] -= self.sigma[1:] * self.i_n[1:] * Uphi[1:, 0]
        # n = 0: hyperbolic eigenvectors have zero first component, so the
        # center reconstruction from (Uphi1, Uphi2)(0) has zero u3 part.
        return g

    # ------------------------------------------------------------------
    # initial-data fixed point and reduced right-hand side
    # ------------------------------------------------------------------
    def rphi_of_zeta(self, zeta: np.ndarray):
        xiS = self.center_sharp_of_w(zeta)
        phiS, info = self.phi_sharp(xiS)
        Uphi = np.einsum("ncl,ln->nc", self.pre.Vh, phiS)
        rphi = np.ascontiguousarray(Uphi[:, 0:2].T)
        return rphi, xiS, phiS, info

    def solve_xi_w(self, w: np.ndarray, warm: np.ndarray | None = None,
                   need_residual: bool = False) -> dict:
        """Fixed point zeta = w - R phi(R^-1 zeta); returns xi, phi and diagnostics."""
        self.ensure_delta3()
        wn = self.wnorm(w)
        if wn >= self._delta3:
            raise FixedPointError(
                f"|w| = {wn:g} at or above delta3 = {self._delta3:g}",
                module="manifold", condition="|w| < delta3")
        if self.cfg.K == 0:
            xiS = self.center_sharp_of_w(w)
            phiS = np.zeros((4, self.Np), dtype=np.complex128)
            return {"xi": xiS, "phi": phiS, "zeta": w.copy(), "iterations": 0,
                    "contraction": 0.0, "residual": 0.0, "step": 0.0}
        zeta = w.copy() if warm is None else warm.copy()
        steps: list[float] = []
        contraction = 0.0
        xiS = phiS = None
        for it in range(1, self.cfg.max_fp_iter + 1):
            rphi, xiS, phiS, _ = self.rphi_of_zeta(zeta)
            zeta_new = w - rphi
            step = self.wnorm(zeta_new - zeta)
            zeta = zeta_new
            steps.append(step)
            if len(steps) >= 2 and steps[-2] > 0.0:
                contraction = steps[-1] / steps[-2]
                if contraction >= 1.0 and step > 1e-14:
                    raise FixedPointError(
                        f"no contraction (factor {contraction:.3g})",
                        module="manifold", condition="L < 1")
            lam = min(contraction if contraction > 0.0 else 0.5, 0.95)
            bound = step * lam / (1.0 - lam)
            if step <= 0.25 * self.cfg.fp_tol or bound <= self.cfg.fp_tol:
                break
        else:
            raise FixedPointError("iteration budget exhausted", module="manifold",
                                  condition=f"<= {self.cfg.max_fp_iter} iterations")
        xiS = self.center_sharp_of_w(zeta)
        residual = float("nan")
        if need_residual:
            phiS, _ = self.phi_sharp(xiS)
            Uphi = np.einsum("ncl,ln->nc", self.pre.Vh, phiS)
            rphi = np.ascontiguousarray(Uphi[:, 0:2].T)
            residual = self.wnorm(w - (zeta + rphi))
        return {"xi": xiS, "phi": phiS, "zeta": zeta, "iterations": len(steps),
                "contraction": contraction, "residual": residual,
                "step": steps[-1] if steps else 0.0}

    def measure_lipschitz(self, radius: float | None = None) -> float:
        """Empirical Lipschitz constant of zeta -> R phi(R^-1 zeta) on a ball."""
        r = self.cfg.dprime if radius is None else radius
        rng = np.random.default_rng(np.random.SeedSequence([0x11F, self.N]))
        L = 0.0
        for _ in range(self.cfg.lip_samples):
            za = self._random_w(rng, r)
            zb = self._random_w(rng, r)
            dz = self.wnorm(za - zb)
            if dz == 0.0:
                continue
            pa, _, _, _ = self.rphi_of_zeta(za)
            pb, _, _, _ = self.rphi_of_zeta(zb)
            L = max(L, self.wnorm(pa - pb) / dz)
        return 1.25 * L

    def ensure_delta3(self) -> float:
        if self._delta3 is None:
            if self.cfg.K == 0:
                self._L_dprime = 0.0
                self._delta3 = self.cfg.dprime
            else:
                L = self.measure_lipschitz()
                if L >= 1.0:
                    raise FixedPointError(
                        f"Lipschitz constant L(delta') = {L:.3g} >= 1; shrink delta",
                        module="manifold", condition="L(delta') < 1")
                self._L_dprime = L
                self._delta3 = self.cfg.dprime * (1.0 - L)
        return self._delta3

    @property
    def lipschitz(self) -> float:
        self.ensure_delta3()
        return self._L_dprime

    def _random_w(self, rng: np.random.Generator, radius: float) -> np.ndarray:
        w = rng.standard_normal((2, self.Np)) + 1j * rng.standard_normal((2, self.Np))
        w /= (1.0 + self.n2p1[None, :])
        w[:, 0] = w[:, 0].real
        w[0, 0] = 0.0
        return w * (radius / max(self.wnorm(w), 1e-300))

    def reduced_rhs_w(self, w: np.ndarray, warm: np.ndarray | None = None):
        """(dw/dy, info); linear part exact mode-wise, g from the manifold."""
        dw = np.empty_like(w)
        dw[0] = self.i_n * w[1]
        dw[1] = self.sigma * self.i_n * w[0]
        dw[0, 0] = 0.0
        dw[1, 0] = 0.0
        if self.cfg.K == 0:
            return dw, {"iterations": 0, "contraction": 0.0, "zeta": w,
                        "xi": self.center_sharp_of_w(w),
                        "phi": np.zeros((4, self.Np), dtype=np.complex128)}
        sol = self.solve_xi_w(w, warm=warm)
        dw[1] += self.g_of_phi(sol["phi"])
        return dw, sol
