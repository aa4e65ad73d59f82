"""Seeded invariant battery behind the `verify` subcommand.

Runs a compact version of every numerical contract the toolkit guarantees
and reports measured constants (spectral gap, coercivity M0, Green decay
constant, Lipschitz L(delta'), energy drift).  All randomness is drawn from
named streams derived from the user seed, so a repeated run with the same
seed produces a byte-identical report.
"""

from __future__ import annotations

import math
import zlib

import numpy as np

from . import __version__
from .cubicroots import cauchy_lower_bound, solve_cubic
from .dynamics import center_group_S0, make_grid, nonlinearity_G
from .energy import coercivity_gammas, e0_gamma_form, energy_E, energy_E0
from .hypgreen import YGrid, green_S, hyperbolic_solve_K1
from .lpengine import LPConfig
from .manifold import BottomVelocity, evolve_y, get_engine
from .modes import apply_A, build_mode_table, spectral_gap
from .params import Params, polynomial_coefficients, regime_report
from .specspace import (SpectralState, norm_H, norm_X, project, random_state,
                        to_sharp)


def _rng(name: str, seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode())]))


def _norms_pair(st: SpectralState, table) -> tuple[float, float]:
    from .specspace import norms
    n = norms(st, table)
    return n.normH, n.normH_sharp


def run_verification(params: Params, seed: int = 0,
                     cfg: LPConfig | None = None) -> dict:
    """Full invariant battery; returns a JSON-ready report dict."""
    table = build_mode_table(params)
    nmax = table.nmax
    if cfg is None:
        cfg = LPConfig(delta=0.5, K=2, ymax=16.0, h=0.1, tail_tol=1e-4, quad="exp4")
    checks: dict[str, dict] = {}

    def record(name: str, ok: bool, **vals):
        payload = {"pass": bool(ok)}
        for k, v in vals.items():
            payload[k] = float(v) if isinstance(v, (int, float, np.floating)) else v
        checks[name] = payload

    # --- regime -----------------------------------------------------------
    rep = regime_report(params)
    record("regime", rep.valid, omega0_sq=rep.omega0_sq, omega1_sq=rep.omega1_sq,
           omega2_sq=rep.omega2_sq, stability_regime=rep.stability_regime)

    # --- roots ------------------------------------------------------------
    vieta = 0.0
    cauchy_ok = True
    for n in range(1, nmax + 1):
        a0, a1, a2, *_ = polynomial_coefficients(params, n)
        r = solve_cubic(params, n)
        l1, l2, l3 = r.as_tuple()
        scale = max(1.0, abs(a0), abs(a1), abs(a2))
        vieta = max(vieta,
                    abs(l1 + l2 + l3 + a2) / scale,
                    abs(l1 * l2 + l1 * l3 + l2 * l3 - a1) / scale,
                    abs(l1 * l2 * l3 + a0) / scale)
        bound = cauchy_lower_bound(params, n)
        cauchy_ok &= all(abs(lam) >= bound for lam in (l1, l2, l3))
    record("cubic_vieta", vieta < 1e-10, max_residual=vieta)
    record("cauchy_bound", cauchy_ok)

    # --- eigenstructure ----------------------------------------------------
    zv = 0.0
    diag = 0.0
    for n in range(nmax + 1):
        zv = max(zv, float(np.max(np.abs(table.Z[n] @ table.V[n] - np.eye(6)))))
        D = table.Z[n] @ table.Ahat[n] @ table.V[n] - np.diag(table.beta[n])
        diag = max(diag, float(np.max(np.abs(D)) / (1.0 + np.max(np.abs(table.beta[n])))))
    record("biorthogonality", zv < 1e-9, max_defect=zv)
    record("diagonalization", diag < 1e-8, max_scaled_defect=diag)

    eps = spectral_gap(table)
    floor = min(cauchy_lower_bound(params, n) for n in range(1, nmax + 1)) / math.sqrt(2)
    record("spectral_gap", eps > 0.0 and eps >= floor, eps=eps, cauchy_floor=floor,
           decay_floor=table.decay_floor)

    sig1 = -float(table.lam[1, 0].real)
    record("symbol", all(-float(table.lam[n, 0].real) > 0 for n in range(1, nmax + 1)),
           sigma_1=sig1)

    # --- norm equivalence ----------------------------------------------------
    rng = _rng("normeq", seed)
    ratios = []
    for _ in range(200):
        st = random_state(rng, nmax)
        nn = _norms_pair(st, table)
        if nn[1] > 0:
            ratios.append(nn[0] / nn[1])
    Ceq = max(max(ratios), 1.0 / min(ratios))
    record("norm_equivalence", np.isfinite(Ceq), C=Ceq)

    # --- projections --------------------------------------------------------
    rng = _rng("projections", seed)
    proj_defect = 0.0
    for _ in range(100):
        st = random_state(rng, nmax)
        pc = project(st, table, "center")
        ph = project(st, table, "hyperbolic")
        pu = project(st, table, "unstable")
        ps = project(st, table, "stable")
        scale = max(norm_H(st), 1e-300)
        proj_defect = max(proj_defect,
                          norm_H(pc + ph - st) / scale,
                          norm_H(pu + ps - ph) / scale,
                          norm_H(project(pc, table, "center") - pc) / scale)
    record("projections", proj_defect < 1e-10, max_defect=proj_defect)

    # --- center group -------------------------------------------------------
    rng = _rng("s0", seed)
    st = project(random_state(rng, nmax), table, "center")
    ga = center_group_S0(center_group_S0(st, 0.4, table), 0.8, table)
    gb = center_group_S0(st, 1.2, table)
    s0_defect = norm_H(ga - gb) / max(norm_H(st), 1e-300)
    record("center_group", s0_defect < 1e-10, group_defect=s0_defect)

    # --- Green operator ------------------------------------------------------
    rng = _rng("green", seed)
    st = random_state(rng, nmax)
    eps0 = table.decay_floor
    C = max(norm_H(green_S(st, s * y, table)) * math.exp(eps0 * y)
            for y in np.linspace(0.02, 3.0, 60) for s in (1, -1)) / norm_H(st)
    sg = norm_H(green_S(green_S(st, 0.3, table), 0.5, table)
                - green_S(st, 0.8, table)) / max(norm_H(st), 1e-300)
    record("green_decay", np.isfinite(C) and C < 100.0 and sg < 1e-10,
           C=C, semigroup_defect=sg)

    # manufactured K1 solve; window wide enough that the edge boundary layer
    # (rate Re beta_4(1)) is below 1e-7 on the measured interior
    n0, m0 = (1, 3)
    beta = table.beta[n0, m0]
    margin = 16.0 / abs(beta.real)
    grid = YGrid(ymax=12.0 / eps0 + margin, h=0.05)

    def gfun(y):
        s = SpectralState.zeros(nmax)
        s.coeffs[n0] = table.V[n0][:, m0] * ((1j - beta) * np.exp(1j * y))
        return s

    res = hyperbolic_solve_K1(gfun, table, grid, quad="exp4", tail_tol=1.0)
    k1err = 0.0
    for y, stt in zip(res.ys, res.states):
        if abs(y) > grid.half * grid.h - margin:
            continue
        sharp = to_sharp(stt, table).coeffs
        diff = sharp.copy()
        diff[n0, m0] -= np.exp(1j * y)
        k1err = max(k1err, float(np.max(np.abs(diff))))
    record("k1_manufactured", k1err < 1e-6, recovery_error=k1err,
           tail_bound=res.tail_bound)

    # --- energy ---------------------------------------------------------------
    if params.stability_regime:
        crep = coercivity_gammas(params, table)
        rng = _rng("coercivity", seed)
        coer_ok = True
        worst = 1.0
        for _ in range(100):
            stc = project(random_state(rng, nmax), table, "center")
            stc.coeffs[0] = stc.coeffs[0].real
            stc.coeffs[0, 0] = 0.0
            h2 = norm_H(stc) ** 2
            if h2 == 0.0:
                continue
            e0 = energy_E0(stc, params)
            coer_ok &= (e0 >= h2 / crep.M0 * (1 - 1e-9)) and (e0 <= h2 * crep.M0 * (1 + 1e-9))
            worst = max(worst, e0 / h2, h2 / e0)
        gform = abs(e0_gamma_form(stc, params, table, crep) - e0) / max(abs(e0), 1e-300)
        record("energy_coercivity", coer_ok and gform < 1e-9, M0=crep.M0,
               worst_ratio=worst, gamma_form_defect=gform)
    else:
        record("energy_coercivity", True, skipped="b != d", M0=float("nan"))

    # conservation identity E'(U).(AU + G(U)) = 0
    rng = _rng("conservation", seed)
    grid_p = make_grid(nmax, params.p)
    cons = 0.0
    if params.stability_regime:
        for _ in range(5):
            stc = random_state(rng, nmax, scale=0.3, decay=1.5)
            flow = apply_A(stc.coeffs, table) + nonlinearity_G(stc, params, grid_p).coeffs
            hh = 1e-6

            def e_at(s):
                return energy_E(SpectralState(nmax, stc.coeffs + s * flow), params, grid_p).E

            d1 = abs(e_at(hh) - e_at(-hh)) / (2 * hh)
            scale = max(abs(energy_E(stc, params, grid_p).E), 1.0)
            cons = max(cons, d1 / scale)
        record("energy_conservation_identity", cons < 1e-6, fd_defect=cons)
    else:
        record("energy_conservation_identity", True, skipped="b != d")

    # --- structural estimate ----------------------------------------------------
    rng = _rng("fest", seed)
    K = 0.0
    for _ in range(100):
        u = random_state(rng, nmax, scale=0.5, decay=1.5)
        v = random_state(rng, nmax, scale=0.5, decay=1.5)
        den = (norm_H(u) ** params.p + norm_H(v) ** params.p) * norm_H(v)
        if den > 0:
            K = max(K, norm_X(nonlinearity_G(u + v, params, grid_p)
                              - nonlinearity_G(u, params, grid_p)) / den)
    record("gain_of_regularity", np.isfinite(K), K=K)

    # --- manifold -----------------------------------------------------------------
    eng = get_engine(params, table, cfg)
    xi0 = np.zeros((2, nmax + 1), dtype=complex)
    xi0[0, 1] = 1.0
    xi0 /= norm_H(eng.state_of_center_sharp(xi0))
    amps = np.logspace(-3, -1, 4)
    vals = []
    for s in amps:
        phiS, _ = eng.phi_sharp(xi0 * s)
        vals.append(norm_H(eng.state_of_hyp_sharp(phiS)))
    slope = float(np.polyfit(np.log(amps), np.log(vals), 1)[0])
    phi0, _ = eng.phi_sharp(xi0 * 0.0)
    record("manifold_tangency", slope >= params.p + 0.9 and np.max(np.abs(phi0)) == 0.0,
           slope=slope)

    w = np.zeros((2, nmax + 1), dtype=complex)
    w[0, 1] = 1e-2 * 1j
    w[1, 1] = 1e-2
    sol = eng.solve_xi_w(w, need_residual=True)
    record("initdata_fixed_point",
           sol["residual"] < cfg.fp_tol and sol["contraction"] < 0.5,
           residual=sol["residual"], contraction=sol["contraction"],
           L_dprime=eng.lipschitz, delta3=eng.ensure_delta3())

    if params.stability_regime:
        w0 = BottomVelocity.zeros(nmax)
        w0.coeffs[1, 0] = 1e-2 * 1j
        w0.coeffs[1, 1] = 1e-2
        traj = evolve_y(w0, (0.0, 0.1), 1e-3, cfg, params, table, store_every=10)
        bound = traj.meta["stability_bound"]
        ok = all(norm_H(s) <= bound for s in traj.states)
        record("reduced_dynamics", traj.drift < 1e-5 and ok, drift=traj.drift,
               stability_bound=bound)
    else:
        record("reduced_dynamics", True, skipped="b != d")

    overall = all(c["pass"] for c in checks.values())
    return {
        "version": __version__,
        "seed": seed,
        "params": {"a": params.a, "b": params.b, "c": params.c, "d": params.d,
                   "p": params.p, "omega": params.omega, "nmax": params.nmax},
        "lp_config": {"delta": cfg.delta, "K": cfg.K, "ymax": cfg.ymax,
                      "h": cfg.h, "quad": cfg.quad},
        "checks": checks,
        "overall": overall,
    }
