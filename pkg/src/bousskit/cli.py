"""Batch front door: regime | spectrum | symbol | evolve | verify.

Exit codes: 0 success, 1 usage errors, 2 regime/validation errors,
3 numerical-contract failures.  All outputs are deterministic for a fixed
config and seed (CSV floats are shortest-roundtrip reprs, JSON keys sorted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import (BoussError, DomainError, MeanValueError, RegimeError)
from .lpengine import LPConfig
from .manifold import BottomVelocity, evolve_y
from .modes import build_mode_table, spectral_gap
from .params import Params, load_params, regime_report
from .specspace import state_to_json
from .verify import run_verification

USAGE_ERROR, REGIME_ERROR, NUMERICAL_ERROR = 1, 2, 3

_VALIDATION_ERRORS = (RegimeError, DomainError, MeanValueError)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bousskit",
                                 description="Spectral toolkit for periodic "
                                             "travelling waves of the 2D "
                                             "abcd-Boussinesq system")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--params", required=True, help="JSON parameter file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
        p.add_argument("--nmax", type=int, default=None,
                       help="override the truncation from the parameter file")

    for name in ("regime", "spectrum", "symbol", "verify"):
        common(sub.add_parser(name))

    pe = sub.add_parser("evolve")
    common(pe)
    pe.add_argument("--y0", type=float, default=0.0)
    pe.add_argument("--y1", type=float, default=1.0)
    pe.add_argument("--dt", type=float, default=1e-3)
    pe.add_argument("--amp", type=float, default=1e-2,
                    help="amplitude of the mode-1 initial bottom velocity")
    pe.add_argument("--lp-iters", type=int, default=2, help="Picard depth K")
    pe.add_argument("--delta", type=float, default=0.5, help="cutoff radius")
    pe.add_argument("--store-every", type=int, default=10)
    pe.add_argument("--dump-y", type=float, action="append", default=[],
                    help="write a full-state JSON dump nearest to this y (repeatable)")
    return ap


def _load(args) -> Params:
    params = load_params(args.params)
    if args.nmax is not None:
        params = _override_nmax(params, args.nmax)
    return params


def _override_nmax(params: Params, nmax: int) -> Params:
    from .params import derive_params
    return derive_params(params.a, params.b, params.c, params.d, params.p,
                         params.omega, nmax)


def _write(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _cmd_regime(args) -> int:
    params = _load(args)
    rep = regime_report(params)
    rows = ["n,a0,a1,a2,D,a0_pos,a1_neg,a12_neg,D_sign"]
    for r in rep.rows:
        rows.append(f"{r.n},{r.a0!r},{r.a1!r},{r.a2!r},{r.D!r},"
                    f"{int(r.a0_pos)},{int(r.a1_neg)},{int(r.a12_neg)},{r.D_sign}")
    _write(os.path.join(args.out, "regime.csv"), "\n".join(rows) + "\n")
    payload = {
        "omega0_sq": rep.omega0_sq, "omega1_sq": rep.omega1_sq,
        "omega2_sq": rep.omega2_sq, "valid": rep.valid,
        "stability_regime": rep.stability_regime,
        "first_failure": rep.first_failure,
        "alpha": params.alpha, "gamma": params.gamma, "nmax": params.nmax,
    }
    _write(os.path.join(args.out, "regime.json"), _json_dump(payload))
    print(f"regime: valid={rep.valid} omega0^2={rep.omega0_sq!r} "
          f"omega1^2={rep.omega1_sq!r} omega2^2={rep.omega2_sq!r}")
    return 0


def _cmd_spectrum(args) -> int:
    params = _load(args)
    table = build_mode_table(params)
    eps = spectral_gap(table)
    header = ["n"]
    for k in (1, 2, 3):
        header += [f"lambda{k}_re", f"lambda{k}_im"]
    for m in range(1, 7):
        header += [f"beta{m}_re", f"beta{m}_im"]
    header += ["classification", "eps"]
    rows = [",".join(header)]
    for n in range(1, table.nmax + 1):
        cells = [str(n)]
        for k in range(3):
            lam = table.lam[n, k]
            cells += [repr(float(lam.real)), repr(float(lam.imag))]
        for m in range(6):
            b = table.beta[n, m]
            cells += [repr(float(b.real)), repr(float(b.imag))]
        cells.append("center/center/unstable/stable/unstable/stable")
        cells.append(repr(eps))
        rows.append(",".join(cells))
    _write(os.path.join(args.out, "spectrum.csv"), "\n".join(rows) + "\n")
    print(f"spectrum: {table.nmax} modes, eps={eps!r}")
    return 0


def _cmd_symbol(args) -> int:
    from .manifold import wave_symbol_sigma
    params = _load(args)
    table = build_mode_table(params)
    rows = ["n,sigma"]
    for n in range(1, table.nmax + 1):
        rows.append(f"{n},{wave_symbol_sigma(table, n)!r}")
    _write(os.path.join(args.out, "symbol.csv"), "\n".join(rows) + "\n")
    print(f"symbol: sigma(1) = {wave_symbol_sigma(table, 1)!r}")
    return 0


def _cmd_evolve(args) -> int:
    params = _load(args)
    table = build_mode_table(params)
    cfg = LPConfig(delta=args.delta, K=args.lp_iters, ymax=16.0, h=0.1,
                   tail_tol=1e-4, quad="exp4")
    w0 = BottomVelocity.zeros(table.nmax)
    b1 = table.beta[1, 0]
    w0.coeffs[1, 0] = 1j * args.amp
    w0.coeffs[1, 1] = b1 * args.amp
    traj = evolve_y(w0, (args.y0, args.y1), args.dt, cfg, params, table,
                    store_every=args.store_every)

    rows = ["y," + ",".join(f"abs_w1_{n},abs_w2_{n}" for n in range(table.nmax + 1))
            + ",E0,E1,E"]
    for i, y in enumerate(traj.ys):
        w = traj.ws[i].coeffs
        cells = [repr(float(y))]
        for n in range(table.nmax + 1):
            cells += [repr(float(abs(w[n, 0]))), repr(float(abs(w[n, 1])))]
        if traj.energies is not None and i < len(traj.energies):
            e = traj.energies[i]
            cells += [repr(e.E0), repr(e.E1), repr(e.E)]
        else:
            cells += ["nan", "nan", "nan"]
        rows.append(",".join(cells))
    _write(os.path.join(args.out, "trajectory.csv"), "\n".join(rows) + "\n")
    if traj.energies is not None:
        from .energy import energy_trace_csv
        _write(os.path.join(args.out, "energy.csv"),
               energy_trace_csv(traj.ys, traj.energies))

    for ydump in args.dump_y:
        idx = int(np.argmin(np.abs(traj.ys - ydump)))
        _write(os.path.join(args.out, f"state_y{traj.ys[idx]:.6f}.json"),
               state_to_json(traj.states[idx]) + "\n")
    print(f"evolve: {traj.meta['steps']} steps, drift={traj.drift!r}")
    return 0


def _cmd_verify(args) -> int:
    params = _load(args)
    report = run_verification(params, seed=args.seed)
    _write(os.path.join(args.out, "verify.json"), _json_dump(report))
    for name, chk in report["checks"].items():
        print(f"verify {name}: {'PASS' if chk['pass'] else 'FAIL'}")
    print(f"verify overall: {'PASS' if report['overall'] else 'FAIL'}")
    return 0 if report["overall"] else NUMERICAL_ERROR


_COMMANDS = {
    "regime": _cmd_regime,
    "spectrum": _cmd_spectrum,
    "symbol": _cmd_symbol,
    "evolve": _cmd_evolve,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return REGIME_ERROR
    except BoussError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
