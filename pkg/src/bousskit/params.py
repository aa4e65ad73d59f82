"""Model parameters, derived constants, and regime validation.

The travelling-wave system is parametrized by the four positive model
coefficients a, b, c, d, the nonlinearity power p, the wave speed omega and
the Fourier truncation nmax.  The derived constants are fixed by the
normalizations gamma*c = 1 and a*c*alpha = 1.

Validation is eager: every mode 1..nmax must satisfy a0(n) > 0, a1(n) < 0,
a1(n)+a2(n) < 0 and a2(n)^2 - 3 a1(n) > 0, and omega^2 must clear all three
threshold speeds.  The truncated range is the computational universe, so we
check each mode instead of relying on large-n asymptotics.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError, RegimeError


@dataclass(frozen=True)
class Params:
    """Validated model parameters.  Build through :func:`derive_params`."""

    a: float
    b: float
    c: float
    d: float
    p: int
    omega: float
    alpha: float
    gamma: float
    nmax: int

    @property
    def stability_regime(self) -> bool:
        """b = d and a > d: the regime with a conserved coercive energy."""
        return self.b == self.d and self.a > self.d


@dataclass(frozen=True)
class RegimeRow:
    n: int
    a0: float
    a1: float
    a2: float
    D: float
    a0_pos: bool
    a1_neg: bool
    a12_neg: bool
    D_sign: int


@dataclass(frozen=True)
class RegimeReport:
    rows: tuple[RegimeRow, ...]
    omega0_sq: float
    omega1_sq: float
    omega2_sq: float
    valid: bool
    stability_regime: bool
    first_failure: str = ""

    def row(self, n: int) -> RegimeRow:
        return self.rows[abs(n)]


def thresholds(a: float, b: float, c: float, d: float) -> tuple[float, float, float]:
    """The three squared threshold speeds omega_0^2, omega_1^2, omega_2^2."""
    w0 = max(1.0, c / d, (a * c) / (b * d), a / b)
    w1 = 2.0 * (a + c) / (b * b * d * d)
    w2 = 2.0 * (a + c) / (b + d)
    return w0, w1, w2


def polynomial_coefficients(params: Params, n: int):
    """Coefficients (a0, a1, a2) of the mode-n cubic plus Cardano parts (Q, R, D)."""
    if abs(n) > params.nmax:
        raise DomainError("wavenumber outside truncation", module="params", n=n,
                          condition=f"|n| <= {params.nmax}")
    return _coefficients_raw(params, n)


def _coefficients_raw(params: Params, n: int):
    al, ga, b, c, d = params.alpha, params.gamma, params.b, params.c, params.d
    w2 = params.omega * params.omega
    n2 = float(n) * float(n)
    abdw = al * b * d * w2
    a2 = (abdw - 3.0) * n2 - (c * al + ga)
    a1 = (3.0 - 2.0 * abdw) * n2 * n2 + (2.0 * (c * al + ga) - al * w2 * (b + d)) * n2 + al
    a0 = n2 * ((abdw - 1.0) * n2 * n2
               + (al * (d * w2 - c) + ga * (b * c * al * w2 - 1.0)) * n2
               + al * (w2 - 1.0))
    Q = (3.0 * a1 - a2 * a2) / 9.0
    R = (9.0 * a1 * a2 - 27.0 * a0 - 2.0 * a2 ** 3) / 54.0
    D = Q ** 3 + R ** 2
    return a0, a1, a2, Q, R, D


def derive_params(a: float, b: float, c: float, d: float, p: int, omega: float,
                  nmax: int) -> Params:
    """Validate raw inputs and return a fully derived parameter set.

    Raises DomainError on malformed inputs and RegimeError when the wave
    speed or any per-mode sign condition fails, naming the first offender.
    """
    for name, val in (("a", a), ("b", b), ("c", c), ("d", d)):
        if not (val > 0.0):
            raise DomainError(f"coefficient {name} must be positive, got {val}",
                              module="params", condition=f"{name} > 0")
    if not (isinstance(p, int) and p >= 1):
        raise DomainError(f"nonlinearity power p must be a positive integer, got {p!r}",
                          module="params", condition="p >= 1")
    if not (isinstance(nmax, int) and nmax >= 1):
        raise DomainError(f"truncation nmax must be a positive integer, got {nmax!r}",
                          module="params", condition="nmax >= 1")
    try:
        omega = float(omega)
    except (TypeError, ValueError):
        raise DomainError("omega must be a real number", module="params") from None
    if not math.isfinite(omega):
        raise DomainError("omega must be finite", module="params")

    w0, w1, w2 = thresholds(a, b, c, d)
    wsq = omega * omega
    need = max(w0, w1, w2)
    if wsq < need:
        raise RegimeError(
            f"omega^2 = {wsq:g} below required max(omega0^2, omega1^2, omega2^2) = {need:g} "
            f"(omega0^2={w0:g}, omega1^2={w1:g}, omega2^2={w2:g})",
            module="params", condition="omega^2 >= max(thresholds)")

    params = Params(a=float(a), b=float(b), c=float(c), d=float(d), p=int(p),
                    omega=float(omega), alpha=1.0 / (a * c), gamma=1.0 / c,
                    nmax=int(nmax))

    for n in range(1, nmax + 1):
        a0, a1, a2, _, _, _ = _coefficients_raw(params, n)
        if not (a0 > 0.0):
            raise RegimeError(f"a0({n}) = {a0:g} not positive", module="params",
                              n=n, condition="a0(n) > 0")
        if not (a1 < 0.0):
            raise RegimeError(f"a1({n}) = {a1:g} not negative", module="params",
                              n=n, condition="a1(n) < 0")
        if not (a1 + a2 < 0.0):
            raise RegimeError(f"a1({n})+a2({n}) = {a1 + a2:g} not negative",
                              module="params", n=n, condition="a1(n)+a2(n) < 0")
        if not (a2 * a2 - 3.0 * a1 > 0.0):
            raise RegimeError(f"a2^2-3a1 at n={n} not positive", module="params",
                              n=n, condition="a2(n)^2 - 3 a1(n) > 0")
    return params


def regime_report(params: Params) -> RegimeReport:
    """Tabulate coefficients, discriminants and sign flags for 0 <= n <= nmax."""
    w0, w1, w2 = thresholds(params.a, params.b, params.c, params.d)
    rows = []
    valid = True
    first_failure = ""
    for n in range(0, params.nmax + 1):
        a0, a1, a2, _, _, D = _coefficients_raw(params, n)
        a0_pos = a0 > 0.0
        a1_neg = a1 < 0.0
        a12_neg = a1 + a2 < 0.0
        row = RegimeRow(n=n, a0=a0, a1=a1, a2=a2, D=D, a0_pos=a0_pos,
                        a1_neg=a1_neg, a12_neg=a12_neg,
                        D_sign=(0 if D == 0.0 else (1 if D > 0.0 else -1)))
        rows.append(row)
        if n >= 1 and valid and not (a0_pos and a1_neg and a12_neg):
            valid = False
            bad = "a0>0" if not a0_pos else ("a1<0" if not a1_neg else "a1+a2<0")
            first_failure = f"n={n}: {bad}"
    return RegimeReport(rows=tuple(rows), omega0_sq=w0, omega1_sq=w1, omega2_sq=w2,
                        valid=valid, stability_regime=params.stability_regime,
                        first_failure=first_failure)


_PARAM_KEYS = {"a", "b", "c", "d", "p", "omega", "nmax"}


def load_params(path: str) -> Params:
    """Read a JSON parameter file with keys a, b, c, d, p, omega, nmax."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise DomainError("parameter file must contain a JSON object", module="params")
    unknown = sorted(set(raw) - _PARAM_KEYS)
    if unknown:
        raise DomainError(f"unknown parameter keys: {', '.join(unknown)}", module="params")
    missing = sorted(_PARAM_KEYS - set(raw))
    if missing:
        raise DomainError(f"missing parameter keys: {', '.join(missing)}", module="params")
    return derive_params(a=float(raw["a"]), b=float(raw["b"]), c=float(raw["c"]),
                         d=float(raw["d"]), p=int(raw["p"]), omega=float(raw["omega"]),
                         nmax=int(raw["nmax"]))
