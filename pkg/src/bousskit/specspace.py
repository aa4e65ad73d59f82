"""Truncated Fourier state space: norms, biorthogonal coordinates, projections.

States store modes n = 0..nmax only; the n < 0 half is implied by the reality
convention Uhat(-n) = conj(Uhat(n)).  All mode sums are accumulated in fixed
ascending-n order with multiplicity 2 for n >= 1, which reproduces the
two-sided sums exactly and keeps results independent of any internal
parallelism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .errors import DomainError
from .modes import CENTER, HYPERBOLIC, STABLE, UNSTABLE, ModeTable


@dataclass
class SpectralState:
    """Fourier representation of U = (u1..u6): coeffs[n, comp], n = 0..nmax."""

    nmax: int
    coeffs: np.ndarray  # (nmax+1, 6) complex128

    def __post_init__(self):
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.nmax + 1, 6):
            raise DomainError(
                f"coefficient array must be ({self.nmax + 1}, 6), got {self.coeffs.shape}",
                module="specspace")

    @classmethod
    def zeros(cls, nmax: int) -> "SpectralState":
        return cls(nmax, np.zeros((nmax + 1, 6), dtype=np.complex128))

    def copy(self) -> "SpectralState":
        return SpectralState(self.nmax, self.coeffs.copy())

    def __add__(self, other: "SpectralState") -> "SpectralState":
        return SpectralState(self.nmax, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralState") -> "SpectralState":
        return SpectralState(self.nmax, self.coeffs - other.coeffs)

    def __mul__(self, s: float) -> "SpectralState":
        return SpectralState(self.nmax, self.coeffs * s)

    __rmul__ = __mul__


@dataclass
class ModeCoords:
    """Biorthogonal coordinates U#(n) = Z(n) Uhat(n), n = 0..nmax."""

    nmax: int
    coeffs: np.ndarray  # (nmax+1, 6) complex128


class Norms(NamedTuple):
    normH: float
    normX: float
    normH_sharp: float
    normX_sharp: float


def s_weights(nmax: int) -> np.ndarray:
    """Diagonal component weights of the H-norm symbol S(n), shape (nmax+1, 6)."""
    n = np.arange(nmax + 1, dtype=float)
    r = np.sqrt(1.0 + n * n)
    return np.stack([r, r, np.ones_like(r), 1.0 / r, r, np.ones_like(r)], axis=1)


def _mult(nmax: int) -> np.ndarray:
    m = np.full(nmax + 1, 2.0)
    m[0] = 1.0
    return m


def norms(state: SpectralState, table: ModeTable) -> Norms:
    """H/X norms and their sharp-coordinate counterparts."""
    sw = s_weights(state.nmax)
    mult = _mult(state.nmax)
    n2p1 = 1.0 + np.arange(state.nmax + 1, dtype=float) ** 2
    wrow = np.sum(np.abs(sw * state.coeffs) ** 2, axis=1)
    h2 = float(np.sum(mult * wrow))
    x2 = float(np.sum(mult * n2p1 * wrow))
    sharp = to_sharp(state, table).coeffs
    srow = np.sum(np.abs(sharp) ** 2, axis=1)
    hs2 = float(np.sum(mult * n2p1 ** 2 * srow))
    xs2 = float(np.sum(mult * n2p1 ** 3 * srow))
    return Norms(np.sqrt(h2), np.sqrt(x2), np.sqrt(hs2), np.sqrt(xs2))


def norm_H(state: SpectralState) -> float:
    sw = s_weights(state.nmax)
    mult = _mult(state.nmax)
    return float(np.sqrt(np.sum(mult * np.sum(np.abs(sw * state.coeffs) ** 2, axis=1))))


def norm_X(state: SpectralState) -> float:
    sw = s_weights(state.nmax)
    mult = _mult(state.nmax)
    n2p1 = 1.0 + np.arange(state.nmax + 1, dtype=float) ** 2
    return float(np.sqrt(np.sum(mult * n2p1 * np.sum(np.abs(sw * state.coeffs) ** 2, axis=1))))


def to_sharp(state: SpectralState, table: ModeTable) -> ModeCoords:
    _check_nmax(state.nmax, table)
    out = np.einsum("nij,nj->ni", table.Z[: state.nmax + 1], state.coeffs)
    return ModeCoords(state.nmax, out)


def from_sharp(coords: ModeCoords, table: ModeTable) -> SpectralState:
    _check_nmax(coords.nmax, table)
    out = np.einsum("nij,nj->ni", table.V[: coords.nmax + 1], coords.coeffs)
    return SpectralState(coords.nmax, out)


def mode_transform(obj, table: ModeTable,
                   direction: Literal["to_sharp", "from_sharp"]):
    if direction == "to_sharp":
        return to_sharp(obj, table)
    if direction == "from_sharp":
        return from_sharp(obj, table)
    raise DomainError(f"unknown direction {direction!r}", module="specspace")


_WHICH = {
    "center": CENTER,
    "hyperbolic": HYPERBOLIC,
    "unstable": UNSTABLE,
    "stable": STABLE,
}


def project(state: SpectralState, table: ModeTable,
            which: Literal["center", "hyperbolic", "unstable", "stable"]) -> SpectralState:
    """Spectral projection onto the requested family of mode indices."""
    if which not in _WHICH:
        raise DomainError(f"unknown projection {which!r}", module="specspace")
    sharp = to_sharp(state, table)
    keep = np.zeros(6, dtype=bool)
    keep[list(_WHICH[which])] = True
    masked = np.where(keep[None, :], sharp.coeffs, 0.0)
    return from_sharp(ModeCoords(state.nmax, masked), table)


def _check_nmax(nmax: int, table: ModeTable) -> None:
    if nmax > table.nmax:
        raise DomainError(f"state nmax {nmax} exceeds table nmax {table.nmax}",
                          module="specspace")


def random_state(rng: np.random.Generator, nmax: int, *, scale: float = 1.0,
                 mean_zero_u1: bool = True, decay: float = 1.0) -> SpectralState:
    """Seeded random real state; mode amplitudes fall off like (1+n^2)^(-decay)."""
    n = np.arange(nmax + 1, dtype=float)
    amp = scale / (1.0 + n * n) ** decay
    z = rng.standard_normal((nmax + 1, 6)) + 1j * rng.standard_normal((nmax + 1, 6))
    z *= amp[:, None]
    z[0] = z[0].real  # mode zero of a real field is real
    if mean_zero_u1:
        z[0, 0] = 0.0
    return SpectralState(nmax, z)


def state_to_json(state: SpectralState) -> str:
    entries = []
    for n in range(state.nmax + 1):
        row = [[float(state.coeffs[n, c].real), float(state.coeffs[n, c].imag)]
               for c in range(6)]
        entries.append([n, row])
    return json.dumps({"nmax": state.nmax, "coeffs": entries}, sort_keys=True)


def state_from_json(text: str) -> SpectralState:
    raw = json.loads(text)
    nmax = int(raw["nmax"])
    coeffs = np.zeros((nmax + 1, 6), dtype=np.complex128)
    for n, row in raw["coeffs"]:
        for c, (re, im) in enumerate(row):
            coeffs[int(n), c] = complex(re, im)
    return SpectralState(nmax, coeffs)


def magnitudes_csv(state: SpectralState) -> str:
    """CSV of per-mode component magnitudes (header + one row per n)."""
    lines = ["n,abs_u1,abs_u2,abs_u3,abs_u4,abs_u5,abs_u6"]
    for n in range(state.nmax + 1):
        mags = ",".join(repr(float(abs(state.coeffs[n, c]))) for c in range(6))
        lines.append(f"{n},{mags}")
    return "\n".join(lines) + "\n"
