"""Per-mode eigenstructure: beta eigenvalues, right/left bases, classification.

Eigenpairs come from the closed formulas (square roots of the cubic roots and
the rational eigenvector formula); the symbol matrix Ahat(n) is constructed
independently from the first-order system and is used for residual checks and
diagnostics, never to produce the eigenpairs.  Left eigenvectors are the rows
of inv(V): the eigenvalues are simple in the valid regime so inv(V) is exactly
the biorthogonal dual basis, and it sidesteps the normalizer the closed-form
left eigenvector would need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cubicroots import cauchy_lower_bound, solve_cubic
from .errors import GapError, SingularScalingError
from .params import Params

CLASSIFICATION = ("center", "center", "unstable", "stable", "unstable", "stable")
CENTER = (0, 1)
HYPERBOLIC = (2, 3, 4, 5)
UNSTABLE = (2, 4)
STABLE = (3, 5)


@dataclass(frozen=True)
class ModeData:
    n: int
    beta: np.ndarray          # (6,) complex
    V: np.ndarray             # (6,6) complex, columns v_m
    Z: np.ndarray             # (6,6) complex, rows z_m
    lam: np.ndarray           # (3,) complex cubic roots (lambda1, lambda2, lambda3)
    theta: np.ndarray         # (6,) complex Theta_m
    lam_scale: np.ndarray     # (6,) complex Lambda_m
    Q: np.ndarray             # (6,) complex Q(beta_m, n)
    degenerate: bool
    classification: tuple[str, ...] = CLASSIFICATION


def ahat_matrix(params: Params, n: int) -> np.ndarray:
    """The 6x6 mode-n symbol of the first-order operator, built from the
    displayed system; independent of the eigen formulas."""
    al, ga, b, c, d = params.alpha, params.gamma, params.b, params.c, params.d
    om = params.omega
    w2 = om * om
    i_n = 1j * n
    A = np.zeros((6, 6), dtype=np.complex128)
    A[0, 1] = i_n
    A[1, 2] = 1.0
    A[2, 3] = 1.0
    A[3, 0] = -i_n * (al * d * w2 - ga) - 1j * n ** 3 * (al * b * d * w2 - 1.0)
    A[3, 2] = ga - n * n * (al * b * d * w2 - 2.0)
    A[3, 4] = -i_n * om * (ga - al * d)
    A[4, 5] = 1.0
    A[5, 0] = -om * c * al - n * n * b * om * c * al
    A[5, 2] = i_n * b * om * c * al
    A[5, 4] = c * al + n * n
    return A


def _mode_zero(params: Params) -> ModeData:
    a, c, om = params.a, params.c, params.omega
    b3 = math.sqrt(params.gamma)          # sqrt(1/c)
    b5 = math.sqrt(params.c * params.alpha)  # sqrt(1/a)
    beta = np.array([0.0, 0.0, b3, -b3, b5, -b5], dtype=np.complex128)
    V = np.array([
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, math.sqrt(1.0 / c), -math.sqrt(1.0 / c), 0.0, 0.0],
        [0.0, 0.0, 1.0 / c, 1.0 / c, 0.0, 0.0],
        [om, 0.0, 0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, math.sqrt(1.0 / a), -math.sqrt(1.0 / a)],
    ], dtype=np.complex128)
    Z = np.linalg.inv(V)
    lam = np.array([0.0, min(params.c * params.alpha, params.gamma),
                    max(params.c * params.alpha, params.gamma)], dtype=np.complex128)
    nanv = np.full(6, np.nan, dtype=np.complex128)
    return ModeData(n=0, beta=beta, V=V, Z=Z, lam=lam, theta=nanv, lam_scale=nanv,
                    Q=nanv, degenerate=False)


def mode_data(params: Params, n: int) -> ModeData:
    """Eigenvalues, right basis V(n), left basis Z(n) and scalings for mode n."""
    if n == 0:
        return _mode_zero(params)
    roots = solve_cubic(params, n)
    lam1, lam2, lam3 = roots.lambda1, roots.lambda2, roots.lambda3
    b1 = 1j * math.sqrt(-lam1)
    b3 = np.sqrt(lam2)
    if b3.real < 0.0:
        b3 = -b3
    b5 = np.sqrt(lam3)
    if b5.real < 0.0:
        b5 = -b5
    beta = np.array([b1, -b1, b3, -b3, b5, -b5], dtype=np.complex128)

    al, ga, b, c = params.alpha, params.gamma, params.b, params.c
    om = params.omega
    i_n = 1j * n
    lam_m = beta * beta
    theta = lam_m - (c * al + n * n)
    small = np.abs(theta) < 1e-12 * (1.0 + n * n)
    if np.any(small):
        m_bad = int(np.argmax(small))
        raise SingularScalingError(
            f"Theta_{m_bad + 1}({n}) = {theta[m_bad]:g} too small",
            module="modes", n=n, condition="|Theta_m| >= 1e-12 (1+n^2)")
    lam_scale = om * c * al * (b * lam_m - (b * n * n + 1.0))
    Q = lam_scale / theta

    V = np.empty((6, 6), dtype=np.complex128)
    V[0] = i_n
    V[1] = beta
    V[2] = lam_m
    V[3] = beta * lam_m
    V[4] = i_n * Q
    V[5] = i_n * beta * Q
    Z = np.linalg.inv(V)
    lam = np.array([lam1, lam2, lam3], dtype=np.complex128)
    return ModeData(n=n, beta=beta, V=V, Z=Z, lam=lam, theta=theta,
                    lam_scale=lam_scale, Q=Q, degenerate=roots.degenerate)


class ModeTable:
    """Stacked mode data for n = 0..nmax (negative modes by conjugation).

    Immutable after construction; shared read-only.
    """

    def __init__(self, params: Params, nmax: int | None = None):
        self.params = params
        self.nmax = params.nmax if nmax is None else int(nmax)
        if self.nmax > params.nmax:
            raise ValueError("table truncation exceeds validated params.nmax")
        np1 = self.nmax + 1
        self.beta = np.empty((np1, 6), dtype=np.complex128)
        self.V = np.empty((np1, 6, 6), dtype=np.complex128)
        self.Z = np.empty((np1, 6, 6), dtype=np.complex128)
        self.lam = np.empty((np1, 3), dtype=np.complex128)
        self.Ahat = np.empty((np1, 6, 6), dtype=np.complex128)
        self.degenerate = np.zeros(np1, dtype=bool)
        for n in range(np1):
            md = mode_data(params, n)
            self.beta[n] = md.beta
            self.V[n] = md.V
            self.Z[n] = md.Z
            self.lam[n] = md.lam
            self.Ahat[n] = ahat_matrix(params, n)
            self.degenerate[n] = md.degenerate
        self.nvals = np.arange(np1, dtype=float)

    def data(self, n: int) -> ModeData:
        return mode_data(self.params, n)

    @property
    def gap(self) -> float:
        return spectral_gap(self)

    @property
    def decay_floor(self) -> float:
        """Min |Re beta| over the whole hyperbolic family including n = 0.

        The n = 0 hyperbolic eigenvalues sqrt(1/c), sqrt(1/a) can sit below the
        n >= 1 gap, and they set the true decay rate of the Green's operator.
        """
        eps = spectral_gap(self)
        return min(eps, float(self.beta[0, 2].real), float(self.beta[0, 4].real))


def build_mode_table(params: Params, nmax: int | None = None) -> ModeTable:
    return ModeTable(params, nmax)


def spectral_gap(table: ModeTable) -> float:
    """eps = min over 1 <= n <= nmax, m in {3,5} of Re beta_m(n), cross-checked
    against the Cauchy-bound floor min_n cauchy(n)/sqrt(2)."""
    if table.nmax < 1:
        raise GapError("need nmax >= 1 for a spectral gap", module="modes")
    re35 = table.beta[1:, [2, 4]].real
    eps = float(re35.min())
    if eps <= 0.0:
        n_bad = int(np.argmin(re35.min(axis=1))) + 1
        raise GapError(f"nonpositive hyperbolic real part at n={n_bad}",
                       module="modes", n=n_bad, condition="Re beta_{3,5}(n) > 0")
    floor = min(cauchy_lower_bound(table.params, n) for n in range(1, table.nmax + 1))
    floor /= math.sqrt(2.0)
    if eps < floor:
        raise GapError(f"gap {eps:g} below Cauchy floor {floor:g}", module="modes",
                       condition="eps >= min_n cauchy(n)/sqrt(2)")
    return eps


def apply_A(coeffs: np.ndarray, table: ModeTable) -> np.ndarray:
    """Apply the block-diagonal operator Ahat(n) to stacked coefficients
    (nmax+1, 6) -> (nmax+1, 6)."""
    return np.einsum("nij,nj->ni", table.Ahat, coeffs)
