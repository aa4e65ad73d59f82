import math

import numpy as np
import pytest

import bousskit as bk
from bousskit.errors import GapError
from bousskit.modes import ahat_matrix, mode_data, spectral_gap
from oracles import sorted_oracle


def test_mode_zero_explicit(p0):
    md = mode_data(p0, 0)
    # beta_3(0) = sqrt(gamma) = 1, beta_5(0) = sqrt(c alpha) = sqrt(1/2)
    assert md.beta[2] == pytest.approx(1.0)
    assert md.beta[4] == pytest.approx(math.sqrt(0.5))
    assert md.beta[3] == -md.beta[2] and md.beta[5] == -md.beta[4]
    v5 = md.V[:, 4]
    assert np.allclose(v5, [0, 0, 0, 0, 1.0, math.sqrt(0.5)])
    v1 = md.V[:, 0]
    assert np.allclose(v1, [1, 0, 0, 0, 3.0, 0])
    # explicit displayed left rows hold where they are consistent
    assert np.allclose(md.Z[0], [1, 0, 0, 0, 0, 0])
    assert np.allclose(md.Z[1], [0, 1, 0, -1.0, 0, 0])


def test_mode_zero_biorthogonal_and_eigen(p0):
    md = mode_data(p0, 0)
    A = ahat_matrix(p0, 0)
    assert np.max(np.abs(md.Z @ md.V - np.eye(6))) < 1e-12
    assert np.max(np.abs(A @ md.V - md.V @ np.diag(md.beta))) < 1e-12


def test_beta_pairing_and_branches(p0, table0):
    for n in range(1, table0.nmax + 1):
        b = table0.beta[n]
        assert b[1] == -b[0] and b[3] == -b[2] and b[5] == -b[4]
        assert b[0].real == 0.0 and b[0].imag > 0.0      # central exactly imaginary
        assert b[2].real > 0.0 and b[4].real > 0.0        # unstable
        assert b[3].real < 0.0 and b[5].real < 0.0        # stable


def test_beta1_n1_value(p0):
    lam1, _, _ = sorted_oracle(p0, 1)
    md = mode_data(p0, 1)
    assert md.beta[0] == pytest.approx(1j * math.sqrt(-lam1), rel=1e-13)


def test_biorthogonality(table0):
    for n in range(table0.nmax + 1):
        defect = np.max(np.abs(table0.Z[n] @ table0.V[n] - np.eye(6)))
        assert defect < 1e-9, f"n={n}: {defect}"


def test_diagonalization(p0, table0):
    for n in range(table0.nmax + 1):
        D = table0.Z[n] @ table0.Ahat[n] @ table0.V[n] - np.diag(table0.beta[n])
        scaled = np.max(np.abs(D)) / (1.0 + np.max(np.abs(table0.beta[n])))
        assert scaled < 1e-8, f"n={n}: {scaled}"


def test_eigenvector_residual(p0, table0):
    for n in range(table0.nmax + 1):
        A = table0.Ahat[n]
        R = A @ table0.V[n] - table0.V[n] @ np.diag(table0.beta[n])
        for m in range(6):
            vn = np.max(np.abs(table0.V[n][:, m]))
            assert np.max(np.abs(R[:, m])) <= 1e-8 * (1 + abs(n) ** 3) * vn


def test_spectral_gap_value(p0, table0):
    eps = spectral_gap(table0)
    assert eps > 0.0
    # reference constant: min Re beta over n>=1 sits at n=1
    md1 = mode_data(p0, 1)
    assert eps == pytest.approx(min(md1.beta[2].real, md1.beta[4].real), rel=1e-12)
    assert eps == pytest.approx(1.3840072064200570, rel=1e-10)
    # decay floor includes the slower n=0 modes
    assert table0.decay_floor == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_gap_above_cauchy_floor(p0, table0):
    eps = spectral_gap(table0)
    floor = min(bk.cauchy_lower_bound(p0, n) for n in range(1, table0.nmax + 1))
    assert eps >= floor / math.sqrt(2.0)


def test_beta_linear_growth_bracket(p256, table256):
    ratios = []
    for n in range(32, 257):
        ratios.append(np.abs(table256.beta[n]) / n)
    ratios = np.array(ratios)
    assert ratios.min() > 0.5 and ratios.max() < 5.0


def test_conjugation_symmetry(p0):
    """Mode data at -n is the conjugate of mode data at n up to the pairing
    (1 2)(3 5)(4 6) forced by the fixed branch conventions."""
    for n in (1, 5, 33):
        md_p = mode_data(p0, n)
        md_m = mode_data(p0, -n)
        pair_c = abs(md_p.lam[1].imag) > 0.0
        perm = [1, 0, 4, 5, 2, 3] if pair_c else [1, 0, 2, 3, 4, 5]
        assert np.allclose(md_m.beta[perm], np.conj(md_p.beta), rtol=1e-12, atol=1e-12)
        assert np.allclose(md_m.V[:, perm], np.conj(md_p.V), rtol=1e-10, atol=1e-10)


def test_theta_lambda_values(p0):
    md = mode_data(p0, 1)
    lam1 = md.lam[0].real
    th = lam1 - (0.5 + 1.0)
    la = 3.0 * 0.5 * (lam1 - 2.0)
    assert md.theta[0] == pytest.approx(th, rel=1e-12)
    assert md.lam_scale[0] == pytest.approx(la, rel=1e-12)
    assert md.Q[0] == pytest.approx(la / th, rel=1e-12)
    assert md.Q[0].real > 0.0  # Q(beta_1, n) > 0 in the stability regime


def test_gap_error_on_tiny_table(p0):
    t1 = bk.build_mode_table(p0, nmax=1)
    assert spectral_gap(t1) > 0.0
