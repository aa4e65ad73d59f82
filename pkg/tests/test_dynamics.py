import numpy as np
import pytest

import bousskit as bk
from bousskit.dynamics import center_group_S0, make_grid, nonlinearity_G
from bousskit.errors import NotCenterError, TruncationError
from bousskit.specspace import SpectralState, norm_H, norm_X, random_state
from conftest import named_rng


def test_grid_roundtrip_exact():
    grid = make_grid(16, 1)
    rng = named_rng("gridrt")
    coeffs = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    coeffs[0] = coeffs[0].real
    vals = grid.to_phys(coeffs)
    back = grid.to_spec(vals)
    assert np.max(np.abs(back - coeffs)) < 1e-12 * np.max(np.abs(coeffs))


def test_G_zero():
    p = bk.derive_params(2, 1, 1, 1, 1, 3.0, 8)
    st = SpectralState.zeros(8)
    out = nonlinearity_G(st, p)
    assert np.max(np.abs(out.coeffs)) == 0.0


def test_G_hand_trigonometry():
    """u1 = cos x, u5 = eps: G4 = -eps sin x - 0.75 sin 2x, G6 = 0.125 (1 + cos 2x)."""
    p = bk.derive_params(2, 1, 1, 1, 1, 3.0, 8)
    eps = 0.3
    st = SpectralState.zeros(8)
    st.coeffs[1, 0] = 0.5          # cos x
    st.coeffs[0, 4] = eps
    out = nonlinearity_G(st, p)
    grid = make_grid(8, 1)
    g4 = grid.to_phys(out.coeffs[:, 3])
    g6 = grid.to_phys(out.coeffs[:, 5])
    x = grid.x
    assert np.max(np.abs(g4 - (-eps * np.sin(x) - 0.75 * np.sin(2 * x)))) < 1e-13
    assert np.max(np.abs(g6 - 0.125 * (1 + np.cos(2 * x)))) < 1e-13
    # gain-of-regularity shape: only components 4 and 6
    assert np.max(np.abs(out.coeffs[:, (0, 1, 2, 4)])) == 0.0


def test_G_preserves_reality(p16):
    rng = named_rng("G-real")
    st = random_state(rng, 16)
    out = nonlinearity_G(st, p16)
    assert np.max(np.abs(out.coeffs[0].imag)) < 1e-14 * max(np.max(np.abs(out.coeffs)), 1e-300)


def test_G_finite_X_norm(p16, table16):
    rng = named_rng("G-X")
    st = random_state(rng, 16)
    out = nonlinearity_G(st, p16)
    assert np.isfinite(norm_X(out))


def test_G_structural_constant(p16):
    """Empirical K in |G(U+V)-G(U)|_X <= K (|U|_H^p + |V|_H^p) |V|_H."""
    rng = named_rng("fest")
    ks = []
    for _ in range(200):
        u = random_state(rng, 16, scale=0.5, decay=1.5)
        v = random_state(rng, 16, scale=0.5, decay=1.5)
        num = norm_X(nonlinearity_G(u + v, p16) - nonlinearity_G(u, p16))
        den = (norm_H(u) ** p16.p + norm_H(v) ** p16.p) * norm_H(v)
        if den > 0:
            ks.append(num / den)
    K = max(ks)
    assert np.isfinite(K) and K < 50.0


def test_G_truncation_error(p16):
    st = SpectralState.zeros(16)
    small = bk.make_grid(16, 1)
    bad = bk.PhysGrid(nmax=16, m=33)  # below (p+2) nmax + 1 = 49
    with pytest.raises(TruncationError):
        nonlinearity_G(st, p16, bad)
    nonlinearity_G(st, p16, small)  # exact minimum passes


def test_S0_identity_and_isometry(p16, table16):
    rng = named_rng("S0")
    st = bk.project(random_state(rng, 16), table16, "center")
    out0 = center_group_S0(st, 0.0, table16)
    assert norm_H(out0 - st) < 1e-12 * norm_H(st)
    # n != 0 center modes rotate with unit modulus: H norm preserved mode-wise
    st1 = SpectralState.zeros(16)
    st1.coeffs[2] = table16.V[2][:, 0]
    out = center_group_S0(st1, 0.7, table16)
    assert norm_H(out) == pytest.approx(norm_H(st1), rel=1e-12)


def test_S0_group_property(p16, table16):
    rng = named_rng("S0-group")
    st = bk.project(random_state(rng, 16), table16, "center")
    a = center_group_S0(center_group_S0(st, 0.3, table16), 0.9, table16)
    b = center_group_S0(st, 1.2, table16)
    assert norm_H(a - b) < 1e-10 * norm_H(st)


def test_S0_rejects_hyperbolic(p16, table16):
    rng = named_rng("S0-bad")
    st = random_state(rng, 16)  # generic state has hyperbolic content
    with pytest.raises(NotCenterError):
        center_group_S0(st, 0.5, table16)


def test_S0_fixes_zero_mode(p16, table16):
    st = SpectralState.zeros(16)
    st.coeffs[0] = table16.V[0][:, 1].real  # v_2(0)
    out = center_group_S0(st, 2.5, table16)
    assert np.max(np.abs(out.coeffs - st.coeffs)) < 1e-13
