import numpy as np
import pytest

import bousskit as bk
from bousskit.params import polynomial_coefficients
from oracles import match_multiset, sorted_oracle


def test_mode_zero_exact(p0):
    r = bk.solve_cubic(p0, 0)
    assert r.lambda1 == 0.0
    assert (r.lambda2, r.lambda3) == (0.5 + 0j, 1.0 + 0j)


def test_n1_oracle_values(p0):
    # cubic lam^3 - 11.5 lam + 15; oracle-pinned values
    lam1, lam2, lam3 = sorted_oracle(p0, 1)
    assert lam1 == pytest.approx(-3.9155, abs=1e-3)
    r = bk.solve_cubic(p0, 1)
    assert r.lambda1 == pytest.approx(lam1, rel=1e-12)
    assert r.lambda2 == pytest.approx(lam2, rel=1e-12)
    assert r.lambda3 == pytest.approx(lam3, rel=1e-12)
    # for this parameter set lam = n^2 + 1 is an exact root
    assert abs(r.lambda3 - 2.0) < 1e-13


def test_vieta_identities(p0):
    for n in range(1, p0.nmax + 1):
        a0, a1, a2, *_ = polynomial_coefficients(p0, n)
        r = bk.solve_cubic(p0, n)
        l1, l2, l3 = r.as_tuple()
        scale = max(1.0, abs(l1), abs(l2), abs(l3))
        assert abs(l1 + l2 + l3 + a2) < 1e-10 * max(1.0, abs(a2), scale)
        assert abs(l1 * l2 + l1 * l3 + l2 * l3 - a1) < 1e-10 * max(1.0, abs(a1))
        assert abs(l1 * l2 * l3 + a0) < 1e-10 * max(1.0, abs(a0))


def test_oracle_agreement_full_range(p0):
    for n in range(1, p0.nmax + 1):
        r = bk.solve_cubic(p0, n)
        want = sorted_oracle(p0, n)
        assert match_multiset(r.as_tuple(), want) < 1e-12, f"n={n}"


def test_root_classification(p0):
    for n in range(1, p0.nmax + 1):
        r = bk.solve_cubic(p0, n)
        assert r.lambda1 < 0.0
        assert r.lambda2.real > 0.0 and r.lambda3.real > 0.0
        if r.lambda2.imag != 0.0:
            assert r.lambda2.imag > 0.0
            assert r.lambda3 == r.lambda2.conjugate()
        else:
            assert r.lambda2.real <= r.lambda3.real


def test_large_n_asymptote(p256):
    r = bk.solve_cubic(p256, 256)
    assert r.lambda1 / 256 ** 2 == pytest.approx(-3.5, abs=1e-2)


def test_roots_even_in_n(p0):
    for n in (1, 7, 33):
        a = bk.solve_cubic(p0, n)
        b = bk.solve_cubic(p0, -n)
        assert a.as_tuple() == b.as_tuple()


def test_near_degenerate_flag_and_resolution(p256):
    # the hyperbolic pair gap shrinks like ~0.11/n^2; far beyond n ~ 100 the
    # relative gap is below 1e-9, flagged but still resolved to double accuracy
    r = bk.solve_cubic(p256, 256)
    assert r.degenerate
    lam1, lam2, lam3 = sorted_oracle(p256, 256)
    assert abs(complex(r.lambda2) - lam2) < 1e-12 * abs(lam2)
    assert abs(complex(r.lambda3) - lam3) < 1e-12 * abs(lam3)
    assert abs(r.lambda3 - (256.0 ** 2 + 1.0)) < 1e-10


def test_cardano_parts_recorded(p0):
    r = bk.solve_cubic(p0, 1)
    parts = r.cardano_parts
    assert parts.branch in ("trig", "real")
    assert parts.D == polynomial_coefficients(p0, 1)[5]


def test_cauchy_bound_value(p0):
    # |a0|/(1 + 2|a0| + |a1| + |a2|) at n=1: 15 / 42.5
    assert bk.cauchy_lower_bound(p0, 1) == pytest.approx(15.0 / 42.5, rel=1e-15)


def test_cauchy_bound_below_roots(p0):
    for n in range(1, p0.nmax + 1):
        bound = bk.cauchy_lower_bound(p0, n)
        assert bound > 0.0
        r = bk.solve_cubic(p0, n)
        for lam in r.as_tuple():
            assert abs(lam) >= bound


def test_lambda_scaling_bracket(p256):
    # |lambda_m(n)| / n^2 bounded above and below for 32 <= n <= 256
    ratios = []
    for n in range(32, 257, 16):
        r = bk.solve_cubic(p256, n)
        for lam in r.as_tuple():
            ratios.append(abs(lam) / n ** 2)
    assert 0.5 < min(ratios) and max(ratios) < 10.0
