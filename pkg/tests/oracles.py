"""Independent oracles used by the test suite only.

The cubic oracle locates roots with an explicit companion-matrix
eigendecomposition and then refines each root by Newton's method in 50-digit
arithmetic, so the reference values carry the full accuracy of the exact
roots of the double-precision coefficients.  The production solver never
sees this code path.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np

from bousskit.params import Params, polynomial_coefficients


def companion_roots(a0: float, a1: float, a2: float) -> np.ndarray:
    """Eigenvalues of the companion matrix of lam^3 + a2 lam^2 + a1 lam + a0."""
    C = np.array([[0.0, 0.0, -a0],
                  [1.0, 0.0, -a1],
                  [0.0, 1.0, -a2]], dtype=float)
    return np.linalg.eigvals(C)


def refined_roots(params: Params, n: int, dps: int = 50) -> list[complex]:
    """Companion-located roots re-isolated at high precision.

    The raw double-precision companion eigenvalues cannot separate the
    near-coincident hyperbolic pair at large n (nearby Newton seeds would
    collapse onto one root), so the reference values come from mpmath's
    simultaneous root isolation on the exact double coefficients; the
    companion output is used to sanity-check the multiset location.
    """
    a0, a1, a2, _, _, _ = polynomial_coefficients(params, n)
    seeds = companion_roots(a0, a1, a2)
    with mp.workdps(dps):
        roots = mp.polyroots([mp.mpf(1), mp.mpf(a2), mp.mpf(a1), mp.mpf(a0)],
                             maxsteps=300, extraprec=120)
        out = []
        for x in roots:
            if abs(mp.im(x)) < mp.mpf(10) ** (-dps + 10) * (1 + abs(x)):
                x = mp.mpc(mp.re(x), 0)
            out.append(complex(x))
    scale = max(max(abs(s) for s in seeds), 1.0)
    for s in seeds:
        assert min(abs(s - r) for r in out) < 1e-5 * scale, \
            "companion location inconsistent with refined roots"
    return out


def sorted_oracle(params: Params, n: int) -> tuple[float, complex, complex]:
    """(lambda1, lambda2, lambda3) under the library's ordering convention."""
    roots = refined_roots(params, n)
    neg = [r for r in roots if r.imag == 0.0 and r.real < 0.0]
    assert len(neg) == 1, f"oracle found {len(neg)} negative real roots at n={n}"
    lam1 = neg[0].real
    pair = [r for r in roots if r is not neg[0]]
    a, b = pair
    if abs(a.imag) > 0.0 or abs(b.imag) > 0.0:
        if a.imag < b.imag:
            a, b = b, a
    else:
        if a.real > b.real:
            a, b = b, a
    return lam1, a, b


def match_multiset(got, want) -> float:
    """Greedy relative multiset distance between two root collections."""
    got = list(got)
    scale = max(max(abs(complex(w)) for w in want), 1.0)
    worst = 0.0
    for w in want:
        j = int(np.argmin([abs(complex(g) - complex(w)) for g in got]))
        worst = max(worst, abs(complex(got[j]) - complex(w)) / scale)
        got.pop(j)
    return worst


def fd_derivative(fun, x0: float, h: float = 1e-6) -> float:
    """Central finite difference."""
    return (fun(x0 + h) - fun(x0 - h)) / (2.0 * h)
