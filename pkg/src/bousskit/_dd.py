"""Double-double helpers for the cubic root polish.

A double-double is an unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving
~31 significant digits.  Only the handful of operations the root polish needs
are provided; everything works elementwise on floats or numpy arrays.

The near-coincident hyperbolic root pair (gap ~ 1/n^2 against roots ~ n^2)
is unresolvable in plain double precision for large n; polishing in
double-double recovers the pair to full double accuracy.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    """Assumes |a| >= |b|."""
    s = a + b
    err = b - (s - a)
    return s, err


def two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ahi = t - (t - a)
    alo = a - ahi
    t = _SPLITTER * b
    bhi = t - (t - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd(a):
    """Lift a double (or array) to double-double."""
    return (np.asarray(a, dtype=float) + 0.0, np.zeros_like(np.asarray(a, dtype=float)))


def add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def sub(x, y):
    return add(x, (-y[0], -y[1]))


def mul(x, y):
    p, e = two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return quick_two_sum(p, e)


def div(x, y):
    q1 = x[0] / y[0]
    r = sub(x, mul(dd(q1), y))
    q2 = r[0] / y[0]
    r = sub(r, mul(dd(q2), y))
    q3 = r[0] / y[0]
    s, e = quick_two_sum(q1, q2)
    return add((s, e), dd(q3))


def sqrt(x):
    y0 = np.sqrt(x[0])
    # one Newton step in double-double: y = y0 + (x - y0^2) / (2 y0)
    r = sub(x, mul(dd(y0), dd(y0)))
    corr = (r[0] / (2.0 * y0), r[1] / (2.0 * y0))
    return add(dd(y0), corr)


def to_float(x):
    return x[0] + x[1]


def poly3(lam, a0, a1, a2):
    """Monic cubic lam^3 + a2 lam^2 + a1 lam + a0 in double-double (Horner)."""
    acc = add(lam, dd(a2))
    acc = add(mul(acc, lam), dd(a1))
    acc = add(mul(acc, lam), dd(a0))
    return acc


def dpoly3(lam, a1, a2):
    """Derivative 3 lam^2 + 2 a2 lam + a1 in double-double."""
    acc = add(mul(dd(3.0), lam), dd(2.0 * a2))
    acc = add(mul(acc, lam), dd(a1))
    return acc


def newton_root(seed: float, a0: float, a1: float, a2: float, iters: int = 4):
    """Polish a simple real root of the monic cubic in double-double."""
    x = dd(seed)
    for _ in range(iters):
        f = poly3(x, a0, a1, a2)
        fp = dpoly3(x, a1, a2)
        x = sub(x, div(f, fp))
    return x
