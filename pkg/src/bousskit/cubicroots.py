"""Per-mode cubic solver with certified root locations.

The eigenvalues beta of the mode-n symbol satisfy beta^2 = lambda with
lambda a root of the cubic lam^3 + a2 lam^2 + a1 lam + a0.  The primary
path is Cardano's formula (trigonometric form when the discriminant is
negative, real cube roots otherwise).  Because the two hyperbolic roots
approach each other like O(1/n^2) against magnitudes O(n^2), the raw
formulas lose the pair for large n; the solver therefore polishes the
negative root with a double-double Newton iteration and recovers the
remaining pair from the deflated quadratic evaluated in double-double.
This resolves the pair to full double accuracy wherever the true gap is
representable at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _dd as dd
from .errors import ClassificationError, DegenerateError, DomainError
from .params import Params, polynomial_coefficients

# Gap (relative to root magnitude) below which the pair is flagged
# near-coincident for downstream consumers.
NEAR_DEGENERATE_REL = 1e-9
# Gap below which even the polished doubles cannot certify distinctness.
UNRESOLVABLE_REL = 64.0 * 2.220446049250313e-16


@dataclass(frozen=True)
class CardanoParts:
    S: complex
    T: complex
    D: float
    Q: float
    R: float
    branch: str  # "trig" (D<0) or "real" (D>=0)


@dataclass(frozen=True)
class CubicRoots:
    lambda1: float
    lambda2: complex
    lambda3: complex
    degenerate: bool
    cardano_parts: CardanoParts

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (complex(self.lambda1), self.lambda2, self.lambda3)


def _cardano_seed(a0: float, a1: float, a2: float):
    """Raw Cardano roots in double precision; used as Newton seeds."""
    Q = (3.0 * a1 - a2 * a2) / 9.0
    R = (9.0 * a1 * a2 - 27.0 * a0 - 2.0 * a2 ** 3) / 54.0
    D = Q ** 3 + R ** 2
    shift = -a2 / 3.0
    if D < 0.0:
        # three distinct real roots
        theta = math.acos(max(-1.0, min(1.0, R / math.sqrt(-(Q ** 3)))))
        r2 = 2.0 * math.sqrt(-Q)
        roots = [shift + r2 * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        S = complex(R, math.sqrt(-D)) ** (1.0 / 3.0)
        T = S.conjugate()
        return roots, CardanoParts(S=S, T=T, D=D, Q=Q, R=R, branch="trig")
    sq = math.sqrt(D)
    S = math.copysign(abs(R + sq) ** (1.0 / 3.0), R + sq)
    T = math.copysign(abs(R - sq) ** (1.0 / 3.0), R - sq)
    real_root = shift + S + T
    re_pair = shift - 0.5 * (S + T)
    im_pair = 0.5 * math.sqrt(3.0) * (S - T)
    roots = [real_root, complex(re_pair, im_pair), complex(re_pair, -im_pair)]
    return roots, CardanoParts(S=complex(S), T=complex(T), D=D, Q=Q, R=R, branch="real")


def solve_cubic(params: Params, n: int) -> CubicRoots:
    """Roots of the mode-n cubic with the regime classification enforced.

    lambda1 is the unique real negative root (n != 0); the remaining pair is
    ordered with Im(lambda2) >= 0 when complex, else lambda2 <= lambda3.
    """
    a0, a1, a2, Q, R, D = polynomial_coefficients(params, n)
    if n == 0:
        ca, ga = params.c * params.alpha, params.gamma
        lo, hi = sorted((ca, ga))
        parts = CardanoParts(S=0j, T=0j, D=D, Q=Q, R=R, branch="exact")
        return CubicRoots(lambda1=0.0, lambda2=complex(lo), lambda3=complex(hi),
                          degenerate=abs(hi - lo) <= NEAR_DEGENERATE_REL * max(1.0, hi),
                          cardano_parts=parts)

    seeds, parts = _cardano_seed(a0, a1, a2)
    neg_reals = [r for r in seeds if isinstance(r, float) and r < 0.0] or \
                [r.real for r in seeds if isinstance(r, complex) and abs(r.imag) < 1e-9 * abs(r) and r.real < 0.0]
    if len(neg_reals) != 1:
        raise ClassificationError(
            f"expected exactly one negative real root, found {len(neg_reals)}",
            module="cubicroots", n=n, condition="unique lambda1 < 0")

    lam1 = dd.newton_root(neg_reals[0], a0, a1, a2)
    lam1_f = dd.to_float(lam1)
    if not (lam1_f < 0.0):
        raise ClassificationError("polished lambda1 not negative",
                                  module="cubicroots", n=n, condition="lambda1 < 0")

    # Deflated quadratic lam^2 - s*lam + q with s = lam2+lam3, q = lam2*lam3,
    # assembled in double-double so the near-cancelling discriminant survives.
    s = dd.sub(dd.dd(-a2), lam1)
    q = dd.div(dd.dd(-a0), lam1)
    disc = dd.sub(dd.mul(s, s), dd.mul(dd.dd(4.0), q))
    if dd.to_float(disc) >= 0.0:
        r = dd.sqrt(disc)
        if dd.to_float(s) >= 0.0:
            big = dd.mul(dd.dd(0.5), dd.add(s, r))
        else:
            big = dd.mul(dd.dd(0.5), dd.sub(s, r))
        other = dd.div(q, big)
        pair = sorted((dd.to_float(big), dd.to_float(other)))
        lam2, lam3 = complex(pair[0]), complex(pair[1])
    else:
        im = dd.to_float(dd.mul(dd.dd(0.5), dd.sqrt(dd.sub(dd.dd(0.0), disc))))
        re = 0.5 * dd.to_float(s)
        lam2, lam3 = complex(re, im), complex(re, -im)

    for lam, which in ((lam2, "lambda2"), (lam3, "lambda3")):
        if not (lam.real > 0.0):
            raise ClassificationError(f"{which} has nonpositive real part: {lam}",
                                      module="cubicroots", n=n,
                                      condition="Re(lambda_{2,3}) > 0")

    scale = max(1.0, abs(lam2), abs(lam3))
    gap = abs(lam2 - lam3)
    if gap <= UNRESOLVABLE_REL * scale:
        raise DegenerateError(
            f"hyperbolic roots coincide within double resolution (gap={gap:g})",
            module="cubicroots", n=n, condition="|lambda2-lambda3| > 64*eps*scale")
    return CubicRoots(lambda1=lam1_f, lambda2=lam2, lambda3=lam3,
                      degenerate=gap <= NEAR_DEGENERATE_REL * scale,
                      cardano_parts=parts)


def cauchy_lower_bound(params: Params, n: int) -> float:
    """Cauchy-type lower bound |a0| / (1 + 2|a0| + |a1| + |a2|) on every root."""
    if n == 0:
        raise DomainError("Cauchy bound needs n != 0", module="cubicroots", n=0)
    a0, a1, a2, _, _, _ = polynomial_coefficients(params, n)
    return abs(a0) / (1.0 + 2.0 * abs(a0) + abs(a1) + abs(a2))
