"""Exception hierarchy.

Every error carries the module it came from and, where it makes sense, the
wavenumber n and a short description of the violated condition, so batch runs
can report exactly which mode broke which contract.
"""

from __future__ import annotations


class BoussError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, *, module: str = "", n: int | None = None,
                 condition: str = ""):
        self.module = module
        self.n = n
        self.condition = condition
        parts = [message]
        if module:
            parts.append(f"[module={module}]")
        if n is not None:
            parts.append(f"[n={n}]")
        if condition:
            parts.append(f"[condition={condition}]")
        super().__init__(" ".join(parts))


class DomainError(BoussError):
    """Invalid raw inputs (non-positive coefficients, bad truncation, ...)."""


class RegimeError(BoussError):
    """Wave-speed / sign conditions for the working regime are violated."""


class DegenerateError(BoussError):
    """Two cubic roots coincide beyond what double precision can separate."""


class ClassificationError(BoussError):
    """Root layout does not match the valid-regime pattern (no negative real
    root, or hyperbolic roots with nonpositive real part)."""


class SingularScalingError(BoussError):
    """Eigenvector scaling factor Theta is numerically zero."""


class GapError(BoussError):
    """Spectral gap is nonpositive or fails its lower-bound cross-check."""


class TruncationError(BoussError):
    """Requested dealiased product exceeds the configured physical grid."""


class NotCenterError(BoussError):
    """Input state has a hyperbolic component where a center state is required."""


class NotHyperbolicError(BoussError):
    """Input has a center component where a hyperbolic one is required."""


class ZeroYError(BoussError):
    """Green's operator evaluated at y=0 without choosing a one-sided limit."""


class WindowError(BoussError):
    """Integration window too short for the requested tail tolerance."""


class CoercivityError(BoussError):
    """An energy coefficient Gamma is nonpositive."""


class ContractionError(BoussError):
    """Picard iterates of the manifold map fail to contract."""


class FixedPointError(BoussError):
    """Initial-data fixed point failed (no contraction or out of budget)."""


class MeanValueError(BoussError):
    """Prolongation input has a nonzero mean in its first component."""


class StabilityError(BoussError):
    """Trajectory violated the a-priori stability bound."""


class ZeroModeError(BoussError):
    """Symbol requested at n=0 where it is undefined."""
