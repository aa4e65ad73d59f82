"""Spectral toolkit for x-periodic travelling waves of the 2D abcd-Boussinesq
system, treated as an (ill-posed) evolution in the transverse coordinate y and
solved on an infinite-dimensional center manifold."""

from .params import Params, RegimeReport, derive_params, load_params, regime_report
from .cubicroots import CubicRoots, cauchy_lower_bound, solve_cubic
from .modes import ModeData, ModeTable, build_mode_table, mode_data, spectral_gap
from .specspace import ModeCoords, SpectralState, mode_transform, norms, project
from .dynamics import PhysGrid, center_group_S0, make_grid, nonlinearity_G
from .hypgreen import YGrid, green_S, hyperbolic_solve_K1
from .energy import coercivity_gammas, energy_E
from .manifold import (BottomVelocity, LPConfig, Trajectory, evolve_y,
                       lp_manifold_phi, prolong_R12inv, reduced_rhs,
                       restrict_R12, solve_initdata_xi, wave_symbol_sigma)

__version__ = "0.1.0"

__all__ = [
    "Params", "RegimeReport", "derive_params", "load_params", "regime_report",
    "CubicRoots", "cauchy_lower_bound", "solve_cubic",
    "ModeData", "ModeTable", "build_mode_table", "mode_data", "spectral_gap",
    "ModeCoords", "SpectralState", "mode_transform", "norms", "project",
    "PhysGrid", "center_group_S0", "make_grid", "nonlinearity_G",
    "YGrid", "green_S", "hyperbolic_solve_K1",
    "coercivity_gammas", "energy_E",
    "BottomVelocity", "LPConfig", "Trajectory", "evolve_y", "lp_manifold_phi",
    "prolong_R12inv", "reduced_rhs", "restrict_R12", "solve_initdata_xi",
    "wave_symbol_sigma",
    "__version__",
]
