"""Moment maps, Bruhat cells and Z/2 Betti numbers for loop groups and their involutions."""

__version__ = "0.1.0"

from .affine import enumerate_cells, minimal_coset_length, reduced_word
from .betti import BettiSeries, compare, cp_loop_series, halve, omega_g_series, su_closed_form
from .cartan import RootSystem, build_root_system
from .involution import (LatticeInvolution, LieInvolution, check_lie_involution,
                         lattice_involution_preset, verify_convexity)
from .moment import MomentPoint, TruncationError, hull_contains, is_extreme, polytope_vertices

__all__ = [
    "BettiSeries", "LatticeInvolution", "LieInvolution", "MomentPoint", "RootSystem",
    "TruncationError", "build_root_system", "check_lie_involution", "compare", "cp_loop_series",
    "enumerate_cells", "halve", "hull_contains", "is_extreme", "lattice_involution_preset",
    "minimal_coset_length", "omega_g_series", "polytope_vertices", "reduced_word",
    "su_closed_form", "verify_convexity",
]
