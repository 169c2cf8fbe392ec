"""Exact Chern invariants of Hirzebruch-Kummer covers and ball-quotient checks.

The public surface is split by concern:

* :mod:`hkcover.arrangements` -- base surfaces and arrangement combinatorics
* :mod:`hkcover.invariants` -- Chern numbers, the Hirzebruch polynomial, BMY gates
* :mod:`hkcover.ball_quotient` -- proportionality conditions and nonexistence certificates
* :mod:`hkcover.nc_cover` -- normal-crossing models of blown-up arrangements
* :mod:`hkcover.search` -- exhaustive enumeration and parameter scans
"""

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    HirzebruchSurface,
    NefEffectiveCanonical,
    ProjectivePlaneDeg,
    ValidationError,
    f_moments,
    surface_parameters,
    validate_combinatorics,
    validate_profiles,
)
from hkcover.invariants import (
    ChernInvariants,
    HirzebruchQuadratic,
    bmy_applicability,
    cover_chern,
    hirzebruch_polynomial,
)
from hkcover.ball_quotient import certify_nonexistence, necessary_condition_filter, required_double_sixfold
from hkcover.nc_cover import NormalCrossingModel, abelian_l1_model, blowup_homogeneous

__version__ = "0.1.0"

__all__ = [
    "ArrangementCombinatorics",
    "ChernInvariants",
    "CurveProfile",
    "HirzebruchQuadratic",
    "HirzebruchSurface",
    "NefEffectiveCanonical",
    "ProjectivePlaneDeg",
    "NormalCrossingModel",
    "ValidationError",
    "abelian_l1_model",
    "blowup_homogeneous",
    "bmy_applicability",
    "certify_nonexistence",
    "cover_chern",
    "f_moments",
    "hirzebruch_polynomial",
    "necessary_condition_filter",
    "required_double_sixfold",
    "surface_parameters",
    "validate_combinatorics",
    "validate_profiles",
]
