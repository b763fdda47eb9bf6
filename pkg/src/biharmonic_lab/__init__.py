"""Numerical verification engine for biharmonic hypersurfaces in product spaces.

Closed-form curvature and residual formulas for rotation and constant-tilt
hypersurfaces of sphere-line and hyperbolic-line products, flow reductions
of the governing ODE systems, an independent finite-difference embedding
oracle, and executable classification suites.
"""

from .ambient import (
    AmbientSpace,
    AmbientVector,
    NormalDecomposition,
    curvature_tensor,
    ricci_normal,
    ricci_tangent_coefficient,
)
from .errors import ConsistencyError, DomainError, SingularityError
from .profiles import ProfileJet, ProfileKind, RotationProfile, ShapeSpectrum
from .residuals import HypersurfaceJet, ResidualReport, SurfaceFrameState
from .odes import OdeSystem, Termination, Trajectory, integrate
from .suites import SUITES, SuiteVerdict, run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "AmbientVector",
    "NormalDecomposition",
    "curvature_tensor",
    "ricci_normal",
    "ricci_tangent_coefficient",
    "ConsistencyError",
    "DomainError",
    "SingularityError",
    "ProfileJet",
    "ProfileKind",
    "RotationProfile",
    "ShapeSpectrum",
    "HypersurfaceJet",
    "ResidualReport",
    "SurfaceFrameState",
    "OdeSystem",
    "Termination",
    "Trajectory",
    "integrate",
    "SUITES",
    "SuiteVerdict",
    "run_all",
    "run_suite",
    "__version__",
]
