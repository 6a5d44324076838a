"""Numerical engine for homogeneous hypersurface geometry in complex
hyperbolic space: closed-form ambient curvature, the solvable group
model and its ruled minimal orbits, normal Jacobi fields with the
distance-r transversal map, a catalog of tube and equidistant
families, and the constraint classifier for three-curvature non-Hopf
data."""

from .ambient import (
    CurvatureModel,
    HypersurfacePointData,
    codazzi_residual,
    curvature,
    gauss_residual,
    sectional_curvature,
)
from .families import (
    CatalogEntry,
    catalog,
    equidistant_profile,
    ruled_profile,
    structural_residuals,
    tube_spectrum,
)
from .classifier import (
    SolutionBranch,
    branch_profile,
    intersect_hyperbola_circle,
    residual_hopf_weights,
    solve_case_one,
    solve_case_two,
    sweep,
)
from .errors import (
    DegeneratePlaneError,
    FocalPointError,
    FocalRadiusError,
    OpenCaseError,
    UnsupportedModelError,
    ValidationError,
)
from .jacobi import (
    EXCEPTIONAL_RADIUS,
    FocalMapData,
    image_shape_operator,
    jacobi_field,
    jacobi_mode,
    jacobi_numeric,
    normal_frame,
    transversal_map,
)
from .profiles import HopfAttitude, PrincipalProfile, make_profile
from .solvable import (
    RuledSpec,
    SolvableAlgebra,
    algebra_curvature,
    build_algebra,
    build_ruled,
    default_ruled_spec,
    horosphere_model,
    levi_civita,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "CurvatureModel",
    "DegeneratePlaneError",
    "EXCEPTIONAL_RADIUS",
    "FocalMapData",
    "FocalPointError",
    "FocalRadiusError",
    "HopfAttitude",
    "HypersurfacePointData",
    "OpenCaseError",
    "PrincipalProfile",
    "RuledSpec",
    "SolutionBranch",
    "SolvableAlgebra",
    "UnsupportedModelError",
    "ValidationError",
    "algebra_curvature",
    "branch_profile",
    "build_algebra",
    "build_ruled",
    "catalog",
    "codazzi_residual",
    "curvature",
    "default_ruled_spec",
    "equidistant_profile",
    "gauss_residual",
    "horosphere_model",
    "image_shape_operator",
    "intersect_hyperbola_circle",
    "jacobi_field",
    "jacobi_mode",
    "jacobi_numeric",
    "levi_civita",
    "make_profile",
    "normal_frame",
    "residual_hopf_weights",
    "ruled_profile",
    "sectional_curvature",
    "solve_case_one",
    "solve_case_two",
    "structural_residuals",
    "sweep",
    "transversal_map",
    "tube_spectrum",
]
