"""Projectors and reflectors onto linear subspaces of R^n.

Builds orthogonal projectors and reflectors, computes fixed-point subspaces
of their compositions, provides the exact reflection/rotation calculus of
the plane, and ships randomized residual checks for the composition laws.
"""

__version__ = "0.1.0"

from .linalg import DEFAULT_TOL, Tolerance
from .subspace import (
    AmbientMismatchError,
    Subspace,
    containment_residual,
    orthogonality_residual,
    principal_angles,
    projector_distance,
)
from .operators import (
    DRTrace,
    FixedSetReport,
    compose,
    douglas_rachford_operator,
    dr_iterate,
    expanded_three_reflector,
    fixed_subspace,
    hyperplane_reflector,
    map_subspace,
    projector,
    reflector,
    reflector_chain,
)
from .plane import (
    PlaneIsometry,
    compose_reflection_angles,
    compose_symbolic,
    fixed_set,
    iso_matrix,
    line_subspace,
    perturbed_triple,
    refl_matrix,
    reflection,
    rot_matrix,
    rotation,
)
from .verify import (
    CheckReport,
    RandomSpec,
    random_orthogonal_chain,
    random_subspace,
    run_named_checks,
    run_suite,
)
from .scene import Scene, SceneError, builtin_scene_names, load_scene, parse_scene
from .svgfig import FigureSpec, render_scene_figure

__all__ = [
    "AmbientMismatchError",
    "CheckReport",
    "DEFAULT_TOL",
    "DRTrace",
    "FigureSpec",
    "FixedSetReport",
    "PlaneIsometry",
    "RandomSpec",
    "Scene",
    "SceneError",
    "Subspace",
    "Tolerance",
    "builtin_scene_names",
    "compose",
    "compose_reflection_angles",
    "compose_symbolic",
    "containment_residual",
    "douglas_rachford_operator",
    "dr_iterate",
    "expanded_three_reflector",
    "fixed_set",
    "fixed_subspace",
    "hyperplane_reflector",
    "iso_matrix",
    "line_subspace",
    "load_scene",
    "map_subspace",
    "orthogonality_residual",
    "parse_scene",
    "perturbed_triple",
    "principal_angles",
    "projector",
    "projector_distance",
    "random_orthogonal_chain",
    "random_subspace",
    "refl_matrix",
    "reflection",
    "reflector",
    "reflector_chain",
    "render_scene_figure",
    "rot_matrix",
    "rotation",
    "run_named_checks",
    "run_suite",
]
