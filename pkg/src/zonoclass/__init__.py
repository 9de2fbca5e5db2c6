"""Vertex-transitive and homogeneous zonotopes via root systems."""

from .classify import (
    ClassificationVerdict,
    check_two_face_criterion,
    classify,
    homogeneous_vertex_pattern_Bd,
    is_vertex_transitive,
    semi_star_norm_criterion,
)
from .errors import (
    CapExceededError,
    ConsistencyError,
    DegenerateError,
    DimensionMismatchError,
    DocumentError,
    EmptyInputError,
    PreconditionError,
    UnmatchedDiagramError,
)
from .rootsystem import (
    CoxeterType,
    catalog,
    decompose,
    identify_type,
    is_root_system,
    orbit,
    reflection,
    simple_roots,
    weyl_closure,
)
from .vectorset import (
    Flat,
    OrthogonalMap,
    SemiStar,
    ToleranceContext,
    VectorSet,
    apply,
    are_congruent,
    canonicalize,
    flats,
    semi_stars,
    stabilizes,
)
from .zonotope import (
    Zonotope,
    export_mesh,
    face_in_direction,
    faces_from_flats,
    is_homogeneous,
    is_inscribed,
    normalize,
    project_along,
    vertices,
)

__version__ = "0.1.0"
