"""Conformal geometric algebra for 2D and 3D Euclidean geometry."""

from .algebra import (
    Algebra,
    Multivector,
    Signature,
    algebra,
    blade_product,
    dual,
    exp_bivector,
    geometric_product,
    grade_project,
    inner_product,
    magnitude,
    outer_product,
    pseudoscalar,
    reverse,
)
from .conformal import (
    distance,
    embed,
    embed_batch,
    extract_point,
    is_null,
    normalize_point,
    space,
    stereographic,
)
from .errors import (
    CoincidentError,
    ContainedError,
    DegenerateError,
    GAError,
    GeometryError,
    GradeError,
    NonSimpleBivector,
    NotAPoint,
    PointAtInfinity,
    SignatureMismatch,
)
from .meet import MeetKind, MeetOutcome, meet, meet_line_sphere, meet_lines_2d, meet_spheres
from .primitives import (
    angle_between_lines,
    center_radius,
    circle_through,
    collinear,
    coplanar,
    decode_point_pair,
    is_line,
    line_data,
    line_through,
    planarity,
    plane_data,
    plane_through,
    point_pair,
    round_from_center_radius,
    sphere_through,
    straightness,
)
from .transforms import (
    apply_versor,
    is_versor,
    reflect_in_flat_or_sphere,
    reflect_vector,
    rotor_about_point,
    rotor_euclidean,
    tangent_plane,
    translator,
)

__version__ = "0.1.0"
