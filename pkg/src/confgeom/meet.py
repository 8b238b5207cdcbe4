"""Intersections of rounds and flats, computed through the dual.

The meet of two primitives whose join is the whole space is the contraction
of one primitive's dual with the other: ``(I A) . B``.  The grade and sign of
the square of the result classify the intersection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector
from .conformal import extract_point, space_of
from .errors import CoincidentError, ContainedError, GeometryError
from .primitives import (
    CLASSIFY_RTOL,
    CenterRadius,
    LineData,
    center_radius,
    decode_point_pair,
    grade_of,
    is_at_infinity,
    is_flat,
    line_data,
    sign_of_square,
)

ZERO_RTOL = 1e-12


class MeetKind(enum.Enum):
    TWO_POINTS = "pair"
    TANGENT_POINT = "tangent"
    EMPTY = "empty"
    CIRCLE = "circle"
    LINE = "line"


@dataclass(frozen=True)
class MeetOutcome:
    kind: MeetKind
    raw: Multivector
    points: tuple[np.ndarray, ...] = ()
    at_infinity: int = 0
    circle: CenterRadius | None = None
    line: LineData | None = None


def _meet_blade(dual_of: Multivector, other: Multivector, error: type[GeometryError],
                message: str) -> Multivector:
    sp = space_of(other)
    raw = (sp.I * dual_of) | other
    if raw.norm() <= ZERO_RTOL * dual_of.norm() * other.norm():
        raise error(message)
    return raw


def classify_point_pair(b: Multivector, rtol: float = CLASSIFY_RTOL) -> MeetOutcome:
    """Decode a bivector meet into finite points plus a count of points at infinity."""
    found = decode_point_pair(b, rtol)
    finite = tuple(extract_point(x, eps=1e-6) for x in found if not is_at_infinity(x))
    kind = {0: MeetKind.EMPTY, 1: MeetKind.TANGENT_POINT, 2: MeetKind.TWO_POINTS}[len(found)]
    return MeetOutcome(kind, b, finite, len(found) - len(finite))


def meet_lines_2d(l1: Multivector, l2: Multivector) -> MeetOutcome:
    """Intersection of two lines or circles in the plane: B = (I L1) . L2."""
    if space_of(l1).dim != 2 or space_of(l2).dim != 2:
        raise GeometryError("meet_lines_2d needs two primitives of the 2D model")
    raw = _meet_blade(l1, l2, CoincidentError, "coincident primitives have no isolated meet")
    return classify_point_pair(raw)


def meet_line_sphere(l: Multivector, p: Multivector) -> MeetOutcome:
    """Intersection of a 3D line or circle with a plane or sphere: L . (I P)."""
    sp = space_of(l)
    if sp.dim != 3 or grade_of(l) != 3 or grade_of(p) != 4:
        raise GeometryError("meet_line_sphere needs a 3D line/circle and a plane/sphere")
    raw = l | (sp.I * p)
    if raw.norm() <= ZERO_RTOL * l.norm() * p.norm():
        raise ContainedError("the line or circle lies on the plane or sphere")
    return classify_point_pair(raw)


def meet_spheres(p1: Multivector, p2: Multivector, rtol: float = CLASSIFY_RTOL) -> MeetOutcome:
    """Intersection of two planes or spheres: L = (I P1) . P2."""
    if space_of(p1).dim != 3 or grade_of(p1) != 4 or grade_of(p2) != 4:
        raise GeometryError("meet_spheres needs two 3D planes/spheres")
    raw = _meet_blade(p1, p2, CoincidentError, "coincident planes or spheres")
    sign = sign_of_square(raw, rtol)
    if is_flat(raw):
        # Two flat planes: parallel ones only meet at infinity.
        if sign > 0:
            return MeetOutcome(MeetKind.LINE, raw, line=line_data(raw))
        return MeetOutcome(MeetKind.EMPTY, raw)
    if sign < 0:
        return MeetOutcome(MeetKind.EMPTY, raw)
    if sign == 0:
        return MeetOutcome(MeetKind.TANGENT_POINT, raw, points=(_tangent_center(raw),))
    return MeetOutcome(MeetKind.CIRCLE, raw, circle=center_radius(raw))


def _tangent_center(l: Multivector) -> np.ndarray:
    # a zero-radius circle: reflecting infinity in it gives its single point
    sp = space_of(l)
    c = (l * sp.n * l).grade(1)
    return -c.coeffs[sp.euclidean_mask] / (c | sp.n).scalar


def meet(a: Multivector, b: Multivector) -> MeetOutcome:
    """Dispatch on dimension and grade to the matching meet."""
    sp = space_of(a)
    ga, gb = grade_of(a), grade_of(b)
    if sp.dim == 2 and ga == gb == 3:
        return meet_lines_2d(a, b)
    if sp.dim == 3:
        if ga == 3 and gb == 4:
            return meet_line_sphere(a, b)
        if ga == 4 and gb == 3:
            return meet_line_sphere(b, a)
        if ga == gb == 4:
            return meet_spheres(a, b)
    raise GeometryError(f"no meet defined for grades {ga} and {gb} in {sp.dim}D")
