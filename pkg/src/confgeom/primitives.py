"""Rounds and flats as blades: point pairs, circles/lines, spheres/planes.

Every primitive is a plain :class:`~confgeom.algebra.Multivector` blade.  A
blade is *flat* (straight line, plane) when its outer product with the point
at infinity vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .algebra import Multivector, outer_product
from .conformal import NULL_EPS, euclidean_part, extract_point, normalize_point, space_of
from .errors import DegenerateError, GeometryError

DEGENERATE_RTOL = 1e-12
FLAT_RTOL = 1e-9
CLASSIFY_RTOL = 1e-9
# Decoded vectors whose |X.n| falls below this fraction of their norm are at infinity.
INFINITE_RTOL = 1e-9
DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class CenterRadius:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class LineData:
    point: np.ndarray       # point of the line closest to the origin
    direction: np.ndarray   # unit vector, oriented along the blade


@dataclass(frozen=True)
class PlaneData:
    normal: np.ndarray
    offset: float           # the plane is {x : x . normal = offset}


# -- construction ----------------------------------------------------------

def _wedge_checked(vectors: list[Multivector]) -> Multivector:
    sp = space_of(vectors[0])
    for v in vectors[1:]:
        if space_of(v) is not sp:
            raise GeometryError("primitives must be built from points of one space")
    blade = reduce(outer_product, vectors)
    bound = DEGENERATE_RTOL * math.prod(v.norm() for v in vectors)
    if blade.norm() <= bound:
        raise DegenerateError("degenerate primitive: inputs are coincident or dependent")
    return blade


def point_pair(x: Multivector, y: Multivector) -> Multivector:
    return x ^ y


def line_through(a: Multivector, b: Multivector) -> Multivector:
    """Straight line A ^ B ^ n, oriented from a towards b."""
    return _wedge_checked([a, b, space_of(a).n])


def circle_through(a1: Multivector, a2: Multivector, a3: Multivector) -> Multivector:
    """Circle A1 ^ A2 ^ A3 (a straight line when the points are collinear)."""
    return _wedge_checked([a1, a2, a3])


def plane_through(a: Multivector, b: Multivector, c: Multivector) -> Multivector:
    sp = space_of(a)
    if sp.dim != 3:
        raise GeometryError("planes are 3D primitives")
    return _wedge_checked([a, b, c, sp.n])


def sphere_through(a1, a2, a3, a4) -> Multivector:
    if space_of(a1).dim != 3:
        raise GeometryError("spheres are 3D primitives")
    return _wedge_checked([a1, a2, a3, a4])


def round_from_center_radius(center: Multivector, radius: float) -> Multivector:
    """Circle (2D) or sphere (3D) with the given center point and radius.

    Builds the dual vector C - rho^2 n and undualizes it.
    """
    if not radius > 0:
        raise DegenerateError("radius must be positive")
    sp = space_of(center)
    dual_vec = normalize_point(center) - sp.n * (radius * radius)
    return -(sp.I * dual_vec)


# -- interrogation ---------------------------------------------------------

def is_flat(blade: Multivector, rtol: float = FLAT_RTOL) -> bool:
    sp = space_of(blade)
    return (blade ^ sp.n).norm() <= rtol * blade.norm() * sp.n.norm()


def grade_of(blade: Multivector) -> int:
    grades = blade.grades(1e-9 * blade.norm())
    if len(grades) != 1:
        raise GeometryError(f"expected a homogeneous blade, found grades {sorted(grades)}")
    return grades.pop()


def sign_of_square(b: Multivector, rtol: float = CLASSIFY_RTOL) -> int:
    """Sign of the scalar B*B, zero within ``rtol`` of the squared coefficient norm."""
    scale = b.norm() ** 2
    if scale == 0.0:
        raise DegenerateError("zero blade")
    sq = (b * b).scalar
    if sq > rtol * scale:
        return 1
    if sq < -rtol * scale:
        return -1
    return 0


def is_at_infinity(x: Multivector, rtol: float = INFINITE_RTOL) -> bool:
    return abs((x | space_of(x).n).scalar) <= rtol * x.norm()


def _probes(b: Multivector) -> list[Multivector]:
    sp = space_of(b)
    alg = sp.algebra
    return [sp.n, sp.nbar] + [alg.basis_vector(i) for i in range(alg.n)]


def decode_point_pair(b: Multivector, rtol: float = CLASSIFY_RTOL) -> tuple[Multivector, ...]:
    """Null vectors contained in the bivector ``b``.

    Two for B^2 > 0, one for B^2 = 0, none for B^2 < 0.  The vectors are
    homogeneous and may include the point at infinity (a multiple of n).

    The pair is recovered as ``v +/- v.Bhat`` with ``v = w.B``; the probe ``w``
    is n whenever that keeps both points, which fails only when one of them is
    n itself, so further probes are tried in that case.
    """
    sign = sign_of_square(b, rtol)
    if sign < 0:
        return ()
    best = None
    if sign == 0:
        # B = X ^ t with X.t = 0: (w.B).B is proportional to X.
        for w in _probes(b):
            x = (w | b) | b
            quality = x.norm() / (w.norm() * b.norm() ** 2)
            if quality > 1e-6:
                return (x,)
            if best is None or quality > best[0]:
                best = (quality, x)
        return (best[1],)
    bhat = b / math.sqrt((b * b).scalar)
    for w in _probes(b):
        v = w | b
        vb = v | bhat
        x1, x2 = v + vb, v - vb
        quality = min(x1.norm(), x2.norm()) / (w.norm() * b.norm())
        if quality > 1e-6:
            return x1, x2
        if best is None or quality > best[0]:
            best = (quality, x1, x2)
    return best[1], best[2]


def straightness(l: Multivector) -> float:
    """-(L^n)^2 / L^2, i.e. the inverse squared radius; zero for straight lines."""
    sp = space_of(l)
    l2 = (l * l).scalar
    if abs(l2) <= 1e-300 or abs(l2) <= 1e-14 * l.norm() ** 2:
        raise DegenerateError("blade squares to zero")
    ln = l ^ sp.n
    return max(-(ln * ln).scalar / l2, 0.0)


def is_line(l: Multivector, eps: float = DEFAULT_EPS) -> bool:
    return straightness(l) < eps


def planarity(s: Multivector) -> float:
    """(S^n)^2 / S^2 for a 4-blade: inverse squared radius of the sphere."""
    sp = space_of(s)
    s2 = (s * s).scalar
    if abs(s2) <= 1e-14 * s.norm() ** 2:
        raise DegenerateError("blade squares to zero")
    sn = s ^ sp.n
    return max((sn * sn).scalar / s2, 0.0)


def collinear(a, b, c, eps: float = DEFAULT_EPS) -> bool:
    return is_line(circle_through(a, b, c), eps)


def coplanar(a1, a2, a3, a4, eps: float = DEFAULT_EPS) -> bool:
    return planarity(sphere_through(a1, a2, a3, a4)) < eps


def _from_dual_vector(v: Multivector) -> CenterRadius:
    sp = space_of(v)
    vn = (v | sp.n).scalar
    if abs(vn) <= 1e-14 * v.norm():
        raise GeometryError("flat primitive has no finite center")
    rho2 = (v | v).scalar / (vn * vn)
    if rho2 < 0:
        raise GeometryError("imaginary round: negative squared radius")
    # v = lambda (C - rho^2 n) and n has no Euclidean part, so c = -E(v) / (v.n)
    return CenterRadius(euclidean_part(v) * (-1.0 / vn), math.sqrt(rho2))


def _check_round(blade: Multivector) -> None:
    if is_flat(blade):
        raise GeometryError("flat primitive has no finite center")


def circle_center_radius(l: Multivector) -> CenterRadius:
    _check_round(l)
    sp = space_of(l)
    if sp.dim == 2:
        return _from_dual_vector((sp.I * l).grade(1))
    ln = l ^ sp.n
    rho2 = -(l * l).scalar / (ln * ln).scalar
    if rho2 < 0:
        raise GeometryError("imaginary circle: negative squared radius")
    center = (l * sp.n * l).grade(1)
    cn = (center | sp.n).scalar
    return CenterRadius(euclidean_part(center) * (-1.0 / cn), math.sqrt(rho2))


def sphere_center_radius(s: Multivector) -> CenterRadius:
    _check_round(s)
    sp = space_of(s)
    if sp.dim != 3:
        raise GeometryError("spheres are 3D primitives")
    return _from_dual_vector((sp.I * s).grade(1))


def center_radius(blade: Multivector) -> CenterRadius:
    """Center and radius of a circle (2D or 3D) or sphere."""
    g = grade_of(blade)
    sp = space_of(blade)
    if g == 3:
        return circle_center_radius(blade)
    if g == 4 and sp.dim == 3:
        return sphere_center_radius(blade)
    raise GeometryError(f"grade-{g} blade is not a circle or sphere")


def angle_between_lines(l1: Multivector, l2: Multivector) -> float:
    """Angle from <L1 L2> / (|L1| |L2|), in [0, pi]."""
    m1 = math.sqrt(abs((l1 * ~l1).scalar))
    m2 = math.sqrt(abs((l2 * ~l2).scalar))
    if m1 <= 1e-14 * l1.norm() or m2 <= 1e-14 * l2.norm():
        raise DegenerateError("null blade has no direction")
    c = (l1 * l2).scalar / (m1 * m2)
    return math.acos(min(1.0, max(-1.0, c)))


def flat_point(b: Multivector) -> np.ndarray:
    """Finite point of a flat point pair X ^ n."""
    sp = space_of(b)
    v = b | sp.nbar
    vn = (v | sp.n).scalar
    if abs(vn) <= 1e-14 * v.norm():
        raise GeometryError("flat point pair has no finite point")
    return euclidean_part(v) * (-1.0 / vn)


def line_data(l: Multivector) -> LineData:
    """Closest point to the origin and unit direction of a straight line."""
    if not is_flat(l):
        raise GeometryError("not a straight line")
    sp = space_of(l)
    d = euclidean_part(-((sp.n | l) | sp.nbar))
    norm = float(np.linalg.norm(d))
    if norm <= 1e-14 * l.norm():
        raise DegenerateError("line has no direction")
    d = d / norm
    return LineData(flat_point(sp.vector(d) | l), d)


def plane_data(p: Multivector) -> PlaneData:
    """Unit normal and offset of a flat hyperplane (plane in 3D, line in 2D)."""
    if not is_flat(p):
        raise GeometryError("not a flat hyperplane")
    sp = space_of(p)
    v = (sp.I * p).grade(1)
    m = euclidean_part(v)
    norm = float(np.linalg.norm(m))
    if norm <= 1e-14 * p.norm():
        raise DegenerateError("hyperplane has no normal")
    return PlaneData(m / norm, (v | sp.nbar).scalar / (2.0 * norm))


def point_of(x: Multivector) -> np.ndarray:
    return extract_point(x, NULL_EPS)
