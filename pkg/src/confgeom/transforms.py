"""Versors acting on conformal blades: translators, rotors, reflections."""

from __future__ import annotations

import numpy as np

from .algebra import Multivector, exp_bivector, outer_product
from .conformal import euclidean_part, is_null, space, space_of
from .errors import DegenerateError, GeometryError

PROJECTION_RTOL = 1e-9
ON_SURFACE_RTOL = 1e-9

_PLANES = {"xy": (0, 1), "yz": (1, 2), "xz": (0, 2), "zx": (2, 0), "yx": (1, 0), "zy": (2, 1)}


def apply_versor(v: Multivector, a: Multivector) -> Multivector:
    """Sandwich product V A ~V."""
    return v * a * ~v


def is_versor(v: Multivector, tol: float = 1e-10) -> bool:
    if not v.grades(tol).issubset({0, 2, 4}):
        return False
    return (v * ~v - 1.0).is_zero(tol)


def _euclidean(a, dim: int | None = None) -> Multivector:
    if isinstance(a, Multivector):
        sp = space_of(a)
        if not np.array_equal(a.coeffs, sp.vector(euclidean_part(a)).coeffs):
            raise GeometryError("expected a pure Euclidean vector (no e, ebar components)")
        return a
    coords = np.asarray(a, dtype=float)
    return space(coords.shape[0] if dim is None else dim).vector(coords)


def reflect_vector(a: Multivector, m: Multivector) -> Multivector:
    """Reflect ``a`` in the hyperplane orthogonal to unit vector ``m``: -m a m."""
    m2 = (m * m).scalar
    if abs(m2 - 1.0) >= 1e-6:
        raise GeometryError(f"mirror normal must be a unit vector, m^2 = {m2:.6g}")
    m = m / np.sqrt(m2)
    return -(m * a * m)


def translator(a) -> Multivector:
    """T_a = 1 + n a / 2, which moves every point by the Euclidean vector a."""
    a = _euclidean(a)
    sp = space_of(a)
    return exp_bivector(sp.n * a * 0.5)


def plane_bivector(name: str, dim: int) -> Multivector:
    """Unit Euclidean bivector for a coordinate plane such as ``"xy"``."""
    try:
        i, j = _PLANES[name.lower()]
    except KeyError:
        raise GeometryError(f"unknown plane {name!r}") from None
    if max(i, j) >= dim:
        raise GeometryError(f"plane {name!r} does not exist in {dim}D")
    sp = space(dim)
    return sp.algebra.basis_vector(i) * sp.algebra.basis_vector(j)


def rotor_euclidean(plane: Multivector, angle: float) -> Multivector:
    """Rotor exp(-angle * plane / 2); turns e1 towards e2 for plane = e1e2."""
    sp = space_of(plane)
    extra = (np.arange(sp.algebra.dim) >> sp.dim) != 0
    if np.any(plane.coeffs[extra] != 0.0) or not plane.grade(2).isclose(plane, rtol=0.0):
        raise GeometryError("rotation plane must be a Euclidean bivector")
    sq = (plane * plane).scalar
    if abs(sq + 1.0) > 1e-9:
        raise GeometryError(f"rotation plane must be a unit blade, B^2 = {sq:.6g}")
    return exp_bivector(plane * (-0.5 * angle))


def rotor_about_point(r: Multivector, a) -> Multivector:
    """R' = T_a R ~T_a: the rotation R carried out about the point a."""
    t = translator(a)
    return t * r * ~t


def reflect_in_flat_or_sphere(l: Multivector, p: Multivector) -> Multivector:
    """Reflect a line or circle ``l`` in a plane/line or sphere/circle ``p``.

    Computes P L P projected back onto the grade of L.  For a flat mirror this
    is the mirror image of L; for a round mirror it is the inversion of L.
    The result is homogeneous, with no normalization applied.
    """
    p2 = (p * p).scalar
    if abs(p2) <= 1e-14 * p.norm() ** 2:
        raise DegenerateError("mirror blade squares to zero")
    grades = l.grades(PROJECTION_RTOL * l.norm())
    if len(grades) != 1:
        raise GeometryError("reflected object must be a homogeneous blade")
    (g,) = grades
    return (p * l * p).grade(g)


def tangent_plane(s: Multivector, x: Multivector, rtol: float = ON_SURFACE_RTOL) -> Multivector:
    """Tangent plane (X.S) ^ n to a sphere (tangent line to a circle in 2D) at X."""
    sp = space_of(s)
    on = outer_product(x, s)
    if on.norm() > rtol * x.norm() * s.norm():
        raise GeometryError("point does not lie on the sphere")
    if x.norm() == 0.0 or not is_null(x):
        raise GeometryError("tangent point must be a null vector")
    return (x | s) ^ sp.n

