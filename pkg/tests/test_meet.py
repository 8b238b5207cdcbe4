import math
from functools import reduce

import numpy as np
import pytest

from confgeom.conformal import embed, extract_point, space
from confgeom.errors import CoincidentError, ContainedError, GeometryError
from confgeom.meet import MeetKind, meet, meet_line_sphere, meet_lines_2d, meet_spheres
from confgeom.primitives import (
    center_radius,
    circle_through,
    line_through,
    plane_through,
    round_from_center_radius,
    sphere_through,
)
from confgeom.transforms import apply_versor, plane_bivector, rotor_euclidean, translator
from oracles import sphere_sphere_circle


def sphere(c, r):
    return round_from_center_radius(embed(np.asarray(c, float)), r)


def circle2(c, r):
    return round_from_center_radius(embed(np.asarray(c, float)), r)


def line(a, b):
    return line_through(embed(np.asarray(a, float)), embed(np.asarray(b, float)))


def sorted_points(ps):
    return sorted((tuple(np.round(p, 9)) for p in ps))


# -- worked examples -------------------------------------------------------------

def test_unit_circle_meets_x_axis():
    m = meet(circle2([0, 0], 1), line([0, 0], [1, 0]))
    assert m.kind is MeetKind.TWO_POINTS
    assert sorted_points(m.points) == [(-1.0, 0.0), (1.0, 0.0)]


def test_parallel_lines_touch_at_infinity():
    m = meet(line([0, 0], [1, 0]), line([0, 1], [1, 1]))
    assert m.kind is MeetKind.TANGENT_POINT
    assert m.points == () and m.at_infinity == 1


def test_crossing_lines_meet_once_plus_infinity():
    m = meet(line([0, 0], [1, 1]), line([0, 2], [2, 0]))
    assert m.kind is MeetKind.TWO_POINTS
    assert m.at_infinity == 1
    np.testing.assert_allclose(m.points[0], [1, 1], atol=1e-12)


def test_distant_circles_are_empty():
    assert meet(circle2([0, 0], 1), circle2([3, 0], 1)).kind is MeetKind.EMPTY


def test_axis_through_unit_sphere():
    m = meet(line([0, 0, 0], [1, 0, 0]), sphere([0, 0, 0], 1))
    assert m.kind is MeetKind.TWO_POINTS
    assert sorted_points(m.points) == [(-1.0, 0.0, 0.0), (1.0, 0.0, 0.0)]


def test_tangent_line():
    m = meet(line([-1, 0, -1], [1, 0, -1]), sphere([0, 0, 0], 1))
    assert m.kind is MeetKind.TANGENT_POINT
    np.testing.assert_allclose(m.points[0], [0, 0, -1], atol=1e-9)


def test_two_spheres_meet_in_circle():
    m = meet(sphere([0, 0, 0], 1), sphere([1, 0, 0], 1))
    assert m.kind is MeetKind.CIRCLE
    np.testing.assert_allclose(m.circle.center, [0.5, 0, 0], atol=1e-12)
    assert m.circle.radius == pytest.approx(math.sqrt(3) / 2)


def test_touching_spheres():
    m = meet(sphere([0, 0, 0], 1), sphere([2, 0, 0], 1))
    assert m.kind is MeetKind.TANGENT_POINT
    np.testing.assert_allclose(m.points[0], [1, 0, 0], atol=1e-9)


def test_planes_meet_in_line():
    p1 = plane_through(*(embed(x) for x in ([0, 0, 0], [1, 0, 0], [0, 1, 0])))
    p2 = plane_through(*(embed(x) for x in ([0, 0, 0], [0, 1, 0], [0, 0, 1])))
    m = meet(p1, p2)
    assert m.kind is MeetKind.LINE
    np.testing.assert_allclose(abs(m.line.direction[1]), 1.0)
    np.testing.assert_allclose(m.line.point, [0, 0, 0], atol=1e-12)


def test_parallel_planes_are_empty():
    p1 = plane_through(*(embed(x) for x in ([0, 0, 0], [1, 0, 0], [0, 1, 0])))
    p2 = plane_through(*(embed(x) for x in ([0, 0, 1], [1, 0, 1], [0, 1, 1])))
    assert meet(p1, p2).kind is MeetKind.EMPTY


def test_coincident_and_contained():
    l = line([0, 0], [1, 0])
    with pytest.raises(CoincidentError):
        meet_lines_2d(l, l * 3.0)
    p = plane_through(*(embed(x) for x in ([0, 0, 0], [1, 0, 0], [0, 1, 0])))
    with pytest.raises(ContainedError):
        meet_line_sphere(line([0, 0, 0], [1, 1, 0]), p)
    with pytest.raises(CoincidentError):
        meet_spheres(sphere([0, 0, 0], 1), sphere([0, 0, 0], 1))


def test_unsupported_grades():
    with pytest.raises(GeometryError):
        meet(embed([0.0, 0.0, 0.0]), sphere([0, 0, 0], 1))
    with pytest.raises(GeometryError):
        meet(line([0, 0, 0], [1, 0, 0]), line([0, 1, 0], [1, 0, 0]))


# -- properties ------------------------------------------------------------------

def random_blade(sp, grade, rng):
    vs = [sp.algebra.vector(rng.standard_normal(sp.algebra.n)) for _ in range(grade)]
    return reduce(lambda a, b: a ^ b, vs)


@pytest.mark.parametrize("dim,ga,gb", [(2, 3, 3), (3, 3, 4), (3, 4, 4), (3, 4, 3)])
def test_duality_symmetry(dim, ga, gb, rng):
    sp = space(dim)
    signs = set()
    for _ in range(50):
        a, b = random_blade(sp, ga, rng), random_blade(sp, gb, rng)
        lhs, rhs = (sp.I * a) | b, a | (sp.I * b)
        scale = lhs.norm()
        if lhs.isclose(rhs, atol=1e-10 * scale):
            signs.add(1)
        elif lhs.isclose(-rhs, atol=1e-10 * scale):
            signs.add(-1)
        else:
            pytest.fail("duals disagree beyond sign")
    assert len(signs) == 1


def test_meet_covariance(rng):
    for _ in range(50):
        # the line passes within 0.9 of the center, so it always cuts the sphere
        s1 = sphere(rng.uniform(-0.2, 0.2, 3), rng.uniform(1, 2))
        l = line(rng.uniform(-0.5, 0.5, 3), rng.uniform(-0.5, 0.5, 3) + [3, 0, 0])
        v = translator(rng.uniform(-3, 3, 3)) * rotor_euclidean(plane_bivector("xy", 3),
                                                                rng.uniform(-3, 3))
        before = meet(l, s1)
        after = meet(apply_versor(v, l), apply_versor(v, s1))
        assert before.kind is after.kind is MeetKind.TWO_POINTS
        moved = [extract_point(apply_versor(v, embed(p))) for p in before.points]
        assert np.allclose(sorted_points(moved), sorted_points(after.points), atol=1e-7)


def test_meet_points_lie_on_both(rng):
    for _ in range(100):
        s1 = sphere(rng.uniform(-1, 1, 3), rng.uniform(1, 2))
        l = line(rng.uniform(-0.5, 0.5, 3), rng.uniform(-3, 3, 3))
        m = meet(l, s1)
        for p in m.points:
            x = embed(p)
            for obj in (l, s1):
                assert (x ^ obj).norm() <= 1e-8 * x.norm() * obj.norm()


def test_circle_circle_points_lie_on_both(rng):
    for _ in range(100):
        c1, c2 = circle2(rng.uniform(-1, 1, 2), 1.5), circle2(rng.uniform(-1, 1, 2), 1.2)
        m = meet(c1, c2)
        for p in m.points:
            x = embed(p)
            for obj in (c1, c2):
                assert (x ^ obj).norm() <= 1e-8 * x.norm() * obj.norm()


def test_sphere_sphere_radius_formula(rng):
    for _ in range(200):
        c1, c2 = rng.uniform(-2, 2, (2, 3))
        d = np.linalg.norm(c2 - c1)
        r1 = rng.uniform(0.6, 2) * d
        r2 = rng.uniform(abs(d - r1) * 1.01 + 1e-3, (d + r1) * 0.99)
        m = meet(sphere(c1, r1), sphere(c2, r2))
        assert m.kind is MeetKind.CIRCLE
        center, rho = sphere_sphere_circle(c1, r1, c2, r2)
        assert m.circle.radius == pytest.approx(rho, rel=1e-8)
        np.testing.assert_allclose(m.circle.center, center, rtol=1e-8, atol=1e-8)


def test_circle_meets_sphere():
    c = circle_through(*(embed(p) for p in ([1, 0, 0], [0, 1, 0], [-1, 0, 0])))
    s = sphere_through(*(embed(p) for p in ([1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, 0, 0])))
    m = meet(c, s)
    for p in m.points:
        assert np.linalg.norm(p) == pytest.approx(1.0)
        assert np.linalg.norm(p - center_radius(s).center) == pytest.approx(center_radius(s).radius)
