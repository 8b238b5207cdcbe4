import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from confgeom.conformal import distance, embed, extract_point, space
from confgeom.errors import DegenerateError, GeometryError
from confgeom.primitives import circle_through, line_data, line_through, sphere_through
from confgeom.transforms import (
    apply_versor,
    is_versor,
    plane_bivector,
    reflect_in_flat_or_sphere,
    reflect_vector,
    rotor_about_point,
    rotor_euclidean,
    tangent_plane,
    translator,
)
from oracles import mirror

ints = st.integers(-50, 50)
vec3 = st.lists(ints, min_size=3, max_size=3)


@given(vec3, vec3)
def test_translators_compose_exactly(a, b):
    ab = translator(a) * translator(b)
    assert ab.coeffs.tolist() == translator(np.add(a, b)).coeffs.tolist()


@given(vec3)
def test_translator_fixes_infinity(a):
    sp = space(3)
    t = translator(a)
    assert (t * sp.n * ~t).coeffs.tolist() == sp.n.coeffs.tolist()


@given(vec3)
def test_translator_moves_origin(a):
    sp = space(3)
    t = translator(a)
    av = sp.vector(a)
    expected = sp.nbar - av * 2.0 - sp.n * float(np.dot(a, a))
    assert (t * sp.nbar * ~t).coeffs.tolist() == expected.coeffs.tolist()


def test_translator_moves_points():
    y = apply_versor(translator([1.0, -2.0, 0.5]), embed([3.0, 3.0, 3.0]))
    np.testing.assert_allclose(extract_point(y), [4.0, 1.0, 3.5])


def test_rotor_turns_x_into_y():
    r = rotor_euclidean(plane_bivector("xy", 3), math.pi / 2)
    np.testing.assert_allclose(extract_point(apply_versor(r, embed([1, 0, 0]))), [0, 1, 0],
                               atol=1e-15)


def test_rotation_about_point():
    r = rotor_about_point(rotor_euclidean(plane_bivector("xy", 2), math.pi), [1.0, 1.0])
    np.testing.assert_allclose(extract_point(apply_versor(r, embed([2.0, 1.0]))), [0.0, 1.0],
                               atol=1e-14)


@given(st.floats(-10, 10), st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_rigid_motion_preserves_distance(theta, a, x, y):
    v = translator(a) * rotor_euclidean(plane_bivector("yz", 3), theta)
    assert is_versor(v)
    # compare squared distances: near-coincident points make sqrt ill-conditioned
    d0 = distance(embed(x), embed(y)) ** 2
    d1 = distance(apply_versor(v, embed(x)), apply_versor(v, embed(y))) ** 2
    scale = 1.0 + np.dot(x, x) + np.dot(y, y) + np.dot(a, a)
    assert abs(d1 - d0) <= 1e-12 * scale


def test_plane_names():
    with pytest.raises(GeometryError):
        plane_bivector("xz", 2)
    with pytest.raises(GeometryError):
        plane_bivector("uv", 3)


def test_rotor_rejects_non_unit_plane():
    with pytest.raises(GeometryError):
        rotor_euclidean(plane_bivector("xy", 3) * 2.0, 1.0)
    with pytest.raises(GeometryError):
        rotor_euclidean(space(3).n ^ space(3).vector([1, 0, 0]), 1.0)


def test_reflect_vector():
    sp = space(3)
    out = reflect_vector(sp.vector([1.0, 1.0, 0.0]), sp.vector([1.0, 0.0, 0.0]))
    assert out.isclose(sp.vector([-1.0, 1.0, 0.0]), atol=1e-15)
    with pytest.raises(GeometryError):
        reflect_vector(sp.vector([1.0, 0, 0]), sp.vector([2.0, 0, 0]))


def test_flat_mirror_reverses_normal_component():
    # ray along +x hitting the plane x = 1
    l = line_through(embed([0, 0, 0]), embed([1, 0, 0]))
    p = embed([1, 0, 0]) ^ embed([1, 1, 0]) ^ embed([1, 0, 1]) ^ space(3).n
    out = line_data(reflect_in_flat_or_sphere(l, p))
    np.testing.assert_allclose(out.direction, [-1, 0, 0], atol=1e-12)


def test_oblique_flat_reflection():
    d = np.array([1.0, -2.0, 0.5])
    d /= np.linalg.norm(d)
    hit = np.array([0.0, 0.0, 0.0])
    l = line_through(embed(hit - d), embed(hit))
    p = embed([0, 0, 0]) ^ embed([1, 0, 0]) ^ embed([0, 0, 1]) ^ space(3).n
    out = line_data(reflect_in_flat_or_sphere(l, p))
    np.testing.assert_allclose(out.direction, mirror(d, [0, 1, 0]), atol=1e-12)


def test_inversion_maps_circle_to_circle():
    s = sphere_through(*(embed(p) for p in ([1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, 0, 1])))
    c = circle_through(embed([2, 0, 0]), embed([3, 0, 0]), embed([2.5, 0.5, 0]))
    image = reflect_in_flat_or_sphere(c, s)
    # points of the circle invert to x / |x|^2
    for q in ([2, 0, 0], [3, 0, 0]):
        inv = np.array(q, float) / np.dot(q, q)
        assert (embed(inv) ^ image).norm() <= 1e-10 * image.norm() * embed(inv).norm()


def test_degenerate_mirror():
    # a zero-radius sphere squares to zero
    sp = space(3)
    point_sphere = sp.I * embed([0.0, 0.0, 0.0])
    with pytest.raises(DegenerateError):
        reflect_in_flat_or_sphere(line_through(embed([0, 0, 0]), embed([1, 0, 0])), point_sphere)


def test_tangent_plane_is_orthogonal_to_radius():
    s = sphere_through(*(embed(p) for p in ([1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, 0, 1])))
    x = embed([0.0, 0.6, 0.8])
    t = tangent_plane(s, x)
    assert (x ^ t).norm() <= 1e-12 * t.norm() * x.norm()
    # the tangent plane contains x + any direction orthogonal to it
    assert (embed([1.0, 0.6, 0.8]) ^ t).norm() <= 1e-12 * t.norm() * 10
    with pytest.raises(GeometryError):
        tangent_plane(s, embed([0.0, 0.0, 0.5]))
