import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from confgeom.conformal import (
    distance,
    dot_n,
    embed,
    embed_batch,
    extract_point,
    is_null,
    normalize_point,
    space,
    stereographic,
)
from confgeom.errors import NotAPoint, PointAtInfinity

coord = st.floats(-1e3, 1e3, allow_nan=False)
points = st.sampled_from([2, 3]).flatmap(lambda d: st.lists(coord, min_size=d, max_size=d))


@pytest.mark.parametrize("dim", [2, 3])
def test_null_basis(dim):
    sp = space(dim)
    assert (sp.n * sp.n).is_zero()
    assert (sp.nbar * sp.nbar).is_zero()
    assert (sp.n | sp.nbar).scalar == 2.0
    assert (sp.e * sp.e).scalar == 1.0
    assert (sp.ebar * sp.ebar).scalar == -1.0


def test_embed_origin_is_minus_nbar():
    assert embed([0, 0, 0]).isclose(-space(3).nbar, rtol=0)


def test_embed_known_value():
    sp = space(2)
    x = embed([1.0, 2.0])
    expected = sp.vector([2.0, 4.0]) + sp.n * 5.0 - sp.nbar
    assert x.isclose(expected, rtol=0)


def test_stereographic_then_ebar_is_embedding():
    # F(x) = (1 + x^2)(S(x) + ebar) holds everywhere including the origin
    for x in ([0.0, 0.0], [0.3, -2.0], [5.0, 1.0, -1.0]):
        x = np.array(x)
        sp = space(len(x))
        lhs = (stereographic(x) + sp.ebar) * (1 + x @ x)
        assert lhs.isclose(embed(x), atol=1e-12)


def test_stereographic_is_unit():
    s = stereographic([3.0, -1.0, 2.0])
    assert (s * s).scalar == pytest.approx(1.0)


@given(points)
def test_embedding_is_null(x):
    X = embed(x)
    assert is_null(X)
    assert dot_n(X) == pytest.approx(-2.0, rel=0, abs=1e-15 * (1 + np.dot(x, x)))


@given(points, st.floats(-1e6, 1e6).filter(lambda s: abs(s) > 1e-6))
def test_extraction_ignores_scale(x, s):
    X = embed(x) * s
    np.testing.assert_allclose(extract_point(X), x, rtol=1e-9, atol=1e-9)
    assert dot_n(normalize_point(X)) == pytest.approx(-2.0)


@given(st.lists(coord, min_size=3, max_size=3), st.lists(coord, min_size=3, max_size=3),
       st.floats(1e-3, 1e3), st.floats(-1e3, -1e-3))
def test_distance_matches_euclidean(x, y, s, t):
    d2 = distance(embed(x) * s, embed(y) * t) ** 2
    ref = float(np.sum(np.subtract(x, y) ** 2))
    # |x-y|^2 is recovered up to rounding on the scale of 1 + x^2 + y^2
    assert abs(d2 - ref) <= 1e-14 * (1.0 + np.dot(x, x) + np.dot(y, y)) + 1e-12 * ref


def test_distance_symmetric_and_zero():
    a, b = embed([1.0, 2.0]), embed([-3.0, 0.5])
    assert distance(a, b) == distance(b, a)
    assert distance(a, a) == 0.0


def test_embed_batch_matches_embed(rng):
    xs = rng.standard_normal((20, 3))
    rows = embed_batch(xs)
    for x, row in zip(xs, rows):
        np.testing.assert_allclose(row, embed(x).coeffs, atol=1e-15)


def test_point_at_infinity_rejected():
    with pytest.raises(PointAtInfinity):
        extract_point(space(3).n)


def test_non_null_rejected():
    sp = space(3)
    with pytest.raises(NotAPoint):
        distance(embed([1, 0, 0]) + sp.e, embed([0, 0, 0]))
    with pytest.raises(NotAPoint):
        extract_point(sp.e * sp.n)


def test_bad_coordinates():
    with pytest.raises(ValueError):
        embed([1.0])
    with pytest.raises(ValueError):
        embed([np.inf, 0.0])
