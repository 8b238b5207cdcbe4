"""Conformal model of the Euclidean plane and space.

Points of R^d become null vectors of G(d+1, 1).  Basis order is
``e1..ed, e, ebar`` with ``e**2 = 1`` and ``ebar**2 = -1``; the null pair is
``n = e + ebar`` (point at infinity) and ``nbar = e - ebar``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Algebra, Multivector, algebra
from .errors import NotAPoint, PointAtInfinity, SignatureMismatch

NULL_EPS = 1e-9
# |X.n| at or below this fraction of the coefficient norm counts as zero.
INFINITY_RTOL = 1e-12


@dataclass(frozen=True)
class ConformalSpace:
    dim: int
    algebra: Algebra
    e: Multivector
    ebar: Multivector
    n: Multivector
    nbar: Multivector
    I: Multivector

    @property
    def euclidean_mask(self) -> np.ndarray:
        return 1 << np.arange(self.dim)

    def vector(self, coords) -> Multivector:
        """Pure Euclidean vector sum(coords[i] * e_i)."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got shape {coords.shape}")
        c = np.zeros(self.algebra.dim)
        c[self.euclidean_mask] = coords
        return Multivector(self.algebra, c)


@lru_cache(maxsize=None)
def space(dim: int) -> ConformalSpace:
    if dim not in (2, 3):
        raise ValueError(f"only 2D and 3D conformal models are supported, got {dim}")
    alg = algebra(dim + 1, 1)
    e = alg.basis_vector(dim)
    ebar = alg.basis_vector(dim + 1)
    return ConformalSpace(dim, alg, e, ebar, e + ebar, e - ebar, alg.pseudoscalar())


def space_of(x: Multivector) -> ConformalSpace:
    sig = x.algebra.sig
    if sig.q != 1 or sig.p not in (3, 4):
        raise ValueError(f"{sig} is not a conformal algebra of R^2 or R^3")
    return space(sig.p - 1)


def euclidean_part(x: Multivector) -> np.ndarray:
    return x.coeffs[space_of(x).euclidean_mask].copy()


def _coords(x, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] not in (2, 3):
        raise ValueError(f"expected 2 or 3 coordinates, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"expected {dim} coordinates, got {arr.shape[0]}")
    if not np.isfinite(arr).all():
        raise ValueError("coordinates must be finite")
    return arr


def embed(x) -> Multivector:
    """F(x) = 2x + x^2 n - nbar."""
    x = _coords(x)
    return Multivector(space(x.shape[0]).algebra, embed_batch(x[None, :])[0])


def embed_batch(xs) -> np.ndarray:
    """Coefficient rows of F(x) for an ``(N, d)`` array of points."""
    xs = np.asarray(xs, dtype=float)
    sp = space(xs.shape[1])
    x2 = np.einsum("ij,ij->i", xs, xs)
    out = np.zeros((xs.shape[0], sp.algebra.dim))
    out[:, sp.euclidean_mask] = 2.0 * xs
    out[:, 1 << sp.dim] = x2 - 1.0         # e
    out[:, 1 << (sp.dim + 1)] = x2 + 1.0   # ebar
    return out


def stereographic(x) -> Multivector:
    """Unit vector S(x) = cos(t) xhat - sin(t) e on the sphere S^d.

    Evaluated as ``2x/(1+r^2) - (1-r^2)/(1+r^2) e`` which avoids xhat at the
    origin, where S(0) = -e.
    """
    x = _coords(x)
    sp = space(x.shape[0])
    r2 = float(x @ x)
    return sp.vector(2.0 * x / (1.0 + r2)) - sp.e * ((1.0 - r2) / (1.0 + r2))


def _split(x: Multivector) -> tuple[np.ndarray, float, float]:
    """Euclidean part, X.n and X.nbar read straight from the coefficients.

    Working in the null pair avoids the x^2 y^2 terms that cancel when the
    products are formed in the e, ebar basis.
    """
    sp = space_of(x)
    ce, cb = x.coeffs[1 << sp.dim], x.coeffs[1 << (sp.dim + 1)]
    return x.coeffs[sp.euclidean_mask], float(ce - cb), float(ce + cb)


def dot_n(x: Multivector) -> float:
    return _split(x)[1]


def _square(v: np.ndarray, xn: float, xnbar: float) -> tuple[float, float]:
    """X^2 = v.v + (X.n)(X.nbar), and the size of its terms for tolerances."""
    vv = float(v @ v)
    return vv + xn * xnbar, max(vv + abs(xn * xnbar), xn * xn)


def is_null(x: Multivector, eps: float = NULL_EPS) -> bool:
    """Null test relative to the size of the terms of X^2, never below (X.n)^2.

    Rescaling X never changes the verdict.
    """
    v, xn, xnbar = _split(x)
    x2, scale = _square(v, xn, xnbar)
    return abs(x2) <= eps * scale


def _check_point(x: Multivector, eps: float) -> tuple[np.ndarray, float, float]:
    if not x.grade(1).isclose(x, rtol=1e-12):
        raise NotAPoint("not a point: expected a grade-1 multivector")
    v, xn, xnbar = _split(x)
    x2, scale = _square(v, xn, xnbar)
    size = x.norm()
    if abs(xn) <= INFINITY_RTOL * size:
        if abs(x2) <= eps * size * size:
            raise PointAtInfinity("point at infinity: X.n = 0")
        raise NotAPoint("not a point: X.n = 0 and X is not null")
    if abs(x2) > eps * scale:
        raise NotAPoint(f"not a point: X^2 = {x2:.3g} is not null")
    if abs(xnbar) > abs(xn):
        # Far from the origin X.n is a difference of two large coefficients;
        # on the null cone -v.v / X.nbar gives it without the cancellation.
        xn = -float(v @ v) / xnbar
    return v, xn, xnbar


def normalize_point(x: Multivector, eps: float = NULL_EPS) -> Multivector:
    """Rescale a null vector to the standard form with X.n = -2."""
    xn = _check_point(x, eps)[1]
    return x * (-2.0 / xn)


def extract_point(x: Multivector, eps: float = NULL_EPS) -> np.ndarray:
    v, xn, _ = _check_point(x, eps)
    return v * (-1.0 / xn)


def distance(x: Multivector, y: Multivector, eps: float = NULL_EPS) -> float:
    """|x - y| from -2 X.Y / ((X.n)(Y.n)); independent of the scale of X and Y."""
    if x.algebra.sig != y.algebra.sig:
        raise SignatureMismatch(f"cannot combine {x.sig} with {y.sig}")
    u, xn, xnbar = _check_point(x, eps)
    v, yn, ynbar = _check_point(y, eps)
    xy = float(u @ v) + 0.5 * (xn * ynbar + xnbar * yn)
    d2 = -2.0 * xy / (xn * yn)
    return float(np.sqrt(max(d2, 0.0)))
